//! Boundary 3-manifolds of building-block expressions.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use thiserror::Error;

/// Which of the two orientations of the named manifold the descriptor
/// refers to. `Standard` is the orientation of the boundary of the
/// positive all-2 plumbings and of the negative disk bundles `E(-k)`;
/// `Reversed` is its mirror.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Standard,
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    LensSpace { p: u64, q: u64 },
    DicyclicQuotient { n: u64 },
    Sphere,
    /// A rational homology sphere outside the recognised families, with the
    /// invariant factors of its first homology.
    UnknownQhs { h1: Vec<BigInt> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryDescriptor {
    pub kind: BoundaryKind,
    pub orientation: Orientation,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("boundary is not a rational homology sphere (intersection form is degenerate)")]
    NotRationalHomologySphere,
}

impl BoundaryDescriptor {
    pub fn standard(kind: BoundaryKind) -> Self {
        BoundaryDescriptor { kind, orientation: Orientation::Standard }
    }

    /// `|H_1|` of the boundary.
    pub fn h1_order(&self) -> BigInt {
        match &self.kind {
            BoundaryKind::LensSpace { p, .. } => BigInt::from(*p),
            BoundaryKind::DicyclicQuotient { .. } => BigInt::from(4),
            BoundaryKind::Sphere => BigInt::from(1),
            BoundaryKind::UnknownQhs { h1 } => h1.iter().product(),
        }
    }
}

impl fmt::Display for BoundaryDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            BoundaryKind::LensSpace { p, q } => write!(f, "L({p},{q})")?,
            BoundaryKind::DicyclicQuotient { n } => write!(f, "S^3/Dic_{n}")?,
            BoundaryKind::Sphere => f.write_str("S^3")?,
            BoundaryKind::UnknownQhs { h1 } => {
                f.write_str("QHS(H1=")?;
                if h1.is_empty() {
                    f.write_str("0")?;
                }
                for (i, d) in h1.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "Z{d}")?;
                }
                f.write_str(")")?;
            }
        }
        if self.orientation == Orientation::Reversed {
            f.write_str(" (reversed)")?;
        }
        Ok(())
    }
}
