//! Smale invariants of immersions `S^3 -> R^4` and the rank-2-point
//! bookkeeping that feeds them.
//!
//! The Smale invariant is a pair `(a, b)` in `pi_3(SO_4) = Z + Z`, computed
//! from the normal degree and the Hirzebruch defect as
//! `(ndeg - 1, (-hdef - 2 (ndeg - 1)) / 4)`, where
//! `hdef = -3 sigma(V) - #Sigma^2(F)` for a singular Seifert surface
//! `F: V -> R^4`.

use alloc::boxed::Box;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_integer::Integer;
use thiserror::Error;

use crate::expr::FourManifoldExpr;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmaleError {
    #[error("inconsistent ledger: -hdef - 2(ndeg - 1) = {numerator} is not divisible by 4 (ndeg {ndeg}, hdef {hdef})")]
    InconsistentLedger { ndeg: i64, hdef: i64, numerator: i64 },
    #[error("composition formula needs a justification that the branch locus misses the singular set")]
    DisjointnessUnjustified,
    #[error("{what} must be at least 1, got {value}")]
    NonPositive { what: &'static str, value: i64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("internal inconsistency: {0}")]
    Internal(alloc::string::String),
}

/// A Smale invariant `(a, b)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SmaleInvariant {
    pub a: i64,
    pub b: i64,
}

impl SmaleInvariant {
    pub const ZERO: SmaleInvariant = SmaleInvariant { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        SmaleInvariant { a, b }
    }

    pub fn scale(self, m: i64) -> Self {
        SmaleInvariant { a: m * self.a, b: m * self.b }
    }

    /// Image `a + 2b` in the stable 3-stem `Z_24`.
    pub fn bordism_class(self) -> u8 {
        (self.a + 2 * self.b).rem_euclid(24) as u8
    }
}

impl Add for SmaleInvariant {
    type Output = SmaleInvariant;
    fn add(self, o: Self) -> Self {
        SmaleInvariant { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for SmaleInvariant {
    type Output = SmaleInvariant;
    fn sub(self, o: Self) -> Self {
        SmaleInvariant { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for SmaleInvariant {
    type Output = SmaleInvariant;
    fn neg(self) -> Self {
        SmaleInvariant { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for SmaleInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Whether a class in `Z_24` generates it.
pub fn is_generator(class: u8) -> bool {
    u64::from(class).gcd(&24) == 1
}

/// `hdef = -3 sigma - #Sigma^2`.
pub fn hirzebruch_defect(sigma: i64, sigma2: i64) -> i64 {
    -3 * sigma - sigma2
}

/// `(ndeg - 1, (-hdef - 2(ndeg - 1)) / 4)`.
pub fn smale_invariant(ndeg: i64, hdef: i64) -> Result<SmaleInvariant, SmaleError> {
    let a = ndeg - 1;
    let numerator = -hdef - 2 * a;
    if numerator.rem_euclid(4) != 0 {
        return Err(SmaleError::InconsistentLedger { ndeg, hdef, numerator });
    }
    Ok(SmaleInvariant { a, b: numerator / 4 })
}

/// Normal degree of the boundary restriction of an immersion `V -> R^4`:
/// the Euler characteristic of `V`.
pub fn ndeg_immersed(expr: &FourManifoldExpr) -> i64 {
    expr.euler_characteristic()
}

/// Normal degree of an immersion precomposed with a covering of degree
/// `cover_degree`.
pub fn ndeg_composite(cover_degree: i64, base_ndeg: i64) -> Result<i64, SmaleError> {
    if cover_degree < 1 {
        return Err(SmaleError::NonPositive { what: "covering degree", value: cover_degree });
    }
    cover_degree.checked_mul(base_ndeg).ok_or(SmaleError::Overflow("normal degree"))
}

/// `#Sigma^{2,0} = -3 sigma` for a map of a closed 4-manifold.
pub fn sigma2_thom(sigma_closed: i64) -> i64 {
    -3 * sigma_closed
}

/// Rank-2 count of the standard branched `Z_k` cover of disk bundles:
/// `-(k^2 - 1)`.
pub fn sigma2_pi(k: i64) -> Result<i64, SmaleError> {
    if k < 1 {
        return Err(SmaleError::NonPositive { what: "branching order", value: k });
    }
    let sq = k.checked_mul(k).ok_or(SmaleError::Overflow("branch count"))?;
    Ok(1 - sq)
}

/// `#Sigma^2(g o f) = deg f * #Sigma^2(g) + #Sigma^2(f)`, valid when the
/// branch locus of `f` avoids the singular set of `g`.
pub fn sigma2_compose(
    deg_f: i64,
    s2_g: i64,
    s2_f: i64,
    disjoint: Option<Disjointness>,
) -> Result<i64, SmaleError> {
    if disjoint.is_none() {
        return Err(SmaleError::DisjointnessUnjustified);
    }
    deg_f
        .checked_mul(s2_g)
        .and_then(|v| v.checked_add(s2_f))
        .ok_or(SmaleError::Overflow("composite rank-2 count"))
}

/// `Omega(alpha) = Omega(alpha') + deg * Omega(beta)` for the modified
/// composite `alpha'`.
pub fn modification_correction(omega_mod: SmaleInvariant, deg: i64, omega_beta: SmaleInvariant) -> SmaleInvariant {
    omega_mod + omega_beta.scale(deg)
}

/// Why the composition formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Disjointness {
    /// The outer map is an immersion, so its singular set is empty.
    OuterImmersion,
    /// The branch loci of both covers sit in disjoint neighbourhoods of
    /// 2-handle cores.
    BranchLociNearHandleCores,
}

impl Disjointness {
    pub fn describe(self) -> &'static str {
        match self {
            Disjointness::OuterImmersion => "outer map is an immersion (empty singular set)",
            Disjointness::BranchLociNearHandleCores => {
                "branch loci lie near distinct 2-handle cores and do not overlap"
            }
        }
    }
}

/// A rank-2-point count built from the admissible contributions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sigma2 {
    /// A genuine immersion has no rank-2 points.
    Immersion,
    /// `-3 sigma` of a closed 4-manifold.
    Thom { sigma_closed: i64 },
    /// Standard branched `Z_k` cover: `-(k^2 - 1)`.
    PiBranch { k: i64 },
    /// The perturbed `(z, w) -> (z^2, w)` model: 0.
    Z2Model,
    /// `outer o inner`, with `inner` of degree `deg`.
    Compose { deg: i64, outer: Box<Sigma2>, inner: Box<Sigma2>, disjoint: Option<Disjointness> },
}

impl Sigma2 {
    pub fn compose(deg: i64, outer: Sigma2, inner: Sigma2, disjoint: Option<Disjointness>) -> Self {
        Sigma2::Compose { deg, outer: Box::new(outer), inner: Box::new(inner), disjoint }
    }

    pub fn value(&self) -> Result<i64, SmaleError> {
        match self {
            Sigma2::Immersion | Sigma2::Z2Model => Ok(0),
            Sigma2::Thom { sigma_closed } => Ok(sigma2_thom(*sigma_closed)),
            Sigma2::PiBranch { k } => sigma2_pi(*k),
            Sigma2::Compose { deg, outer, inner, disjoint } => {
                sigma2_compose(*deg, outer.value()?, inner.value()?, *disjoint)
            }
        }
    }
}

impl fmt::Display for Sigma2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma2::Immersion => f.write_str("immersion"),
            Sigma2::Thom { sigma_closed } => write!(f, "thom({sigma_closed})"),
            Sigma2::PiBranch { k } => write!(f, "pi_branch({k})"),
            Sigma2::Z2Model => f.write_str("z2_model"),
            Sigma2::Compose { deg, outer, inner, .. } => write!(f, "compose({deg}, {outer}, {inner})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defect_examples() {
        for n in 1..10i64 {
            assert_eq!(hirzebruch_defect(n * n - 1, -(n * n - 1)), -2 * n * n + 2);
            assert_eq!(hirzebruch_defect(4 * n * n + 8 * n - 1, -4 * n * n + 1), -8 * n * n - 24 * n + 2);
        }
        assert_eq!(hirzebruch_defect(0, 0), 0);
    }

    #[test]
    fn smale_examples() {
        assert_eq!(smale_invariant(3, 0).unwrap(), SmaleInvariant::new(2, -1));
        assert_eq!(smale_invariant(1, 0).unwrap(), SmaleInvariant::ZERO);
        assert_eq!(smale_invariant(15, -16).unwrap(), SmaleInvariant::new(14, -3));
        assert!(matches!(smale_invariant(2, 0), Err(SmaleError::InconsistentLedger { .. })));
    }

    #[test]
    fn sigma2_rules() {
        assert_eq!(sigma2_thom(0), 0);
        assert_eq!(sigma2_thom(1), -3);
        assert_eq!(sigma2_thom(-2), 6);
        assert_eq!(sigma2_pi(1).unwrap(), 0);
        assert_eq!(sigma2_pi(4).unwrap(), -15);
        assert!(sigma2_pi(0).is_err());
        let j = Some(Disjointness::BranchLociNearHandleCores);
        for n in 1..8 {
            assert_eq!(sigma2_compose(2 * n, 0, -(4 * n * n - 1), j).unwrap(), -4 * n * n + 1);
        }
        assert_eq!(sigma2_compose(1, 7, 0, j).unwrap(), 7);
        assert_eq!(sigma2_compose(5, 0, 0, j).unwrap(), 0);
        assert_eq!(sigma2_compose(2, 0, -3, None), Err(SmaleError::DisjointnessUnjustified));
        let t = Sigma2::compose(3, Sigma2::Immersion, Sigma2::PiBranch { k: 3 }, None);
        assert!(t.value().is_err());
    }

    #[test]
    fn group_operations() {
        let t = SmaleInvariant::new(2, -1);
        assert_eq!(t + (-t), SmaleInvariant::ZERO);
        assert_eq!((-t).scale(5), SmaleInvariant::new(-10, 5));
        assert_eq!(t + SmaleInvariant::ZERO, t);
        for n in 1..10 {
            let a = modification_correction(SmaleInvariant::new(n * n + 2 * n - 1, -n), n, -t);
            assert_eq!(a, SmaleInvariant::new(n * n - 1, 0));
            let d = modification_correction(SmaleInvariant::new(4 * n * n + 20 * n - 1, -4 * n), 4 * n, -t);
            assert_eq!(d, SmaleInvariant::new(4 * n * n + 12 * n - 1, 0));
        }
        assert_eq!(modification_correction(t, 0, SmaleInvariant::new(9, 9)), t);
    }

    #[test]
    fn bordism_classes() {
        assert_eq!(SmaleInvariant::new(35, 0).bordism_class(), 11);
        assert!(is_generator(11));
        assert_eq!(SmaleInvariant::new(2, -1).bordism_class(), 0);
        assert!(!is_generator(0));
        assert_eq!(SmaleInvariant::new(71, 0).bordism_class(), 23);
        assert!(is_generator(23));
        assert_eq!(SmaleInvariant::new(-1, 0).bordism_class(), 23);
    }
}
