//! Form-level checks of the stabilisation identities between plumbings and
//! disk bundles.
//!
//! | name         | left                      | right                      |
//! |--------------|---------------------------|----------------------------|
//! | `A-stable`   | `P(A,n-1;2) + SxS`        | `E(-n) + CP2^n`            |
//! | `A-blowdown` | `E(-n) + CP2^(n-1)`       | `P(A,n-1;2) + CP2bar`      |
//! | `D-stable`   | `P(D,n+2;2) + SxS`        | `Estar(n) + CP2^(n+2)`     |
//! | `D-blowdown` | `Estar(n) + CP2^(n+1)`    | `P(D,n+2;2) + CP2bar`      |
//! | `cover-Estar`| double cover form of `Estar(n)` | `E(-2n) + X_n`       |
//!
//! `P(A,0;2)` is read as `D4`. `X_n` is `SxS` for even `n` and `SxtS` for odd
//! `n`. For the two stable identities the left side is even while the right
//! side is odd, so the literal statements fail on parity; the report then
//! also checks the variant with `SxtS` in place of `SxS`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::congruence::{congruent, invariant_mismatch, Budget, InvariantMismatch, Verdict};
use crate::expr::{Atom, FourManifoldExpr};
use crate::form::{Invariants, SymmetricForm};
use crate::plumbing::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityName {
    AStable,
    ABlowdown,
    DStable,
    DBlowdown,
    CoverEstar,
}

impl IdentityName {
    pub const ALL: [IdentityName; 5] = [
        IdentityName::AStable,
        IdentityName::ABlowdown,
        IdentityName::DStable,
        IdentityName::DBlowdown,
        IdentityName::CoverEstar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityName::AStable => "A-stable",
            IdentityName::ABlowdown => "A-blowdown",
            IdentityName::DStable => "D-stable",
            IdentityName::DBlowdown => "D-blowdown",
            IdentityName::CoverEstar => "cover-Estar",
        }
    }

    fn has_twisted_variant(self) -> bool {
        matches!(self, IdentityName::AStable | IdentityName::DStable)
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("unknown identity `{0}` (expected one of A-stable, A-blowdown, D-stable, D-blowdown, cover-Estar)")]
    UnknownName(String),
    #[error("identity parameter must be at least 1")]
    ZeroParameter,
}

impl FromStr for IdentityName {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| IdentityError::UnknownName(s.to_string()))
    }
}

/// One side of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Side {
    /// Expression text, or the matrix literal when the side is a bare form.
    pub description: String,
    pub form: SymmetricForm,
}

impl Side {
    fn expr(e: FourManifoldExpr) -> Self {
        Side { description: e.summary(), form: e.intersection_form() }
    }

    pub fn invariants(&self) -> &Invariants {
        self.form.invariants()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Literal,
    /// `SxS` replaced by `SxtS`.
    Twisted,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Literal => "literal",
            Variant::Twisted => "twisted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantReport {
    pub variant: Variant,
    pub left: Side,
    pub right: Side,
    /// First differing invariant, if any; computed before any search.
    pub mismatch: Option<InvariantMismatch>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: IdentityName,
    pub n: u64,
    pub variants: Vec<VariantReport>,
}

impl IdentityReport {
    /// The first variant with a verified certificate.
    pub fn certified_variant(&self) -> Option<Variant> {
        self.variants.iter().find(|v| v.verdict.is_yes()).map(|v| v.variant)
    }

    pub fn literal(&self) -> &VariantReport {
        &self.variants[0]
    }
}

/// `[[0,1,1],[1,-n-2,-2],[1,-2,-n-2]]`: the 0-framed handle lifts to one
/// handle, each `(-n-2)`-framed handle to two.
pub fn cover_form(n: u64) -> SymmetricForm {
    let d = -(n as i64) - 2;
    SymmetricForm::from_i64([[0, 1, 1], [1, d, -2], [1, -2, d]])
}

fn a_chain(n: u64) -> Atom {
    if n == 1 {
        Atom::D4
    } else {
        Atom::plumbing(Family::A, n as usize - 1, 2).expect("n >= 2")
    }
}

fn d_tree(n: u64) -> Atom {
    Atom::plumbing(Family::D, n as usize + 2, 2).expect("n >= 1")
}

/// The two sides of an identity, with `bundle` used for the `S^2`-bundle
/// summand of the stable identities.
pub fn sides(name: IdentityName, n: u64, variant: Variant) -> Result<(Side, Side), IdentityError> {
    if n == 0 {
        return Err(IdentityError::ZeroParameter);
    }
    let bundle = match variant {
        Variant::Literal => Atom::SxS,
        Variant::Twisted => Atom::SxtS,
    };
    let k = n as usize;
    let e = FourManifoldExpr::atom;
    let neg = -(n as i64);
    Ok(match name {
        IdentityName::AStable => (
            Side::expr(e(a_chain(n)).with(bundle, 1)),
            Side::expr(e(Atom::DiskBundle(neg)).with(Atom::Cp2, k)),
        ),
        IdentityName::ABlowdown => (
            Side::expr(e(Atom::DiskBundle(neg)).with(Atom::Cp2, k - 1)),
            Side::expr(e(a_chain(n)).with(Atom::Cp2Bar, 1)),
        ),
        IdentityName::DStable => (
            Side::expr(e(d_tree(n)).with(bundle, 1)),
            Side::expr(e(Atom::EStar(n)).with(Atom::Cp2, k + 2)),
        ),
        IdentityName::DBlowdown => (
            Side::expr(e(Atom::EStar(n)).with(Atom::Cp2, k + 1)),
            Side::expr(e(d_tree(n)).with(Atom::Cp2Bar, 1)),
        ),
        IdentityName::CoverEstar => {
            let form = cover_form(n);
            let x = if n % 2 == 0 { Atom::SxS } else { Atom::SxtS };
            (
                Side { description: form.to_literal(), form },
                Side::expr(e(Atom::DiskBundle(2 * neg)).with(x, 1)),
            )
        }
    })
}

/// Compares invariants of both sides and searches for a certificate, for the
/// literal statement and (for the stable identities) the twisted variant.
pub fn verify_identity(name: IdentityName, n: u64, budget: &Budget) -> Result<IdentityReport, IdentityError> {
    let mut variants = Vec::new();
    let list: &[Variant] =
        if name.has_twisted_variant() { &[Variant::Literal, Variant::Twisted] } else { &[Variant::Literal] };
    for &variant in list {
        let (left, right) = sides(name, n, variant)?;
        let mismatch = invariant_mismatch(&left.form, &right.form);
        let verdict = match &mismatch {
            Some(m) => Verdict::No(m.clone()),
            None => congruent(&left.form, &right.form, budget),
        };
        if let Verdict::Yes(cert) = &verdict {
            debug_assert!(cert.verify(&left.form, &right.form));
        }
        variants.push(VariantReport { variant, left, right, mismatch, verdict });
    }
    Ok(IdentityReport { name, n, variants })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::Witness;
    use crate::form::Parity;
    use num_bigint::BigInt;

    #[test]
    fn a_blowdown_three() {
        let r = verify_identity(IdentityName::ABlowdown, 3, &Budget::default()).unwrap();
        let v = r.literal();
        assert!(v.mismatch.is_none());
        let inv = v.left.invariants();
        assert_eq!((inv.rank, inv.signature), (3, 1));
        assert_eq!(inv.determinant, BigInt::from(-3));
        assert_eq!(inv.parity, Parity::Odd);
        assert!(v.verdict.is_yes());
    }

    #[test]
    fn a_stable_two() {
        let r = verify_identity(IdentityName::AStable, 2, &Budget::default()).unwrap();
        let lit = r.literal();
        let m = lit.mismatch.as_ref().unwrap();
        assert_eq!(m.invariant, Witness::Parity);
        assert_eq!((m.left.as_str(), m.right.as_str()), ("even", "odd"));
        assert_eq!(r.certified_variant(), Some(Variant::Twisted));
    }

    #[test]
    fn cover_two() {
        let r = verify_identity(IdentityName::CoverEstar, 2, &Budget::default()).unwrap();
        let v = r.literal();
        assert_eq!(v.left.form, SymmetricForm::from_i64([[0, 1, 1], [1, -4, -2], [1, -2, -4]]));
        assert_eq!(v.left.invariants().parity, Parity::Even);
        assert_eq!(v.right.invariants().parity, Parity::Even);
        assert!(v.verdict.is_yes());
    }

    #[test]
    fn names_round_trip() {
        for n in IdentityName::ALL {
            assert_eq!(n.as_str().parse::<IdentityName>().unwrap(), n);
        }
        assert!("B-stable".parse::<IdentityName>().is_err());
        assert_eq!(sides(IdentityName::AStable, 0, Variant::Literal), Err(IdentityError::ZeroParameter));
    }
}
