//! The dicyclic group `Dic_n = <a, x | a^n = x^2, x a x^-1 = a^-1>` of
//! order `4n`, in normal form `a^k x^e` with `k` mod `2n`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::snf::{smith_diagonal, torsion_factors};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum DicyclicError {
    #[error("group parameter must be at least 1")]
    ZeroParameter,
    #[error("elements of Dic_{0} and Dic_{1} cannot be multiplied")]
    ParameterMismatch(u64, u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DicyclicElement {
    n: u64,
    k: u64,
    e: bool,
}

impl DicyclicElement {
    /// `a^k x^e`; `k` is reduced mod `2n`.
    pub fn new(n: u64, k: i64, e: bool) -> Result<Self, DicyclicError> {
        if n == 0 {
            return Err(DicyclicError::ZeroParameter);
        }
        let m = 2 * n as i64;
        Ok(DicyclicElement { n, k: k.rem_euclid(m) as u64, e })
    }

    pub fn identity(n: u64) -> Result<Self, DicyclicError> {
        Self::new(n, 0, false)
    }

    pub fn a(n: u64) -> Result<Self, DicyclicError> {
        Self::new(n, 1, false)
    }

    pub fn x(n: u64) -> Result<Self, DicyclicError> {
        Self::new(n, 0, true)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn e(&self) -> bool {
        self.e
    }

    pub fn mul(&self, other: &Self) -> Result<Self, DicyclicError> {
        if self.n != other.n {
            return Err(DicyclicError::ParameterMismatch(self.n, other.n));
        }
        let (n, k1, k2) = (self.n as i64, self.k as i64, other.k as i64);
        let (k, e) = match (self.e, other.e) {
            (false, e2) => (k1 + k2, e2),
            (true, false) => (k1 - k2, true),
            (true, true) => (k1 - k2 + n, false),
        };
        Self::new(self.n, k, e)
    }

    pub fn inverse(&self) -> Self {
        let n = self.n as i64;
        let k = self.k as i64;
        // (a^k x)^-1 = x^-1 a^-k = a^n x a^-k = a^(n+k) x
        let (k, e) = if self.e { (k + n, true) } else { (-k, false) };
        Self::new(self.n, k, e).expect("n >= 1")
    }

    pub fn pow(&self, mut p: u64) -> Self {
        let mut acc = Self::identity(self.n).expect("n >= 1");
        let mut base = *self;
        while p > 0 {
            if p & 1 == 1 {
                acc = acc.mul(&base).expect("same group");
            }
            base = base.mul(&base).expect("same group");
            p >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && !self.e
    }

    /// Order by iterated multiplication.
    pub fn order(&self) -> u64 {
        let mut g = *self;
        let mut m = 1;
        while !g.is_identity() {
            g = g.mul(self).expect("same group");
            m += 1;
        }
        m
    }
}

impl fmt::Display for DicyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.e) {
            (0, false) => f.write_str("1"),
            (0, true) => f.write_str("x"),
            (k, false) => write!(f, "a^{k}"),
            (k, true) => write!(f, "a^{k}x"),
        }
    }
}

/// All `4n` elements in normal-form order.
pub fn elements(n: u64) -> Result<Vec<DicyclicElement>, DicyclicError> {
    let mut out = Vec::with_capacity(4 * n as usize);
    for e in [false, true] {
        for k in 0..2 * n {
            out.push(DicyclicElement::new(n, k as i64, e)?);
        }
    }
    Ok(out)
}

/// Group order by enumerating the distinct products of the generators.
pub fn group_order(n: u64) -> Result<u64, DicyclicError> {
    let a = DicyclicElement::a(n)?;
    let x = DicyclicElement::x(n)?;
    let mut seen = BTreeSet::from([DicyclicElement::identity(n)?]);
    let mut stack = alloc::vec![DicyclicElement::identity(n)?];
    while let Some(g) = stack.pop() {
        for h in [g.mul(&a)?, g.mul(&x)?] {
            if seen.insert(h) {
                stack.push(h);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// Checks `1 -> Z_2n -> Dic_n -> Z_2 -> 1`: `<a>` is cyclic of order `2n`,
/// normal, of index 2, and the quotient is cyclic of order 2.
pub fn check_extension(n: u64) -> Result<bool, DicyclicError> {
    let all = elements(n)?;
    let a = DicyclicElement::a(n)?;
    let sub: BTreeSet<DicyclicElement> = (0..2 * n).map(|k| a.pow(k)).collect();
    let cyclic = a.order() == 2 * n && sub.len() as u64 == 2 * n;
    let mut normal = true;
    for g in &all {
        for h in &sub {
            normal &= sub.contains(&g.mul(h)?.mul(&g.inverse())?);
        }
    }
    let index_two = all.len() as u64 == 2 * sub.len() as u64;
    // the coset of x squares back into <a>, so the quotient is Z_2
    let x = DicyclicElement::x(n)?;
    let quotient_z2 = !sub.contains(&x) && sub.contains(&x.mul(&x)?);
    Ok(cyclic && normal && index_two && quotient_z2)
}

/// Invariant factors of the abelianisation, from the relation matrix of
/// `a^n x^-2` and `x a x^-1 a` written additively.
pub fn abelianization(n: u64) -> Result<Vec<BigInt>, DicyclicError> {
    if n == 0 {
        return Err(DicyclicError::ZeroParameter);
    }
    let rel = [BigInt::from(n), BigInt::from(-2), BigInt::from(2), BigInt::from(0)];
    Ok(torsion_factors(&smith_diagonal(2, 2, &rel)))
}

/// Exact quaternion model: `a = e^{i pi / n}`, `x = j`.
///
/// A quaternion `z1 + z2 j` with `z1, z2` each zero or a root of unity
/// `e^{i pi t / n}` is stored as two optional angles `t` mod `2n`.
pub mod quaternion {
    use super::*;

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub struct Unit {
        n: u64,
        z1: Option<u64>,
        z2: Option<u64>,
    }

    impl Unit {
        fn angle(n: u64, t: i64) -> u64 {
            t.rem_euclid(2 * n as i64) as u64
        }

        /// Image of `a^k x^e`.
        pub fn from_element(g: &DicyclicElement) -> Self {
            let n = g.n();
            if g.e() {
                Unit { n, z1: None, z2: Some(g.k()) }
            } else {
                Unit { n, z1: Some(g.k()), z2: None }
            }
        }

        // product of two monomials: sum of angles, or None if a factor is 0
        fn prod(n: u64, a: Option<u64>, b: Option<u64>) -> Option<u64> {
            Some(Self::angle(n, a? as i64 + b? as i64))
        }

        fn conj(n: u64, a: Option<u64>) -> Option<u64> {
            a.map(|t| Self::angle(n, -(t as i64)))
        }

        fn neg(n: u64, a: Option<u64>) -> Option<u64> {
            a.map(|t| Self::angle(n, t as i64 + n as i64))
        }

        /// `(z1 + z2 j)(w1 + w2 j) = (z1 w1 - z2 conj(w2)) + (z1 w2 + z2 conj(w1)) j`.
        /// Elements of the group have exactly one nonzero slot, so each new
        /// slot has at most one nonzero term.
        pub fn mul(&self, o: &Self) -> Self {
            let n = self.n;
            let re = Self::prod(n, self.z1, o.z1)
                .or_else(|| Self::neg(n, Self::prod(n, self.z2, Self::conj(n, o.z2))));
            let jj = Self::prod(n, self.z1, o.z2).or_else(|| Self::prod(n, self.z2, Self::conj(n, o.z1)));
            Unit { n, z1: re, z2: jj }
        }

        /// Back to normal form; `e^{i pi t / n}` is `a^t`, and `w j = a^t x`.
        pub fn to_element(&self) -> Option<DicyclicElement> {
            match (self.z1, self.z2) {
                (Some(t), None) => DicyclicElement::new(self.n, t as i64, false).ok(),
                (None, Some(t)) => DicyclicElement::new(self.n, t as i64, true).ok(),
                _ => None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        let x = DicyclicElement::x(2).unwrap();
        assert_eq!(x.mul(&x).unwrap(), DicyclicElement::a(2).unwrap().pow(2));
        let (a, x) = (DicyclicElement::a(3).unwrap(), DicyclicElement::x(3).unwrap());
        assert_eq!(x.mul(&a).unwrap().mul(&x.inverse()).unwrap(), a.inverse());
        assert!(a.mul(&DicyclicElement::a(4).unwrap()).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(5).unwrap(), 20);
        assert_eq!(DicyclicElement::a(5).unwrap().order(), 10);
        for n in 1..10 {
            assert_eq!(DicyclicElement::x(n).unwrap().order(), 4);
        }
    }

    #[test]
    fn extensions_and_abelianization() {
        for n in [1, 4, 7] {
            assert!(check_extension(n).unwrap());
        }
        assert_eq!(abelianization(3).unwrap(), alloc::vec![BigInt::from(4)]);
        assert_eq!(abelianization(4).unwrap(), alloc::vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn quaternion_model_agrees() {
        for n in 1..=6 {
            let all = elements(n).unwrap();
            for g in &all {
                for h in &all {
                    let q = quaternion::Unit::from_element(g).mul(&quaternion::Unit::from_element(h));
                    assert_eq!(q.to_element(), Some(g.mul(h).unwrap()));
                }
            }
        }
    }
}
