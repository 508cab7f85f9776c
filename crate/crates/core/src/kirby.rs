//! Kirby calculus on linking matrices.
//!
//! Components are numbered from 1, as in move scripts.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::form::SymmetricForm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KirbyError {
    #[error("component {index} out of range (state has {size} components)")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("cannot slide component {0} over itself")]
    SelfSlide(usize),
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("component {index} has framing {framing}, not +1 or -1")]
    NotUnit { index: usize, framing: BigInt },
    #[error("component {index} has nonzero linking with {}", describe_blocking(.blocking))]
    Linked { index: usize, blocking: Vec<(usize, BigInt)> },
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
}

fn describe_blocking(blocking: &[(usize, BigInt)]) -> String {
    let parts: Vec<String> =
        blocking.iter().map(|(j, v)| alloc::format!("component {j} (entry {v})")).collect();
    parts.join(", ")
}

/// Net count of `CP2` and `-CP2` stabilisations since the start.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Ledger {
    pub plus: i64,
    pub minus: i64,
}

impl fmt::Display for Ledger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{+CP2:{}, -CP2:{}}}", self.plus, self.minus)
    }
}

/// A linking matrix with component labels and a stabilisation ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KirbyState {
    form: SymmetricForm,
    labels: Vec<String>,
    ledger: Ledger,
    blowups: usize,
}

impl KirbyState {
    /// Components are labelled `h1, h2, ...`.
    pub fn new(form: SymmetricForm) -> Self {
        let labels = (1..=form.size()).map(|i| alloc::format!("h{i}")).collect();
        KirbyState { form, labels, ledger: Ledger::default(), blowups: 0 }
    }

    pub fn form(&self) -> &SymmetricForm {
        &self.form
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ledger(&self) -> Ledger {
        self.ledger
    }

    pub fn size(&self) -> usize {
        self.form.size()
    }

    fn check(&self, index: usize) -> Result<usize, KirbyError> {
        if index == 0 || index > self.size() {
            return Err(KirbyError::IndexOutOfRange { index, size: self.size() });
        }
        Ok(index - 1)
    }

    /// Adds an unlinked unknot with framing `sign`.
    pub fn blowup(&self, sign: i64) -> Result<Self, KirbyError> {
        if sign.abs() != 1 {
            return Err(KirbyError::BadSign(sign));
        }
        let mut next = self.clone();
        next.form = self.form.direct_sum(&SymmetricForm::diagonal([sign]));
        next.blowups += 1;
        next.labels.push(alloc::format!("e{}", next.blowups));
        if sign > 0 {
            next.ledger.plus += 1;
        } else {
            next.ledger.minus += 1;
        }
        Ok(next)
    }

    /// Deletes component `k`, which must be a `±1`-framed unknot linking
    /// nothing else.
    pub fn blowdown(&self, k: usize) -> Result<Self, KirbyError> {
        let i = self.check(k)?;
        let framing = self.form.get(i, i).clone();
        let blocking: Vec<(usize, BigInt)> = (0..self.size())
            .filter(|&j| j != i && !self.form.get(i, j).is_zero())
            .map(|j| (j + 1, self.form.get(i, j).clone()))
            .collect();
        if !blocking.is_empty() {
            return Err(KirbyError::Linked { index: k, blocking });
        }
        let positive = framing.is_one();
        if !positive && framing != -BigInt::one() {
            return Err(KirbyError::NotUnit { index: k, framing });
        }
        let mut next = self.clone();
        next.form = self.form.without(i);
        next.labels.remove(i);
        if positive {
            next.ledger.plus -= 1;
        } else {
            next.ledger.minus -= 1;
        }
        Ok(next)
    }

    /// Slides component `i` over component `j`: `b_i -> b_i + sign * b_j`,
    /// so the framing of `i` becomes `M_ii + 2 sign M_ij + M_jj`.
    pub fn slide(&self, i: usize, j: usize, sign: i64) -> Result<Self, KirbyError> {
        let (a, b) = (self.check(i)?, self.check(j)?);
        if a == b {
            return Err(KirbyError::SelfSlide(i));
        }
        if sign.abs() != 1 {
            return Err(KirbyError::BadSign(sign));
        }
        let n = self.size();
        let mut e: Vec<BigInt> = (0..n * n).map(|p| BigInt::from(u8::from(p / n == p % n))).collect();
        e[b * n + a] = BigInt::from(sign);
        let mut next = self.clone();
        next.form = self.form.transform(&e);
        Ok(next)
    }

    /// Reorders components: component `i` moves to position `perm[i-1]`
    /// (both 1-based).
    pub fn permute(&self, perm: &[usize]) -> Result<Self, KirbyError> {
        let n = self.size();
        if perm.len() != n {
            return Err(KirbyError::BadPermutation(alloc::format!(
                "expected {n} entries, got {}",
                perm.len()
            )));
        }
        let mut seen = alloc::vec![false; n];
        for &p in perm {
            if p == 0 || p > n || core::mem::replace(&mut seen[p - 1], true) {
                return Err(KirbyError::BadPermutation(alloc::format!("{perm:?} is not a permutation")));
            }
        }
        let zero_based: Vec<usize> = perm.iter().map(|p| p - 1).collect();
        let mut next = self.clone();
        next.form = self.form.permuted(&zero_based);
        let mut labels = alloc::vec![String::new(); n];
        for (i, l) in self.labels.iter().enumerate() {
            labels[zero_based[i]] = l.clone();
        }
        next.labels = labels;
        Ok(next)
    }
}

/// Permutation of `0..n` (as `perm[i] = new position of i`) carrying `from`
/// onto `to`, if one exists.
pub fn matching_permutation(from: &SymmetricForm, to: &SymmetricForm) -> Option<Vec<usize>> {
    let n = from.size();
    if to.size() != n {
        return None;
    }
    let mut perm = alloc::vec![usize::MAX; n];
    let mut used = alloc::vec![false; n];
    fn rec(
        i: usize,
        from: &SymmetricForm,
        to: &SymmetricForm,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = from.size();
        if i == n {
            return true;
        }
        for p in 0..n {
            if used[p] || from.get(i, i) != to.get(p, p) {
                continue;
            }
            if (0..i).all(|j| from.get(i, j) == to.get(p, perm[j])) {
                perm[i] = p;
                used[p] = true;
                if rec(i + 1, from, to, perm, used) {
                    return true;
                }
                used[p] = false;
            }
        }
        false
    }
    rec(0, from, to, &mut perm, &mut used).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blowups_and_ledger() {
        let s = KirbyState::new(SymmetricForm::empty()).blowup(1).unwrap();
        assert_eq!(s.form(), &SymmetricForm::diagonal([1]));
        let s = KirbyState::new(SymmetricForm::diagonal([2])).blowup(-1).unwrap();
        assert_eq!(s.form(), &SymmetricForm::diagonal([2, -1]));
        assert_eq!(s.labels(), &["h1", "e1"]);
        let s = KirbyState::new(SymmetricForm::empty());
        let s = s.blowup(1).unwrap().blowup(1).unwrap().blowup(-1).unwrap();
        assert_eq!(s.ledger(), Ledger { plus: 2, minus: 1 });
        assert!(s.blowup(2).is_err());
    }

    #[test]
    fn blowdowns() {
        let s = KirbyState::new(SymmetricForm::diagonal([2, -1]));
        assert_eq!(s.blowdown(2).unwrap().form(), &SymmetricForm::diagonal([2]));
        let s = KirbyState::new(SymmetricForm::from_i64([[1, 1], [1, 0]]));
        match s.blowdown(1) {
            Err(KirbyError::Linked { index: 1, blocking }) => {
                assert_eq!(blocking, alloc::vec![(2, BigInt::from(1))])
            }
            other => panic!("{other:?}"),
        }
        let s = KirbyState::new(SymmetricForm::diagonal([1]));
        assert!(s.blowdown(1).unwrap().form().is_empty());
        assert!(matches!(
            KirbyState::new(SymmetricForm::diagonal([3])).blowdown(1),
            Err(KirbyError::NotUnit { .. })
        ));
        assert!(matches!(s.blowdown(2), Err(KirbyError::IndexOutOfRange { .. })));
    }

    #[test]
    fn blowup_blowdown_round_trip() {
        let s = KirbyState::new(SymmetricForm::from_i64([[2, 1], [1, -3]]));
        let t = s.blowup(-1).unwrap().blowdown(3).unwrap();
        assert_eq!(t.form(), s.form());
        assert_eq!(t.ledger(), Ledger::default());
    }

    #[test]
    fn slide_example() {
        let s = KirbyState::new(SymmetricForm::hyperbolic()).slide(1, 2, 1).unwrap();
        assert_eq!(s.form(), &SymmetricForm::from_i64([[2, 1], [1, 0]]));
        assert!(s.slide(1, 1, 1).is_err());
        assert!(s.slide(1, 2, 0).is_err());
    }

    #[test]
    fn unlinking_a_unit_unknot() {
        // two components through a -1 unknot: framings rise by one each
        for eps in [1i64, -1] {
            let m = SymmetricForm::from_rows(&[
                alloc::vec![3i64, 0, 1],
                alloc::vec![0, -2, 1],
                alloc::vec![1, 1, eps],
            ])
            .unwrap();
            let s = KirbyState::new(m);
            let s = s.slide(1, 3, -eps).unwrap().slide(2, 3, -eps).unwrap();
            assert_eq!(s.form().get(0, 0), &BigInt::from(3 - eps));
            assert_eq!(s.form().get(1, 1), &BigInt::from(-2 - eps));
            let s = s.blowdown(3).unwrap();
            assert_eq!(s.size(), 2);
        }
    }

    #[test]
    fn permutation_matching() {
        let a = SymmetricForm::from_i64([[2, 1, 0], [1, 0, 0], [0, 0, -1]]);
        let s = KirbyState::new(a.clone()).permute(&[3, 1, 2]).unwrap();
        assert_eq!(s.labels(), &["h2", "h3", "h1"]);
        let p = matching_permutation(&a, s.form()).unwrap();
        assert_eq!(a.permuted(&p), *s.form());
        assert!(matching_permutation(&a, &SymmetricForm::diagonal([2, 0, -1])).is_none());
        assert!(KirbyState::new(a).permute(&[1, 1, 2]).is_err());
    }
}
