//! Symmetric integer bilinear forms and their congruence invariants.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::race::OnceBox;
use thiserror::Error;

use crate::snf::smith_diagonal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Congruence invariants of a form, computed once per form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub size: usize,
    pub rank: usize,
    pub positive: usize,
    pub negative: usize,
    pub signature: i64,
    pub determinant: BigInt,
    pub parity: Parity,
    pub smith: Vec<BigInt>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("malformed matrix literal at byte {at}: {msg}")]
    Literal { at: usize, msg: &'static str },
}

/// An exact symmetric matrix over `Z`, viewed as the Gram matrix of an
/// integral bilinear form.
pub struct SymmetricForm {
    n: usize,
    entries: Vec<BigInt>,
    cache: OnceBox<Invariants>,
}

impl SymmetricForm {
    /// The rank-0 form.
    pub fn empty() -> Self {
        Self::from_raw(0, Vec::new())
    }

    fn from_raw(n: usize, entries: Vec<BigInt>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        SymmetricForm { n, entries, cache: OnceBox::new() }
    }

    /// Builds a form from rows, checking shape and symmetry.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, FormError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(FormError::NotSquare { row: r, len: row.len(), expected: n });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Self::from_entries(n, entries)
    }

    pub fn from_entries(n: usize, entries: Vec<BigInt>) -> Result<Self, FormError> {
        assert_eq!(entries.len(), n * n, "entry count must be n*n");
        for i in 0..n {
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(FormError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self::from_raw(n, entries))
    }

    /// Convenience constructor for small literal matrices; panics when the
    /// input is not square and symmetric.
    pub fn from_i64<const N: usize>(rows: [[i64; N]; N]) -> Self {
        let entries = rows.iter().flatten().map(|&v| BigInt::from(v)).collect();
        Self::from_entries(N, entries).expect("literal matrix must be symmetric")
    }

    pub fn diagonal<I: IntoIterator<Item = i64>>(diag: I) -> Self {
        let d: Vec<i64> = diag.into_iter().collect();
        let n = d.len();
        let mut entries = alloc::vec![BigInt::zero(); n * n];
        for (i, v) in d.into_iter().enumerate() {
            entries[i * n + i] = BigInt::from(v);
        }
        Self::from_raw(n, entries)
    }

    /// `n x n` identity, the form of `n` copies of `CP^2` minus a ball.
    pub fn identity(n: usize) -> Self {
        Self::diagonal(core::iter::repeat(1).take(n))
    }

    /// The hyperbolic plane `[[0,1],[1,0]]`.
    pub fn hyperbolic() -> Self {
        Self::from_i64([[0, 1], [1, 0]])
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(<[BigInt]>::to_vec).collect()
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(Signed::abs).max().unwrap_or_else(BigInt::zero)
    }

    /// Block-diagonal sum `self + other`.
    pub fn direct_sum(&self, other: &SymmetricForm) -> SymmetricForm {
        let n = self.n + other.n;
        let mut entries = alloc::vec![BigInt::zero(); n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                entries[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                entries[(self.n + i) * n + self.n + j] = other.get(i, j).clone();
            }
        }
        Self::from_raw(n, entries)
    }

    /// `U^T M U` for an `n x n` integer matrix `U` given row-major.
    pub fn transform(&self, u: &[BigInt]) -> SymmetricForm {
        let n = self.n;
        assert_eq!(u.len(), n * n, "transform matrix shape mismatch");
        // MU
        let mut mu = alloc::vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let m = self.get(i, k);
                if m.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = &u[k * n + j];
                    if !x.is_zero() {
                        mu[i * n + j] += m * x;
                    }
                }
            }
        }
        let mut out = alloc::vec![BigInt::zero(); n * n];
        for k in 0..n {
            for i in 0..n {
                let x = &u[k * n + i];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &mu[k * n + j];
                    if !y.is_zero() {
                        out[i * n + j] += x * y;
                    }
                }
            }
        }
        Self::from_raw(n, out)
    }

    /// Reorders the basis: component `i` moves to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> SymmetricForm {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let mut entries = alloc::vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = self.get(i, j).clone();
            }
        }
        Self::from_raw(n, entries)
    }

    /// Form obtained by deleting basis vector `k`.
    pub fn without(&self, k: usize) -> SymmetricForm {
        let n = self.n;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != k) {
            for j in (0..n).filter(|&j| j != k) {
                entries.push(self.get(i, j).clone());
            }
        }
        Self::from_raw(n - 1, entries)
    }

    pub fn invariants(&self) -> &Invariants {
        self.cache.get_or_init(|| Box::new(self.compute_invariants()))
    }

    pub fn signature(&self) -> i64 {
        self.invariants().signature
    }

    pub fn rank(&self) -> usize {
        self.invariants().rank
    }

    pub fn determinant(&self) -> BigInt {
        self.invariants().determinant.clone()
    }

    pub fn parity(&self) -> Parity {
        self.invariants().parity
    }

    pub fn smith_normal_form(&self) -> Vec<BigInt> {
        self.invariants().smith.clone()
    }

    fn compute_invariants(&self) -> Invariants {
        let (positive, negative) = self.inertia();
        Invariants {
            size: self.n,
            rank: positive + negative,
            positive,
            negative,
            signature: positive as i64 - negative as i64,
            determinant: self.bareiss_determinant(),
            parity: self.diagonal_parity(),
            smith: smith_diagonal(self.n, self.n, &self.entries),
        }
    }

    // Q(sum x_i e_i) = sum M_ii x_i^2 mod 2, so the diagonal decides parity.
    fn diagonal_parity(&self) -> Parity {
        let two = BigInt::from(2);
        if (0..self.n).all(|i| (self.get(i, i) % &two).is_zero()) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn bareiss_determinant(&self) -> BigInt {
        bareiss_det(self.n, &self.entries)
    }

    /// `(n+, n-)` by symmetric elimination over `Q`: pivot on a nonzero
    /// diagonal entry when one exists, otherwise split off a hyperbolic
    /// pair `(e_i, e_j)` with `M_ij != 0`.
    fn inertia(&self) -> (usize, usize) {
        let n = self.n;
        let mut a: Vec<BigRational> =
            self.entries.iter().cloned().map(BigRational::from_integer).collect();
        let mut active: Vec<usize> = (0..n).collect();
        let (mut pos, mut neg) = (0, 0);
        while !active.is_empty() {
            if let Some(&p) = active.iter().find(|&&i| !a[i * n + i].is_zero()) {
                let piv = a[p * n + p].clone();
                if piv.is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
                active.retain(|&i| i != p);
                for &i in &active {
                    let f = &a[i * n + p] / &piv;
                    if f.is_zero() {
                        continue;
                    }
                    for &j in &active {
                        let v = &f * &a[p * n + j];
                        a[i * n + j] -= v;
                    }
                }
                continue;
            }
            let pair = active.iter().find_map(|&i| {
                active.iter().find(|&&j| j != i && !a[i * n + j].is_zero()).map(|&j| (i, j))
            });
            let Some((i0, j0)) = pair else { break };
            // zero diagonal on the active block: <e_i, e_j> is a hyperbolic pair
            let b = a[i0 * n + j0].clone();
            pos += 1;
            neg += 1;
            active.retain(|&k| k != i0 && k != j0);
            // x_k <- x_k - (M_kj/b) e_i - (M_ki/b) e_j is orthogonal to the pair;
            // with M_ii = M_jj = 0 the new Gram entries are
            // M_kl - (M_ki M_lj + M_kj M_li) / b.
            let snapshot: Vec<(usize, BigRational, BigRational)> = active
                .iter()
                .map(|&k| (k, a[k * n + i0].clone(), a[k * n + j0].clone()))
                .collect();
            for (k, ki, kj) in &snapshot {
                for (l, li, lj) in &snapshot {
                    let v = (ki * lj + kj * li) / &b;
                    a[k * n + l] -= v;
                }
            }
        }
        (pos, neg)
    }

    /// The matrix literal `[[a,b],[c,d]]`.
    pub fn to_literal(&self) -> String {
        let mut s = String::from("[");
        for i in 0..self.n {
            if i > 0 {
                s.push(',');
            }
            s.push('[');
            for j in 0..self.n {
                if j > 0 {
                    s.push(',');
                }
                s.push_str(&alloc::format!("{}", self.get(i, j)));
            }
            s.push(']');
        }
        s.push(']');
        s
    }

    /// Parses `[[a,b,...],[...]]` (whitespace allowed); `[]` is the empty form.
    pub fn parse_literal(text: &str) -> Result<Self, FormError> {
        let rows = parse_int_matrix(text)?;
        Self::from_rows(&rows)
    }
}

/// Determinant of an `n x n` integer matrix (row-major) by fraction-free
/// elimination.
pub fn bareiss_det(n: usize, entries: &[BigInt]) -> BigInt {
    assert_eq!(entries.len(), n * n, "matrix shape mismatch");
    if n == 0 {
        return BigInt::one();
    }
    let mut a = entries.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    sign * a[n * n - 1].clone()
}

/// Parses a bracketed integer matrix; rows need not be square.
pub fn parse_int_matrix(text: &str) -> Result<Vec<Vec<BigInt>>, FormError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let expect = |pos: &mut usize, ch: u8, msg: &'static str| -> Result<(), FormError> {
        skip_ws(pos);
        if *pos < bytes.len() && bytes[*pos] == ch {
            *pos += 1;
            Ok(())
        } else {
            Err(FormError::Literal { at: *pos, msg })
        }
    };
    expect(&mut pos, b'[', "expected '['")?;
    let mut rows = Vec::new();
    skip_ws(&mut pos);
    if pos < bytes.len() && bytes[pos] == b']' {
        pos += 1;
    } else {
        loop {
            expect(&mut pos, b'[', "expected '[' opening a row")?;
            let mut row = Vec::new();
            loop {
                skip_ws(&mut pos);
                let start = pos;
                if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                    pos += 1;
                }
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let tok = &text[start..pos];
                let v: BigInt = tok
                    .parse()
                    .map_err(|_| FormError::Literal { at: start, msg: "expected integer" })?;
                row.push(v);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b']') => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(FormError::Literal { at: pos, msg: "expected ',' or ']'" }),
                }
            }
            rows.push(row);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b']') => {
                    pos += 1;
                    break;
                }
                _ => return Err(FormError::Literal { at: pos, msg: "expected ',' or ']'" }),
            }
        }
    }
    skip_ws(&mut pos);
    if pos != bytes.len() {
        return Err(FormError::Literal { at: pos, msg: "trailing input" });
    }
    Ok(rows)
}

impl Clone for SymmetricForm {
    fn clone(&self) -> Self {
        let out = Self::from_raw(self.n, self.entries.clone());
        if let Some(inv) = self.cache.get() {
            let _ = out.cache.set(Box::new(inv.clone()));
        }
        out
    }
}

impl PartialEq for SymmetricForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for SymmetricForm {}

impl fmt::Debug for SymmetricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricForm({})", self.to_literal())
    }
}

impl fmt::Display for SymmetricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}
