// Small dense i64 matrices for the search routines. Every arithmetic step
// is checked; `None` means an intermediate value left the i64 range and the
// caller abandons that branch.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

/// Square matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct IMat {
    pub n: usize,
    pub a: Vec<i64>,
}

impl IMat {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        IMat { n, a }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn max_abs(&self) -> i64 {
        self.a.iter().map(|v| v.saturating_abs()).max().unwrap_or(0)
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        self.a.iter().map(|&v| BigInt::from(v)).collect()
    }

    /// Gram matrix `C^T G C` for basis columns `cols` (each of length n).
    pub fn gram(&self, cols: &[Vec<i64>]) -> Option<IMat> {
        let m = cols.len();
        let gc: Vec<Vec<i64>> = cols.iter().map(|c| self.apply(c)).collect::<Option<_>>()?;
        let mut a = vec![0; m * m];
        for i in 0..m {
            for j in i..m {
                let v = dot(&cols[i], &gc[j])?;
                a[i * m + j] = v;
                a[j * m + i] = v;
            }
        }
        Some(IMat { n: m, a })
    }

    /// `G v`.
    pub fn apply(&self, v: &[i64]) -> Option<Vec<i64>> {
        let n = self.n;
        let mut out = vec![0i64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc: i64 = 0;
            for (j, &x) in v.iter().enumerate() {
                if x != 0 {
                    acc = acc.checked_add(self.a[i * n + j].checked_mul(x)?)?;
                }
            }
            *o = acc;
        }
        Some(out)
    }

    pub fn form(&self, u: &[i64], v: &[i64]) -> Option<i64> {
        dot(u, &self.apply(v)?)
    }

    /// Elementary congruence: basis vector `i` becomes `b_i + s b_j`.
    pub fn slide(&self, i: usize, j: usize, s: i64) -> Option<IMat> {
        let n = self.n;
        let mut out = self.clone();
        let gii = self
            .at(i, i)
            .checked_add(self.at(i, j).checked_mul(2 * s)?)?
            .checked_add(self.at(j, j))?;
        for k in 0..n {
            if k == i {
                continue;
            }
            let v = self.at(i, k).checked_add(self.at(j, k).checked_mul(s)?)?;
            out.a[i * n + k] = v;
            out.a[k * n + i] = v;
        }
        out.a[i * n + i] = gii;
        Some(out)
    }

    /// Basis vector `i` negated.
    pub fn flip(&self, i: usize) -> IMat {
        let n = self.n;
        let mut out = self.clone();
        for k in 0..n {
            if k != i {
                out.a[i * n + k] = -out.a[i * n + k];
                out.a[k * n + i] = -out.a[k * n + i];
            }
        }
        out
    }
}

pub(crate) fn dot(u: &[i64], v: &[i64]) -> Option<i64> {
    let mut acc: i64 = 0;
    for (&x, &y) in u.iter().zip(v) {
        if x != 0 && y != 0 {
            acc = acc.checked_add(x.checked_mul(y)?)?;
        }
    }
    Some(acc)
}

pub(crate) fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Expresses the columns `sub` (coordinates relative to `basis`) in the
/// ambient coordinates of `basis`.
pub(crate) fn compose(basis: &[Vec<i64>], sub: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let dim = basis.first().map_or(0, Vec::len);
    sub.iter()
        .map(|s| {
            let mut out = vec![0i64; dim];
            for (coef, b) in s.iter().zip(basis) {
                if *coef == 0 {
                    continue;
                }
                for (o, &x) in out.iter_mut().zip(b) {
                    *o = o.checked_add(coef.checked_mul(x)?)?;
                }
            }
            Some(out)
        })
        .collect()
}

/// Unimodular basis whose first vector is the primitive vector `u`.
pub(crate) fn complete_basis(u: &[i64]) -> Option<Vec<Vec<i64>>> {
    let n = u.len();
    let mut v = u.to_vec();
    // columns of C, kept so that C v = u
    let mut c: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            e
        })
        .collect();
    loop {
        let nz: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| (v[i].unsigned_abs(), i))?;
        for &i in &nz {
            if i == p {
                continue;
            }
            let q = Integer::div_floor(&v[i], &v[p]);
            v[i] -= q * v[p];
            // v <- E v with E = I - q e_i e_p^T, so C <- C E^{-1}
            let ci = c[i].clone();
            for (x, y) in c[p].iter_mut().zip(&ci) {
                *x = x.checked_add(q.checked_mul(*y)?)?;
            }
        }
    }
    let p = (0..n).find(|&i| v[i] != 0)?;
    if v[p].abs() != 1 {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    out.push(u.to_vec());
    out.extend((0..n).filter(|&j| j != p).map(|j| c[j].clone()));
    Some(out)
}

/// Inverse of a unimodular matrix given by its columns, as row-major i64.
pub(crate) fn unimodular_inverse(cols: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = cols.len();
    // row-major copy of the matrix whose columns are `cols`, augmented with I
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut row: Vec<i128> = cols.iter().map(|c| c[i] as i128).collect();
            row.extend((0..n).map(|j| i128::from(i == j)));
            row
        })
        .collect();
    // integer row reduction to the identity (the matrix is unimodular)
    for col in 0..n {
        loop {
            let piv = (col..n).filter(|&r| m[r][col] != 0).min_by_key(|&r| m[r][col].unsigned_abs())?;
            m.swap(col, piv);
            let mut done = true;
            for r in col + 1..n {
                if m[r][col] != 0 {
                    let q = Integer::div_floor(&m[r][col], &m[col][col]);
                    for k in 0..2 * n {
                        let d = q.checked_mul(m[col][k])?;
                        m[r][k] = m[r][k].checked_sub(d)?;
                    }
                    if m[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[col][col].abs() != 1 {
            return None;
        }
        if m[col][col] < 0 {
            for k in 0..2 * n {
                m[col][k] = -m[col][k];
            }
        }
    }
    for col in (0..n).rev() {
        for r in 0..col {
            let q = m[r][col];
            if q != 0 {
                for k in 0..2 * n {
                    let d = q.checked_mul(m[col][k])?;
                    m[r][k] = m[r][k].checked_sub(d)?;
                }
            }
        }
    }
    let mut out = Vec::with_capacity(n * n);
    for row in &m {
        for &x in &row[n..] {
            out.push(i64::try_from(x).ok()?);
        }
    }
    Some(out)
}

/// Row-major product of two square i64 matrices.
pub(crate) fn matmul(n: usize, a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                let y = b[k * n + j];
                if y != 0 {
                    out[i * n + j] = out[i * n + j].checked_add(x.checked_mul(y)?)?;
                }
            }
        }
    }
    Some(out)
}

/// Columns (as vectors) to a row-major matrix.
pub(crate) fn cols_to_row_major(cols: &[Vec<i64>]) -> Vec<i64> {
    let n = cols.len();
    let mut out = vec![0; n * n];
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            out[i * n + j] = x;
        }
    }
    out
}
