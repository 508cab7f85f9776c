//! Strategies and slow reference implementations shared by the integration
//! tests. The oracles here deliberately use different algorithms from the
//! library: cofactor expansion for determinants, Jacobi rotations for
//! signatures and gcds of minors for Smith forms.

#![allow(dead_code)]

use immcalc_core::plumbing::{Family, PlumbingGraph};
use immcalc_core::{Atom, FourManifoldExpr, SymmetricForm};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

pub type Mat = Vec<Vec<i64>>;

pub fn to_form(m: &Mat) -> SymmetricForm {
    SymmetricForm::from_rows(m).expect("symmetric")
}

pub fn row_major(m: &Mat) -> Vec<BigInt> {
    m.iter().flatten().map(|&x| BigInt::from(x)).collect()
}

/// Symmetric matrices of size `1..=max_n` with entries in `-bound..=bound`.
pub fn sym_matrix(max_n: usize, bound: i64) -> impl Strategy<Value = Mat> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |upper| {
            let mut m = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i..n {
                    let v = it.next().unwrap();
                    m[i][j] = v;
                    m[j][i] = v;
                }
            }
            m
        })
    })
}

/// Elementary column operation on a basis matrix.
#[derive(Debug, Clone)]
pub enum ColOp {
    Add { target: usize, source: usize, sign: i64 },
    Negate(usize),
    Swap(usize, usize),
}

pub fn col_ops(n: usize, len: usize) -> impl Strategy<Value = Vec<ColOp>> {
    let op = prop_oneof![
        4 => (0..n, 0..n, prop_oneof![Just(1i64), Just(-1i64)])
            .prop_map(|(target, source, sign)| ColOp::Add { target, source, sign }),
        1 => (0..n).prop_map(ColOp::Negate),
        1 => (0..n, 0..n).prop_map(|(a, b)| ColOp::Swap(a, b)),
    ];
    proptest::collection::vec(op, 0..=len)
}

/// Row-major unimodular matrix built from column operations on `I`.
pub fn unimodular(n: usize, ops: &[ColOp]) -> Mat {
    let mut u: Mat = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for op in ops {
        match *op {
            ColOp::Add { target, source, sign } if target != source => {
                for row in u.iter_mut() {
                    row[target] += sign * row[source];
                }
            }
            ColOp::Add { .. } => {}
            ColOp::Negate(c) => u.iter_mut().for_each(|row| row[c] = -row[c]),
            ColOp::Swap(a, b) => u.iter_mut().for_each(|row| row.swap(a, b)),
        }
    }
    u
}

/// A symmetric matrix paired with a unimodular basis change of the same size.
pub fn conjugation_pair(max_n: usize, bound: i64, ops: usize) -> impl Strategy<Value = (Mat, Mat)> {
    sym_matrix(max_n, bound).prop_flat_map(move |m| {
        let n = m.len();
        col_ops(n, ops).prop_map(move |o| (m.clone(), unimodular(n, &o)))
    })
}

/// `U^T M U` computed naively.
pub fn congruent_by(m: &Mat, u: &Mat) -> Mat {
    let n = m.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for k in 0..n {
                for l in 0..n {
                    s += u[k][i] * m[k][l] * u[l][j];
                }
            }
            out[i][j] = s;
        }
    }
    out
}

/// Cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut det = 0;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect()).collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        det += sign * m[0][c] * laplace_det(&minor);
    }
    det
}

pub fn det_i64(m: &Mat) -> i128 {
    let w: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| i128::from(v)).collect()).collect();
    laplace_det(&w)
}

/// Numbers of positive and negative eigenvalues via cyclic Jacobi rotations.
pub fn jacobi_inertia(m: &Mat) -> (usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-22 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let scale = m.iter().flatten().map(|v| v.abs()).max().unwrap_or(1).max(1) as f64;
    let eps = 1e-7 * scale;
    let pos = (0..n).filter(|&i| a[i][i] > eps).count();
    let neg = (0..n).filter(|&i| a[i][i] < -eps).count();
    (pos, neg)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in subsets(n, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                let mut s = vec![first];
                s.extend(rest);
                out.push(s);
            }
        }
    }
    out
}

/// Smith diagonal `s_1 | s_2 | ... | s_n` from determinantal divisors
/// `d_k = gcd` of all `k x k` minors; trailing entries are 0 past the rank.
pub fn minors_smith(m: &Mat) -> Vec<i128> {
    let n = m.len();
    let mut d_prev: i128 = 1;
    let mut out = Vec::new();
    for k in 1..=n {
        let mut g: i128 = 0;
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let sub: Vec<Vec<i128>> =
                    rows.iter().map(|&r| cols.iter().map(|&c| i128::from(m[r][c])).collect()).collect();
                g = g.gcd(&laplace_det(&sub));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat_n(0, n - k + 1));
            return out;
        }
        out.push(g / d_prev);
        d_prev = g;
    }
    out
}

pub fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        (1usize..7, -4i64..5).prop_map(|(k, w)| Atom::plumbing(Family::A, k, w).unwrap()),
        (3usize..8, -4i64..5).prop_map(|(k, w)| Atom::plumbing(Family::D, k, w).unwrap()),
        (-9i64..10).prop_map(Atom::DiskBundle),
        (1u64..9).prop_map(Atom::EStar),
        Just(Atom::SxS),
        Just(Atom::SxtS),
        Just(Atom::Cp2),
        Just(Atom::Cp2Bar),
        Just(Atom::D4),
        graph().prop_map(Atom::Plumbing),
    ]
}

/// Random trees with scattered ids and per-vertex weights.
pub fn graph() -> impl Strategy<Value = PlumbingGraph> {
    (1usize..6).prop_flat_map(|n| {
        (
            proptest::collection::vec(-5i64..6, n),
            proptest::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1)),
            1u32..20,
        )
            .prop_map(move |(weights, parents, offset)| {
                let ids: Vec<u32> = (0..n as u32).map(|i| offset + 3 * i).collect();
                let vertices = ids.iter().copied().zip(weights).collect();
                let edges = parents.iter().enumerate().map(|(i, p)| (ids[p.index(i + 1)], ids[i + 1])).collect();
                PlumbingGraph::new(vertices, edges).unwrap()
            })
    })
}

pub fn expr() -> impl Strategy<Value = FourManifoldExpr> {
    proptest::collection::vec(atom(), 1..6).prop_map(|atoms| {
        let mut it = atoms.into_iter();
        let mut e = FourManifoldExpr::atom(it.next().unwrap());
        for a in it {
            e.push(a, 1);
        }
        e
    })
}
