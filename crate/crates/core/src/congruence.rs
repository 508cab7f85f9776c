//! Bounded, certificate-producing congruence search.
//!
//! [`congruent`] first compares the congruence invariants; a mismatch is a
//! proof of non-congruence and is returned as a named witness. Otherwise it
//! looks for a unimodular `U` with `U^T M1 U = M2`:
//!
//! 1. bidirectional breadth-first search over elementary congruences
//!    (`b_i += ±b_j` and `b_i -> -b_i`), entries bounded by a multiple of the
//!    largest input entry;
//! 2. a unit-splitting search: the target is greedily decomposed as
//!    `<1>^p + <-1>^q + R` and the source is searched for `p + q` orthogonal
//!    unit vectors followed by a small-coefficient embedding of `R`.
//!
//! Every certificate is re-verified by exact multiplication before it is
//! returned. Exhausting the budget yields [`Verdict::Unknown`].

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::form::{bareiss_det, SymmetricForm};
use crate::imat::{
    self, complete_basis, cols_to_row_major, compose, gcd_all, unimodular_inverse, IMat,
};

/// Search limits. The defaults are the ones used by the CLI and tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Maximum total length of a move sequence found by the BFS.
    pub max_depth: usize,
    /// Entries of intermediate BFS matrices are bounded by this factor
    /// times the largest absolute entry of either input.
    pub entry_bound_factor: i64,
    /// Cap on stored BFS states (both directions together). The effective
    /// cap shrinks for large matrices so that storage stays below roughly
    /// `max_states * 16` entries.
    pub max_states: usize,
    /// Coefficient box for the unit vectors of the splitting search.
    pub split_box: i64,
    /// Largest coefficient box tried when embedding the residual block.
    pub residual_box: i64,
    /// Node cap of the splitting search.
    pub max_split_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_depth: 24,
            entry_bound_factor: 4,
            max_states: 20_000,
            split_box: 1,
            residual_box: 3,
            max_split_nodes: 20_000,
        }
    }
}

impl Budget {
    /// A budget that only runs the invariant comparison.
    pub fn invariants_only() -> Self {
        Budget { max_depth: 0, max_states: 0, max_split_nodes: 0, ..Budget::default() }
    }
}

/// Which invariant separates two forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Size,
    Rank,
    Signature,
    Determinant,
    Parity,
    SmithForm,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Witness::Size => "size",
            Witness::Rank => "rank",
            Witness::Signature => "signature",
            Witness::Determinant => "determinant",
            Witness::Parity => "parity",
            Witness::SmithForm => "smith normal form",
        })
    }
}

/// A named invariant with its two differing values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantMismatch {
    pub invariant: Witness,
    pub left: String,
    pub right: String,
}

impl fmt::Display for InvariantMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} differs ({} vs {})", self.invariant, self.left, self.right)
    }
}

/// A single elementary congruence, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ElementaryMove {
    /// `b_target += sign * b_source`.
    Slide { target: usize, source: usize, sign: i8 },
    /// `b_index -> -b_index`.
    Flip { index: usize },
}

impl ElementaryMove {
    pub fn inverse(self) -> Self {
        match self {
            ElementaryMove::Slide { target, source, sign } => {
                ElementaryMove::Slide { target, source, sign: -sign }
            }
            flip => flip,
        }
    }
}

/// How a certificate was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Identical,
    Bfs,
    UnitSplitting,
}

/// A unimodular `U` (row-major) with `U^T M1 U = M2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceCertificate {
    n: usize,
    u: Vec<BigInt>,
    method: Method,
    moves: Option<Vec<ElementaryMove>>,
}

impl CongruenceCertificate {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Row-major entries of `U`.
    pub fn matrix(&self) -> &[BigInt] {
        &self.u
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// The elementary moves taking `M1` to `M2`, when the BFS produced them.
    pub fn moves(&self) -> Option<&[ElementaryMove]> {
        self.moves.as_deref()
    }

    /// Exact check of `|det U| = 1` and `U^T M1 U = M2`.
    pub fn verify(&self, m1: &SymmetricForm, m2: &SymmetricForm) -> bool {
        m1.size() == self.n
            && m2.size() == self.n
            && bareiss_det(self.n, &self.u).abs().is_one()
            && m1.transform(&self.u) == *m2
    }

    /// `[[..],..]` literal of `U` (not symmetric in general).
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
                s.push_str(&self.u[i * self.n + j].to_string());
            }
            s.push(']');
        }
        s.push(']');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(CongruenceCertificate),
    No(InvariantMismatch),
    /// The budget was exhausted; `states` counts BFS states plus splitting
    /// nodes explored.
    Unknown { states: usize },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }
}

/// First invariant (in the order size, rank, signature, determinant,
/// parity, Smith form) on which the two forms differ.
pub fn invariant_mismatch(m1: &SymmetricForm, m2: &SymmetricForm) -> Option<InvariantMismatch> {
    let w = |invariant, left: String, right: String| Some(InvariantMismatch { invariant, left, right });
    if m1.size() != m2.size() {
        return w(Witness::Size, m1.size().to_string(), m2.size().to_string());
    }
    let (a, b) = (m1.invariants(), m2.invariants());
    if a.rank != b.rank {
        return w(Witness::Rank, a.rank.to_string(), b.rank.to_string());
    }
    if a.signature != b.signature {
        return w(Witness::Signature, a.signature.to_string(), b.signature.to_string());
    }
    if a.determinant != b.determinant {
        return w(Witness::Determinant, a.determinant.to_string(), b.determinant.to_string());
    }
    if a.parity != b.parity {
        return w(Witness::Parity, a.parity.to_string(), b.parity.to_string());
    }
    if a.smith != b.smith {
        let show = |d: &[BigInt]| {
            let parts: Vec<String> = d.iter().map(ToString::to_string).collect();
            alloc::format!("({})", parts.join(","))
        };
        return w(Witness::SmithForm, show(&a.smith), show(&b.smith));
    }
    None
}

/// Decides (within `budget`) whether `m1` and `m2` are integrally congruent.
pub fn congruent(m1: &SymmetricForm, m2: &SymmetricForm, budget: &Budget) -> Verdict {
    if let Some(w) = invariant_mismatch(m1, m2) {
        return Verdict::No(w);
    }
    let n = m1.size();
    if m1 == m2 {
        let u = IMat::identity(n).to_big();
        return Verdict::Yes(CongruenceCertificate {
            n,
            u,
            method: Method::Identical,
            moves: Some(Vec::new()),
        });
    }
    let (Some(a), Some(b)) = (m1.to_i64(), m2.to_i64()) else {
        return Verdict::Unknown { states: 0 };
    };
    let (a, b) = (IMat { n, a }, IMat { n, a: b });
    let mut explored = 0;

    let (found, states) = bfs(&a, &b, budget);
    explored += states;
    if let Some(moves) = found {
        if let Some(u) = moves_matrix(n, &moves) {
            let cert = CongruenceCertificate { n, u, method: Method::Bfs, moves: Some(moves) };
            if cert.verify(m1, m2) {
                return Verdict::Yes(cert);
            }
        }
    }

    let mut nodes = 0;
    let forward = split_certificate(&a, &b, budget, &mut nodes);
    let u = forward.or_else(|| {
        split_certificate(&b, &a, budget, &mut nodes).and_then(|u| {
            let cols: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| u[i * n + j]).collect()).collect();
            unimodular_inverse(&cols)
        })
    });
    explored += nodes;
    if let Some(u) = u {
        let cert = CongruenceCertificate {
            n,
            u: u.into_iter().map(BigInt::from).collect(),
            method: Method::UnitSplitting,
            moves: None,
        };
        if cert.verify(m1, m2) {
            return Verdict::Yes(cert);
        }
    }
    Verdict::Unknown { states: explored }
}

/// Applies one move to a Gram matrix.
pub(crate) fn apply_move(m: &IMat, mv: ElementaryMove) -> Option<IMat> {
    match mv {
        ElementaryMove::Slide { target, source, sign } => m.slide(target, source, i64::from(sign)),
        ElementaryMove::Flip { index } => Some(m.flip(index)),
    }
}

/// Product `E_1 E_2 ... E_k` of the basis changes of a move sequence.
fn moves_matrix(n: usize, moves: &[ElementaryMove]) -> Option<Vec<BigInt>> {
    // columns of the accumulated basis change
    let mut cols: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| i64::from(i == j)).collect()).collect();
    for mv in moves {
        match *mv {
            ElementaryMove::Slide { target, source, sign } => {
                let src = cols[source].clone();
                for (x, y) in cols[target].iter_mut().zip(&src) {
                    *x = x.checked_add(i64::from(sign).checked_mul(*y)?)?;
                }
            }
            ElementaryMove::Flip { index } => {
                for x in cols[index].iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    Some(cols_to_row_major(&cols).into_iter().map(BigInt::from).collect())
}

fn generators(n: usize) -> Vec<ElementaryMove> {
    let mut out = Vec::with_capacity(2 * n * n);
    for target in 0..n {
        for source in 0..n {
            if source != target {
                out.push(ElementaryMove::Slide { target, source, sign: 1 });
                out.push(ElementaryMove::Slide { target, source, sign: -1 });
            }
        }
    }
    out.extend((0..n).map(|index| ElementaryMove::Flip { index }));
    out
}

struct Node {
    parent: usize,
    mv: Option<ElementaryMove>,
}

struct Side {
    nodes: Vec<Node>,
    seen: BTreeMap<Vec<i64>, usize>,
    frontier: Vec<(usize, IMat)>,
    depth: usize,
}

impl Side {
    fn new(start: &IMat) -> Self {
        let mut seen = BTreeMap::new();
        seen.insert(start.a.clone(), 0);
        Side {
            nodes: vec![Node { parent: usize::MAX, mv: None }],
            seen,
            frontier: vec![(0, start.clone())],
            depth: 0,
        }
    }

    fn path(&self, mut idx: usize) -> Vec<ElementaryMove> {
        let mut out = Vec::new();
        while let Some(mv) = self.nodes[idx].mv {
            out.push(mv);
            idx = self.nodes[idx].parent;
        }
        out.reverse();
        out
    }
}

/// Bidirectional BFS. Returns the move sequence from `a` to `b` (if found)
/// and the number of stored states.
fn bfs(a: &IMat, b: &IMat, budget: &Budget) -> (Option<Vec<ElementaryMove>>, usize) {
    let n = a.n;
    let bound = budget.entry_bound_factor.saturating_mul(a.max_abs().max(b.max_abs()).max(1));
    let cap = budget.max_states.min(budget.max_states.saturating_mul(16) / (n * n).max(16));
    let gens = generators(n);
    let mut sides = [Side::new(a), Side::new(b)];
    let total = |s: &[Side; 2]| s[0].nodes.len() + s[1].nodes.len();

    while sides[0].depth + sides[1].depth < budget.max_depth {
        if sides[0].frontier.is_empty() || sides[1].frontier.is_empty() {
            break;
        }
        // expand the smaller frontier; ties go to the forward side
        let k = usize::from(sides[1].frontier.len() < sides[0].frontier.len());
        let frontier = core::mem::take(&mut sides[k].frontier);
        let mut next = Vec::new();
        for (idx, m) in frontier {
            for &mv in &gens {
                let Some(child) = apply_move(&m, mv) else { continue };
                if child.max_abs() > bound || sides[k].seen.contains_key(&child.a) {
                    continue;
                }
                let id = sides[k].nodes.len();
                sides[k].nodes.push(Node { parent: idx, mv: Some(mv) });
                if let Some(&other) = sides[1 - k].seen.get(&child.a) {
                    let (fwd, bwd) = if k == 0 { (id, other) } else { (other, id) };
                    let mut moves = sides[0].path(fwd);
                    moves.extend(sides[1].path(bwd).into_iter().rev().map(ElementaryMove::inverse));
                    return (Some(moves), total(&sides));
                }
                sides[k].seen.insert(child.a.clone(), id);
                next.push((id, child));
                if total(&sides) >= cap {
                    return (None, total(&sides));
                }
            }
        }
        sides[k].frontier = next;
        sides[k].depth += 1;
    }
    (None, total(&sides))
}

// ---------------------------------------------------------------------------
// unit splitting

fn cost(g: &IMat) -> i64 {
    g.a.iter().map(|x| x.saturating_abs()).fold(0i64, i64::saturating_add)
}

/// Greedy basis reduction: repeatedly applies the slide that lowers the sum
/// of absolute entries the most. Returns the new basis (columns) and Gram
/// matrix.
fn reduce(g: &IMat) -> Option<(Vec<Vec<i64>>, IMat)> {
    let n = g.n;
    let mut basis: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| i64::from(i == j)).collect()).collect();
    let mut cur = g.clone();
    loop {
        let mut best: Option<(i64, usize, usize, i64)> = None;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for s in [1i64, -1] {
                    let gii = cur.at(i, i) + 2 * s * cur.at(i, j) + cur.at(j, j);
                    let mut d = gii.abs() - cur.at(i, i).abs();
                    for k in (0..n).filter(|&k| k != i) {
                        d += 2 * ((cur.at(i, k) + s * cur.at(j, k)).abs() - cur.at(i, k).abs());
                    }
                    if d < 0 && best.map_or(true, |(bd, ..)| d < bd) {
                        best = Some((d, i, j, s));
                    }
                }
            }
        }
        let Some((_, i, j, s)) = best else { break };
        cur = cur.slide(i, j, s)?;
        let bj = basis[j].clone();
        for (x, y) in basis[i].iter_mut().zip(&bj) {
            *x = x.checked_add(s * y)?;
        }
    }
    debug_assert!(cost(&cur) <= cost(g));
    Some((basis, cur))
}

/// Nonzero vectors of `[-b, b]^m` with first nonzero coordinate positive,
/// ordered by l1-norm and then lexicographically. For large `m` only
/// vectors with at most three nonzero coordinates are produced.
fn small_vectors(m: usize, b: i64) -> Vec<Vec<i64>> {
    let width = (2 * b + 1) as usize;
    let full = (width as f64).powi(m as i32) <= 40_000.0;
    let max_support = if full { m } else { 3 };
    let mut out = Vec::new();
    let mut support: Vec<usize> = Vec::new();
    collect_supports(m, max_support, 0, &mut support, &mut |supp| {
        let k = supp.len();
        let nonzero: Vec<i64> = (-b..=b).filter(|&x| x != 0).collect();
        let mut idx = vec![0usize; k];
        loop {
            if nonzero[idx[0]] > 0 {
                let mut v = vec![0i64; m];
                for (p, &s) in supp.iter().enumerate() {
                    v[s] = nonzero[idx[p]];
                }
                out.push(v);
            }
            let mut p = k;
            loop {
                if p == 0 {
                    return;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < nonzero.len() {
                    break;
                }
                idx[p] = 0;
            }
        }
    });
    out.sort_by(|u, v| {
        let l1 = |w: &[i64]| w.iter().map(|x| x.abs()).sum::<i64>();
        l1(u).cmp(&l1(v)).then_with(|| u.cmp(v))
    });
    out
}

fn collect_supports(
    m: usize,
    max: usize,
    start: usize,
    cur: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if !cur.is_empty() {
        f(cur);
    }
    if cur.len() == max {
        return;
    }
    for i in start..m {
        cur.push(i);
        collect_supports(m, max, i + 1, cur, f);
        cur.pop();
    }
}

/// Basis of the orthogonal complement of the unit vector `u` (with
/// `u.u = ±1`), as columns in the coordinates of `g`.
fn split_unit(g: &IMat, u: &[i64]) -> Option<Vec<Vec<i64>>> {
    let e = g.form(u, u)?;
    let gu = g.apply(u)?;
    let rest = complete_basis(u)?;
    rest[1..]
        .iter()
        .map(|b| {
            let c = imat::dot(b, &gu)?.checked_mul(e)?;
            b.iter().zip(u).map(|(&x, &y)| x.checked_sub(c.checked_mul(y)?)).collect()
        })
        .collect()
}

fn inertia(g: &IMat) -> (usize, usize) {
    let f = SymmetricForm::from_entries(g.n, g.to_big()).expect("search matrices are symmetric");
    let inv = f.invariants();
    (inv.positive, inv.negative)
}

struct Decomposition {
    plus: usize,
    minus: usize,
    residual: IMat,
    /// `[plus units, minus units, residual basis]` in the original coordinates.
    basis: Vec<Vec<i64>>,
}

/// Splits off unit vectors greedily: `V^T G V = <1>^p + <-1>^q + R`.
fn decompose(g: &IMat, b: i64) -> Option<Decomposition> {
    let n = g.n;
    let mut basis: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| i64::from(i == j)).collect()).collect();
    let mut cur = g.clone();
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    while cur.n > 0 {
        let (t, reduced) = reduce(&cur)?;
        basis = compose(&basis, &t)?;
        cur = reduced;
        // never leave a definite complement behind if an alternative exists
        let (np, nn) = inertia(&cur);
        let avoid = if nn == 1 && np > 1 {
            -1
        } else if np == 1 && nn > 1 {
            1
        } else {
            0
        };
        let m = cur.n;
        let units = (0..m).map(|i| (0..m).map(|k| i64::from(k == i)).collect::<Vec<_>>());
        let mut found = None;
        let mut fallback = None;
        for v in units.chain(small_vectors(m, b)) {
            let e = cur.form(&v, &v)?;
            if e.abs() != 1 || gcd_all(&v) != 1 {
                continue;
            }
            if e != avoid {
                found = Some(v);
                break;
            }
            if fallback.is_none() {
                fallback = Some(v);
            }
        }
        let Some(v) = found.or(fallback) else { break };
        let e = cur.form(&v, &v)?;
        let amb = compose(&basis, core::slice::from_ref(&v))?.pop()?;
        if e == 1 { plus.push(amb) } else { minus.push(amb) }
        let w = split_unit(&cur, &v)?;
        basis = compose(&basis, &w)?;
        cur = cur.gram(&w)?;
    }
    let (p, q) = (plus.len(), minus.len());
    let mut all = plus;
    all.extend(minus);
    all.extend(basis);
    Some(Decomposition { plus: p, minus: q, residual: cur, basis: all })
}

/// Columns `W` (in the coordinates of `g`) with all coordinates in
/// `[-b, b]` and `W^T g W = r`.
fn box_embedding(g: &IMat, r: &IMat, b: i64) -> Option<Vec<Vec<i64>>> {
    let m = g.n;
    if m == 0 {
        return Some(Vec::new());
    }
    let width = (2 * b + 1) as usize;
    if (width as f64).powi(m as i32) > 200_000.0 {
        return None;
    }
    let mut all = Vec::new();
    let mut v = vec![-b; m];
    loop {
        all.push(v.clone());
        let mut p = m;
        loop {
            if p == 0 {
                break;
            }
            p -= 1;
            if v[p] < b {
                v[p] += 1;
                break;
            }
            v[p] = -b;
            if p == 0 {
                p = usize::MAX;
                break;
            }
        }
        if p == usize::MAX {
            break;
        }
    }
    let norms: Vec<Option<(i64, Vec<i64>)>> =
        all.iter().map(|v| Some((g.form(v, v)?, g.apply(v)?))).collect();
    let mut sol: Vec<usize> = Vec::with_capacity(m);
    fn rec(
        k: usize,
        all: &[Vec<i64>],
        norms: &[Option<(i64, Vec<i64>)>],
        r: &IMat,
        sol: &mut Vec<usize>,
    ) -> bool {
        if k == r.n {
            return true;
        }
        for (idx, entry) in norms.iter().enumerate() {
            let Some((nv, gv)) = entry else { continue };
            if *nv != r.at(k, k) {
                continue;
            }
            let ok = sol.iter().enumerate().all(|(j, &s)| imat::dot(&all[s], gv) == Some(r.at(k, j)));
            if ok {
                sol.push(idx);
                if rec(k + 1, all, norms, r, sol) {
                    return true;
                }
                sol.pop();
            }
        }
        false
    }
    rec(0, &all, &norms, r, &mut sol).then(|| sol.iter().map(|&i| all[i].clone()).collect())
}

/// Columns `W` of `g`-coordinates with `W^T g W = <1>^plus + <-1>^minus + r`.
fn embed(
    g: &IMat,
    plus: usize,
    minus: usize,
    r: &IMat,
    budget: &Budget,
    nodes: &mut usize,
) -> Option<Vec<Vec<i64>>> {
    *nodes += 1;
    if *nodes > budget.max_split_nodes {
        return None;
    }
    if plus == 0 && minus == 0 {
        return (1..=budget.residual_box).find_map(|b| box_embedding(g, r, b));
    }
    let (t, reduced) = reduce(g)?;
    for v in small_vectors(reduced.n, budget.split_box) {
        let Some(nv) = reduced.form(&v, &v) else { continue };
        if !((nv == 1 && plus > 0) || (nv == -1 && minus > 0)) || gcd_all(&v) != 1 {
            continue;
        }
        let Some(w) = split_unit(&reduced, &v) else { continue };
        let Some(gc) = reduced.gram(&w) else { continue };
        let (p2, q2) = if nv == 1 { (plus - 1, minus) } else { (plus, minus - 1) };
        if let Some(sub) = embed(&gc, p2, q2, r, budget, nodes) {
            let sub = compose(&w, &sub)?;
            let mut cols = Vec::with_capacity(sub.len() + 1);
            if nv == 1 {
                cols.push(v);
                cols.extend(sub);
            } else {
                cols.extend_from_slice(&sub[..plus]);
                cols.push(v);
                cols.extend_from_slice(&sub[plus..]);
            }
            return compose(&t, &cols);
        }
        if *nodes > budget.max_split_nodes {
            return None;
        }
    }
    None
}

/// Row-major `U` with `U^T src U = tgt`, via the splitting search.
fn split_certificate(src: &IMat, tgt: &IMat, budget: &Budget, nodes: &mut usize) -> Option<Vec<i64>> {
    if budget.max_split_nodes == 0 {
        return None;
    }
    let d = decompose(tgt, budget.split_box)?;
    let w = embed(src, d.plus, d.minus, &d.residual, budget, nodes)?;
    let v_inv = unimodular_inverse(&d.basis)?;
    imat::matmul(src.n, &cols_to_row_major(&w), &v_inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> SymmetricForm {
        SymmetricForm::hyperbolic()
    }

    #[test]
    fn cp2_trade_is_found_by_bfs() {
        let a = SymmetricForm::diagonal([1, 1, -1]);
        let b = h().direct_sum(&SymmetricForm::diagonal([1]));
        match congruent(&a, &b, &Budget::default()) {
            Verdict::Yes(c) => {
                assert!(c.verify(&a, &b));
                assert_eq!(c.method(), Method::Bfs);
                assert!(c.moves().is_some());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parity_witness() {
        let a = SymmetricForm::diagonal([2]).direct_sum(&h());
        let b = SymmetricForm::diagonal([-2, 1, 1]);
        match congruent(&a, &b, &Budget::default()) {
            Verdict::No(w) => {
                assert_eq!(w.invariant, Witness::Parity);
                assert_eq!((w.left.as_str(), w.right.as_str()), ("even", "odd"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn odd_indefinite_pair() {
        let a = SymmetricForm::diagonal([2, 1, -1]);
        let b = SymmetricForm::diagonal([-2, 1, 1]);
        let v = congruent(&a, &b, &Budget::default());
        let Verdict::Yes(c) = v else { panic!("{v:?}") };
        assert!(c.verify(&a, &b));
    }

    #[test]
    fn size_and_signature_witnesses() {
        let a = SymmetricForm::diagonal([1]);
        let b = SymmetricForm::diagonal([1, 1]);
        let Verdict::No(w) = congruent(&a, &b, &Budget::default()) else { panic!() };
        assert_eq!(w.invariant, Witness::Size);
        let c = SymmetricForm::diagonal([-1, -1]);
        let Verdict::No(w) = congruent(&b, &c, &Budget::default()) else { panic!() };
        assert_eq!(w.invariant, Witness::Signature);
    }

    #[test]
    fn identical_forms() {
        let a = SymmetricForm::from_i64([[2, 1], [1, 2]]);
        let Verdict::Yes(c) = congruent(&a, &a, &Budget::default()) else { panic!() };
        assert_eq!(c.method(), Method::Identical);
        assert_eq!(c.to_literal(), "[[1,0],[0,1]]");
    }

    #[test]
    fn splitting_handles_larger_blocks() {
        // <-3> + I_2 against the A_2 chain plus <-1>
        let a = SymmetricForm::from_i64([[2, 1, 0], [1, 2, 0], [0, 0, -1]]);
        let b = SymmetricForm::diagonal([-3, 1, 1]);
        let budget = Budget { max_states: 0, ..Budget::default() };
        let Verdict::Yes(c) = congruent(&a, &b, &budget) else { panic!() };
        assert_eq!(c.method(), Method::UnitSplitting);
        assert!(c.verify(&a, &b));
    }

    #[test]
    fn small_vectors_order() {
        let v = small_vectors(2, 1);
        assert_eq!(v, vec![vec![0, 1], vec![1, 0], vec![1, -1], vec![1, 1]]);
    }

    #[test]
    fn invariants_only_budget_is_unknown() {
        let a = SymmetricForm::diagonal([2, 1, -1]);
        let b = SymmetricForm::diagonal([-2, 1, 1]);
        assert!(matches!(congruent(&a, &b, &Budget::invariants_only()), Verdict::Unknown { .. }));
    }
}
