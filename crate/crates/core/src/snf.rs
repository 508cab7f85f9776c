//! Smith normal form over the integers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Diagonal of the Smith normal form of a `rows x cols` matrix given in
/// row-major order.
///
/// The result has length `min(rows, cols)`, is non-negative and forms a
/// divisibility chain `d_1 | d_2 | ...` (zeros last).
pub fn smith_diagonal(rows: usize, cols: usize, entries: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(entries.len(), rows * cols, "matrix shape mismatch");
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| entries[r * cols..(r + 1) * cols].to_vec())
        .collect();
    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);

    for t in 0..steps {
        // smallest nonzero entry of the remaining block becomes the pivot
        let Some((pr, pc)) = min_nonzero(&a, t) else {
            diag.extend(core::iter::repeat_with(BigInt::zero).take(steps - t));
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let v = &q * &a[t][c];
                    a[r][c] -= v;
                }
                if !a[r][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for r in t..rows {
                    let v = &q * &a[r][t];
                    a[r][c] -= v;
                }
                if !a[t][c].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pr, pc) = min_nonzero_cross(&a, t);
                a.swap(t, pr);
                for row in a.iter_mut() {
                    row.swap(t, pc);
                }
                continue;
            }
            // divisibility: fold any offending row into row t and retry
            let offending = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !a[r][c].is_multiple_of(&a[t][t])));
            match offending {
                Some(r) => {
                    for c in t..cols {
                        let v = a[r][c].clone();
                        a[t][c] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn min_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((br, bc)) => v.abs() < a[br][bc].abs(),
            };
            if better {
                best = Some((r, c));
            }
        }
    }
    best
}

// smallest nonzero entry in row t / column t (at least one exists when called)
fn min_nonzero_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs = a[t][t].abs();
    for r in t..a.len() {
        let v = a[r][t].abs();
        if !v.is_zero() && (best_abs.is_zero() || v < best_abs) {
            best = (r, t);
            best_abs = v;
        }
    }
    for c in t..a[t].len() {
        let v = a[t][c].abs();
        if !v.is_zero() && (best_abs.is_zero() || v < best_abs) {
            best = (t, c);
            best_abs = v;
        }
    }
    best
}

/// Nontrivial invariant factors (entries different from 1) of a Smith
/// diagonal; this is the finite abelian group `Z/d_1 + Z/d_2 + ...` when no
/// zero is present.
pub fn torsion_factors(diag: &[BigInt]) -> Vec<BigInt> {
    diag.iter()
        .filter(|d| *d != &BigInt::from(1))
        .cloned()
        .collect()
}
