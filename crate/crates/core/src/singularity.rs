//! Local model of the `Z_2` branched cover `(z, w) -> (z^2, w)`.
//!
//! The first coordinate is the identity, so everything happens in the
//! perturbed map `z -> z^2 + rho(|z|^2) z` of the unit disk. A rank-2 point
//! of the 4-dimensional model is a point where this 2x2 Jacobian vanishes.
//! The sweep below checks numerically that it never does; the symbolic check
//! replays the elimination that rules it out exactly.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use thiserror::Error;

/// Shape of the smooth transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Built from `exp(-1/s)`.
    Exp,
    /// Built from `exp(-1/s^2)`.
    ExpSquared,
}

impl Profile {
    pub const ALL: [Profile; 2] = [Profile::Exp, Profile::ExpSquared];

    fn psi(self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        match self {
            Profile::Exp => libm::exp(-1.0 / s),
            Profile::ExpSquared => libm::exp(-1.0 / (s * s)),
        }
    }

    fn dpsi(self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        match self {
            Profile::Exp => self.psi(s) / (s * s),
            Profile::ExpSquared => 2.0 * self.psi(s) / (s * s * s),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Exp => "exp(-1/s)",
            Profile::ExpSquared => "exp(-1/s^2)",
        })
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum BumpError {
    #[error("cutoff c must satisfy 0 < c < 1/2")]
    CutoffOutOfRange,
}

/// `rho: [0,1] -> [0,1]` with `rho = 1` on `[0,c]`, `rho = 0` on `[1/2,1]`
/// and `rho' < 0` in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpFunction {
    c: Ratio<i64>,
    cf: f64,
    profile: Profile,
}

impl BumpFunction {
    pub fn new(c: Ratio<i64>, profile: Profile) -> Result<Self, BumpError> {
        if c <= Ratio::from_integer(0) || c >= Ratio::new(1, 2) {
            return Err(BumpError::CutoffOutOfRange);
        }
        let cf = *c.numer() as f64 / *c.denom() as f64;
        Ok(BumpFunction { c, cf, profile })
    }

    pub fn c(&self) -> Ratio<i64> {
        self.c
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    fn s(&self, t: f64) -> f64 {
        (t - self.cf) / (0.5 - self.cf)
    }

    pub fn rho(&self, t: f64) -> f64 {
        let s = self.s(t);
        if s <= 0.0 {
            return 1.0;
        }
        if s >= 1.0 {
            return 0.0;
        }
        let (a, b) = (self.profile.psi(1.0 - s), self.profile.psi(s));
        a / (a + b)
    }

    /// `d rho / dt`.
    pub fn rho_prime(&self, t: f64) -> f64 {
        let s = self.s(t);
        if s <= 0.0 || s >= 1.0 {
            return 0.0;
        }
        let p = self.profile;
        let (a, b) = (p.psi(1.0 - s), p.psi(s));
        let (da, db) = (-p.dpsi(1.0 - s), p.dpsi(s));
        let d = a + b;
        (da * b - a * db) / (d * d) / (0.5 - self.cf)
    }
}

/// `(x^2 - y^2 + rho x, 2xy + rho y)` with `rho = rho(x^2 + y^2)`.
pub fn phi_tilde(x: f64, y: f64, bump: &BumpFunction) -> (f64, f64) {
    let r = bump.rho(x * x + y * y);
    (x * x - y * y + r * x, 2.0 * x * y + r * y)
}

/// Closed-form Jacobian of [`phi_tilde`], row-major.
pub fn jacobian_entries(x: f64, y: f64, bump: &BumpFunction) -> [[f64; 2]; 2] {
    let t = x * x + y * y;
    let (r, p) = (bump.rho(t), bump.rho_prime(t));
    [
        [2.0 * p * x * x + r + 2.0 * x, 2.0 * p * x * y - 2.0 * y],
        [2.0 * p * x * y + 2.0 * y, 2.0 * p * y * y + r + 2.0 * x],
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub ok: bool,
    /// Minimum over the grid of the largest absolute Jacobian entry.
    pub min_entry_max: f64,
    pub cells_checked: u64,
    /// Centre of the cell attaining the minimum, when it is below the margin.
    pub offending_cell: Option<(f64, f64)>,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SweepError {
    #[error("grid must be at least 64, got {0}")]
    GridTooCoarse(usize),
    #[error("margin must be positive")]
    NonPositiveMargin,
}

/// Sweeps cell centres of a `grid x grid` subdivision of `[-1,1]^2` that
/// lie in the unit disk. Cells are visited in row-major order so the
/// reported minimum is deterministic.
pub fn verify_no_rank2(grid: usize, bump: &BumpFunction, margin: f64) -> Result<SweepReport, SweepError> {
    if grid < 64 {
        return Err(SweepError::GridTooCoarse(grid));
    }
    if !(margin > 0.0) {
        return Err(SweepError::NonPositiveMargin);
    }
    let h = 2.0 / grid as f64;
    let mut min = f64::INFINITY;
    let mut at = (0.0, 0.0);
    let mut cells = 0;
    for i in 0..grid {
        let x = -1.0 + (i as f64 + 0.5) * h;
        for j in 0..grid {
            let y = -1.0 + (j as f64 + 0.5) * h;
            if x * x + y * y > 1.0 {
                continue;
            }
            cells += 1;
            let m = jacobian_entries(x, y, bump).iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
            if m < min {
                min = m;
                at = (x, y);
            }
        }
    }
    let ok = min >= margin;
    Ok(SweepReport { ok, min_entry_max: min, cells_checked: cells, offending_cell: (!ok).then_some(at) })
}

/// Polynomial in `x, y, P, R` with integer coefficients, where `P` and `R`
/// stand for `rho'` and `rho` at `x^2 + y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(BTreeMap<[u8; 4], i64>);

const VARS: [&str; 4] = ["x", "y", "P", "R"];

impl Poly {
    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Poly(BTreeMap::from([(e, 1)]))
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Poly::default();
        p.add_term([0; 4], c);
        p
    }

    fn add_term(&mut self, e: [u8; 4], c: i64) {
        let v = self.0.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.0 {
            r.add_term(*e, *c);
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Poly {
        let mut r = Poly::default();
        for (e, c) in &self.0 {
            r.add_term(*e, c * k);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e = core::array::from_fn(|i| e1[i] + e2[i]);
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    /// Sets variable `i` to zero.
    pub fn at_zero(&self, i: usize) -> Poly {
        Poly(self.0.iter().filter(|(e, _)| e[i] == 0).map(|(e, c)| (*e, *c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `Some((k, e))` if the polynomial is the single term `k * monomial`.
    pub fn as_monomial(&self) -> Option<(i64, [u8; 4])> {
        match self.0.iter().collect::<Vec<_>>().as_slice() {
            [(e, c)] => Some((**c, **e)),
            _ => None,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.0.iter().rev().enumerate() {
            let mut vars = String::new();
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => vars += &alloc::format!("*{}", VARS[i]),
                    _ => vars += &alloc::format!("*{}^{}", VARS[i], p),
                }
            }
            if k > 0 {
                f.write_str(if *c < 0 { " - " } else { " + " })?;
            } else if *c < 0 {
                f.write_str("-")?;
            }
            write!(f, "{}{}", c.abs(), vars)?;
        }
        Ok(())
    }
}

/// The four Jacobian entries as polynomials.
pub fn jacobian_polys() -> [Poly; 4] {
    let (x, y, p, r) = (Poly::var(0), Poly::var(1), Poly::var(2), Poly::var(3));
    let pxy2 = p.mul(&x).mul(&y).scale(2);
    [
        p.mul(&x).mul(&x).scale(2).add(&r).add(&x.scale(2)),
        pxy2.sub(&y.scale(2)),
        pxy2.add(&y.scale(2)),
        p.mul(&y).mul(&y).scale(2).add(&r).add(&x.scale(2)),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationReport {
    /// Lower-left minus upper-right entry; a nonzero multiple of `y`.
    pub off_diagonal_difference: Poly,
    /// Upper-left minus lower-right entry with `y = 0`; a nonzero multiple of
    /// `P x^2`.
    pub diagonal_difference: Poly,
    /// Both differences have the expected single-term shape, so a zero
    /// Jacobian forces `x = y = 0`, outside `c < x^2 + y^2 < 1/2`.
    pub ok: bool,
}

/// Exact replay of the elimination. `P` is nonzero on the transition band
/// because `rho' < 0` there, and `c > 0` keeps the origin out of the band.
pub fn symbolic_elimination(c: Ratio<i64>) -> EliminationReport {
    let [e1, e2, e3, e4] = jacobian_polys();
    let off = e3.sub(&e2);
    let diag = e1.sub(&e4).at_zero(1);
    let y_only = matches!(off.as_monomial(), Some((k, [0, 1, 0, 0])) if k != 0);
    let px2 = matches!(diag.as_monomial(), Some((k, [2, 0, 1, 0])) if k != 0);
    let band_excludes_origin = c > Ratio::from_integer(0) && c < Ratio::new(1, 2);
    EliminationReport {
        off_diagonal_difference: off,
        diagonal_difference: diag,
        ok: y_only && px2 && band_excludes_origin,
    }
}
