//! End-to-end Smale invariants of the immersion families.
//!
//! `f_n` is `S^3 -> L(n,1)` (the `Z_n` cover) followed by an immersion of
//! the boundary of the all-2 `A_{n-1}` plumbing; `g_n` is the `Dic_n`
//! cover `S^3 -> S^3/Dic_n` followed by an immersion of the boundary of the
//! all-2 `D_{n+2}` plumbing. Both are computed through a modified composite
//! (the plumbing stabilised by `SxS`) and then corrected by `n` (resp. `4n`)
//! copies of the immersion `s` with `Omega(s) = -Omega(t)`, where `t` bounds
//! the immersed punctured `S^2 x S^2`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::dicyclic::group_order;
use crate::expr::{Atom, FourManifoldExpr};
use crate::plumbing::Family;
use crate::smale::{
    hirzebruch_defect, is_generator, modification_correction, ndeg_composite, ndeg_immersed,
    smale_invariant, Disjointness, Sigma2, SmaleError, SmaleInvariant,
};

/// Largest family parameter accepted by the pipelines.
pub const MAX_N: u64 = 100_000;

/// One bookkeeping step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: &'static str,
    /// The rule that justifies the step.
    pub anchor: &'static str,
    pub value: String,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} [{}]", self.step, self.value, self.anchor)
    }
}

/// Data of a singular Seifert surface `F: V -> R^4` for the modified
/// composite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertLedger {
    /// `V`.
    pub source: FourManifoldExpr,
    pub sigma: i64,
    pub sigma2: Sigma2,
    pub sigma2_value: i64,
    pub ndeg: i64,
    pub cover_degree: i64,
    pub trace: Vec<TraceEntry>,
}

impl SeifertLedger {
    fn note(&mut self, step: &'static str, anchor: &'static str, value: impl ToString) {
        self.trace.push(TraceEntry { step, anchor, value: value.to_string() });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    F,
    G,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::F => "f",
            FamilyKind::G => "g",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyResult {
    pub family: FamilyKind,
    pub n: u64,
    pub omega: SmaleInvariant,
    /// Smale invariant of the modified composite.
    pub omega_modified: SmaleInvariant,
    pub hdef: i64,
    pub bordism: u8,
    pub generator: bool,
    pub ledger: SeifertLedger,
}

/// `Omega(t)` from the immersed punctured `S^2 x S^2`.
pub fn omega_t() -> Result<SmaleInvariant, SmaleError> {
    let sxs = FourManifoldExpr::atom(Atom::SxS);
    let hdef = hirzebruch_defect(sxs.signature(), Sigma2::Immersion.value()?);
    smale_invariant(ndeg_immersed(&sxs), hdef)
}

fn check_n(n: u64) -> Result<i64, SmaleError> {
    if n == 0 {
        return Err(SmaleError::NonPositive { what: "family parameter n", value: 0 });
    }
    if n > MAX_N {
        return Err(SmaleError::Overflow("family parameter (n too large)"));
    }
    Ok(n as i64)
}

fn expect_eq(what: &str, got: i64, want: i64) -> Result<(), SmaleError> {
    if got == want {
        Ok(())
    } else {
        Err(SmaleError::Internal(alloc::format!("{what}: computed {got}, closed form {want}")))
    }
}

struct Assembly {
    family: FamilyKind,
    n: u64,
    base: FourManifoldExpr,
    cover_degree: i64,
    source: FourManifoldExpr,
    sigma2: Sigma2,
}

fn finish(a: Assembly) -> Result<FamilyResult, SmaleError> {
    let mut ledger = SeifertLedger {
        sigma: a.source.signature(),
        source: a.source,
        sigma2_value: a.sigma2.value()?,
        sigma2: a.sigma2,
        ndeg: 0,
        cover_degree: a.cover_degree,
        trace: Vec::new(),
    };
    let base_ndeg = ndeg_immersed(&a.base);
    ledger.note(
        "base normal degree",
        "normal degree of an immersed boundary equals the Euler characteristic of the immersed 4-manifold",
        alloc::format!("chi({}) = {base_ndeg}", a.base.summary()),
    );
    ledger.note("covering degree", "order of the deck group of the universal cover", a.cover_degree);
    ledger.ndeg = ndeg_composite(a.cover_degree, base_ndeg)?;
    ledger.note("normal degree", "normal degree is multiplicative under coverings", ledger.ndeg);
    ledger.note(
        "signature",
        "signature is additive under boundary connected sum",
        alloc::format!("sigma({}) = {}", ledger.source.summary(), ledger.sigma),
    );
    ledger.note(
        "rank-2 points",
        "composition rule for rank-2 counts of branched covers",
        alloc::format!("{} = {}", ledger.sigma2, ledger.sigma2_value),
    );
    let hdef = hirzebruch_defect(ledger.sigma, ledger.sigma2_value);
    ledger.note("hirzebruch defect", "hdef = -3 sigma(V) - #Sigma^2(F)", hdef);
    let omega_modified = smale_invariant(ledger.ndeg, hdef)?;
    ledger.note("modified smale invariant", "Omega = (ndeg - 1, (-hdef - 2(ndeg - 1)) / 4)", omega_modified);
    let t = omega_t()?;
    ledger.note("Omega(t)", "t bounds the immersed punctured S^2 x S^2: ndeg 3, hdef 0", t);
    let omega = modification_correction(omega_modified, a.cover_degree, -t);
    ledger.note(
        "smale invariant",
        "Omega is additive under connected sum; remove one copy of s = -t per sheet",
        omega,
    );
    let bordism = omega.bordism_class();
    let generator = is_generator(bordism);
    ledger.note("bordism class", "(a, b) -> a + 2b mod 24", bordism);
    Ok(FamilyResult { family: a.family, n: a.n, omega, omega_modified, hdef, bordism, generator, ledger })
}

/// `f_n`: the lens-space family.
pub fn pipeline_f(n: u64) -> Result<FamilyResult, SmaleError> {
    let k = check_n(n)?;
    let chain = if n == 1 { Atom::D4 } else { Atom::plumbing(Family::A, n as usize - 1, 2).expect("n >= 2") };
    let base = FourManifoldExpr::atom(chain).with(Atom::SxS, 1);
    let source = FourManifoldExpr::atom(Atom::DiskBundle(-1)).with(Atom::Cp2, (n * n) as usize);
    let sigma2 = Sigma2::compose(k, Sigma2::Immersion, Sigma2::PiBranch { k }, Some(Disjointness::OuterImmersion));
    let r = finish(Assembly { family: FamilyKind::F, n, base, cover_degree: k, source, sigma2 })?;
    expect_eq("normal degree", r.ledger.ndeg, k * (k + 2))?;
    expect_eq("signature", r.ledger.sigma, k * k - 1)?;
    expect_eq("hirzebruch defect", r.hdef, -2 * k * k + 2)?;
    Ok(r)
}

/// `g_n`: the dicyclic family.
pub fn pipeline_g(n: u64) -> Result<FamilyResult, SmaleError> {
    let k = check_n(n)?;
    let base = FourManifoldExpr::atom(Atom::plumbing(Family::D, n as usize + 2, 2).expect("n >= 1"))
        .with(Atom::SxS, 1);
    let cover_degree = group_order(n).map_err(|e| SmaleError::Internal(e.to_string()))? as i64;
    let x = if n % 2 == 0 { Atom::SxS } else { Atom::SxtS };
    let source = FourManifoldExpr::atom(Atom::DiskBundle(-1))
        .with(x, 2 * n as usize)
        .with(Atom::Cp2, (4 * n * (n + 2)) as usize);
    // Z_2 cover of the two-handle model composed with the branched Z_2n
    // cover of disk bundles, then the immersion
    let pi = Sigma2::compose(
        2 * k,
        Sigma2::Z2Model,
        Sigma2::PiBranch { k: 2 * k },
        Some(Disjointness::BranchLociNearHandleCores),
    );
    let sigma2 = Sigma2::compose(cover_degree, Sigma2::Immersion, pi, Some(Disjointness::OuterImmersion));
    let r = finish(Assembly { family: FamilyKind::G, n, base, cover_degree, source, sigma2 })?;
    expect_eq("covering degree", cover_degree, 4 * k)?;
    expect_eq("normal degree", r.ledger.ndeg, 4 * k * (k + 5))?;
    expect_eq("signature", r.ledger.sigma, 4 * k * k + 8 * k - 1)?;
    expect_eq("hirzebruch defect", r.hdef, -8 * k * k - 24 * k + 2)?;
    Ok(r)
}
