use std::path::Path;

use num_rational::Ratio;
use serde_json::{json, Value};

use immcalc_core::congruence::{congruent, Budget, Verdict};
use immcalc_core::dicyclic::{self, quaternion, DicyclicElement};
use immcalc_core::identity::{verify_identity, IdentityName, IdentityReport, Variant};
use immcalc_core::pipeline::{pipeline_f, pipeline_g, FamilyResult, MAX_N};
use immcalc_core::script::{run_script, MoveScript, ScriptOutcome};
use immcalc_core::singularity::{symbolic_elimination, verify_no_rank2, BumpFunction, Profile};
use immcalc_core::smale::SmaleError;
use immcalc_core::{FourManifoldExpr, SymmetricForm};

use crate::error::CliError;
use crate::report::{self, big, bigs, Outcome, Status};

pub fn eval(text: &str) -> Result<Outcome, CliError> {
    let expr = FourManifoldExpr::parse(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let f = expr.intersection_form();
    let inv = f.invariants();
    let boundary = match expr.boundary() {
        Ok(b) => json!({ "type": b.to_string(), "h1_order": big(&b.h1_order()) }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let result = json!({
        "expr": expr.to_string(),
        "chi": expr.euler_characteristic(),
        "rank": inv.rank,
        "sigma": inv.signature,
        "det": big(&inv.determinant),
        "parity": inv.parity.to_string(),
        "snf": bigs(&inv.smith),
        "boundary": boundary,
        "form": report::form(&f),
    });
    let summary = format!(
        "{}: chi {}, sigma {}, det {}, {}",
        expr.summary(),
        expr.euler_characteristic(),
        inv.signature,
        inv.determinant,
        inv.parity
    );
    Ok(Outcome::new(Status::Ok, result, summary))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyArg {
    F,
    G,
}

fn family_json(r: &FamilyResult, trace: bool) -> Value {
    let l = &r.ledger;
    let mut v = json!({
        "family": r.family.to_string(),
        "n": r.n,
        "omega": [r.omega.a, r.omega.b],
        "omega_modified": [r.omega_modified.a, r.omega_modified.b],
        "hdef": r.hdef,
        "ndeg": l.ndeg,
        "sigma": l.sigma,
        "sigma2": l.sigma2_value,
        "sigma2_rule": l.sigma2.to_string(),
        "cover_degree": l.cover_degree,
        "seifert_surface": l.source.summary(),
        "bordism": r.bordism,
        "generator": r.generator,
    });
    if trace {
        v["trace"] = l
            .trace
            .iter()
            .map(|t| json!({ "step": t.step, "value": t.value, "anchor": t.anchor }))
            .collect();
    }
    v
}

pub fn family(which: FamilyArg, n: u64, trace: bool) -> Result<Outcome, CliError> {
    if n == 0 || n > MAX_N {
        return Err(CliError::Usage(format!("--n must lie in 1..={MAX_N}, got {n}")));
    }
    let r = match which {
        FamilyArg::F => pipeline_f(n),
        FamilyArg::G => pipeline_g(n),
    }
    .map_err(|e| match e {
        SmaleError::NonPositive { .. } | SmaleError::Overflow(_) => CliError::Usage(e.to_string()),
        other => CliError::Internal(other.to_string()),
    })?;
    let summary = format!(
        "Omega({}_{n}) = {}, bordism class {} mod 24 ({})",
        r.family,
        r.omega,
        r.bordism,
        if r.generator { "generator" } else { "not a generator" }
    );
    Ok(Outcome::new(Status::Ok, family_json(&r, trace), summary))
}

/// `a..b` or `a..=b` (both inclusive) or a single `n`.
pub fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("invalid range `{s}` (expected n, a..b or a..=b)"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn identity_json(r: &IdentityReport) -> (Value, &'static str) {
    let literal = r.literal();
    let status = match (&literal.verdict, r.certified_variant()) {
        (Verdict::Yes(_), _) => "certified",
        (_, Some(Variant::Twisted)) => "literal-fails-twisted-certified",
        (Verdict::No(_), _) => "refuted",
        _ => "unknown",
    };
    let variants: Vec<Value> = r
        .variants
        .iter()
        .map(|v| {
            let mut o = json!({
                "variant": v.variant.to_string(),
                "left": { "expr": v.left.description, "invariants": report::invariants(v.left.invariants()) },
                "right": { "expr": v.right.description, "invariants": report::invariants(v.right.invariants()) },
                "mismatch": v.mismatch.as_ref().map(report::mismatch),
            });
            let vj = report::verdict(&v.verdict, &v.left.form, &v.right.form);
            o.as_object_mut().expect("object").extend(vj.as_object().expect("object").clone());
            o
        })
        .collect();
    (json!({ "n": r.n, "status": status, "variants": variants }), status)
}

pub fn verify(name: &str, range: &str, budget: &Budget) -> Result<Outcome, CliError> {
    let id: IdentityName = name.parse().map_err(|e: immcalc_core::identity::IdentityError| CliError::Usage(e.to_string()))?;
    let (lo, hi) = parse_range(range)?;
    let mut results = Vec::new();
    let mut counts = std::collections::BTreeMap::<&str, u64>::new();
    for n in lo..=hi {
        let r = verify_identity(id, n, budget).map_err(|e| CliError::Usage(e.to_string()))?;
        let (v, status) = identity_json(&r);
        *counts.entry(status).or_default() += 1;
        results.push(v);
    }
    let all_literal = counts.get("certified").copied().unwrap_or(0) == hi - lo + 1;
    let status = if all_literal { Status::Ok } else { Status::VerificationFailed };
    let summary = format!(
        "{id} for n = {lo}..={hi}: {}",
        counts.iter().map(|(k, c)| format!("{c} {k}")).collect::<Vec<_>>().join(", ")
    );
    let result = json!({
        "identity": id.as_str(),
        "range": [lo, hi],
        "literal_holds": all_literal,
        "counts": counts,
        "instances": results,
    });
    Ok(Outcome::new(status, result, summary))
}

pub fn congruent_forms(left: &str, right: &str, budget: &Budget) -> Result<Outcome, CliError> {
    let parse = |t: &str| {
        SymmetricForm::parse_literal(t)
            .or_else(|_| FourManifoldExpr::parse(t).map(|e| e.intersection_form()).map_err(|e| e.to_string()))
            .map_err(CliError::Parse)
    };
    let (l, r) = (parse(left)?, parse(right)?);
    let v = congruent(&l, &r, budget);
    let status = if v.is_yes() { Status::Ok } else { Status::VerificationFailed };
    let summary = match &v {
        Verdict::Yes(_) => "congruent (certificate verified)".to_string(),
        Verdict::No(m) => format!("not congruent: {m}"),
        Verdict::Unknown { states } => format!("unknown after {states} states"),
    };
    let mut result = json!({
        "left": { "form": report::form(&l), "invariants": report::invariants(l.invariants()) },
        "right": { "form": report::form(&r), "invariants": report::invariants(r.invariants()) },
    });
    result.as_object_mut().expect("object").extend(report::verdict(&v, &l, &r).as_object().expect("object").clone());
    Ok(Outcome::new(status, result, summary))
}

pub fn kirby_run(path: &Path) -> Result<Outcome, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let script = MoveScript::parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let outcome = run_script(&script);
    let steps = |trace: &[immcalc_core::script::TraceStep]| -> Value {
        trace.iter().map(|t| json!({ "step": t.step, "move": t.description, "form": report::form(&t.form) })).collect()
    };
    let (status, result, summary) = match &outcome {
        ScriptOutcome::Pass { trace, permutation } => (
            Status::Ok,
            json!({ "script": path.display().to_string(), "status": "pass", "steps": steps(trace), "final_permutation": permutation }),
            format!("{}: pass ({} moves)", path.display(), script.moves.len()),
        ),
        ScriptOutcome::Fail { step, line, reason, trace } => (
            Status::VerificationFailed,
            json!({
                "script": path.display().to_string(),
                "status": "fail",
                "steps": steps(trace),
                "failure": { "step": step, "line": line, "reason": reason },
            }),
            format!("{}: fail at step {step} (line {line}): {reason}", path.display()),
        ),
    };
    Ok(Outcome::new(status, result, summary))
}

fn abelianization_name(factors: &[num_bigint::BigInt]) -> String {
    if factors.is_empty() {
        return "0".into();
    }
    factors.iter().map(|f| format!("Z{f}")).collect::<Vec<_>>().join("+")
}

pub fn group_dic(n: u64, check: bool) -> Result<Outcome, CliError> {
    let usage = |e: dicyclic::DicyclicError| CliError::Usage(e.to_string());
    let order = dicyclic::group_order(n).map_err(usage)?;
    let ab = dicyclic::abelianization(n).map_err(usage)?;
    let mut result = json!({
        "group": format!("Dic_{n}"),
        "n": n,
        "order": order,
        "abelianization": abelianization_name(&ab),
        "extension_ok": dicyclic::check_extension(n).map_err(usage)?,
    });
    let mut ok = order == 4 * n && result["extension_ok"] == true;
    if check {
        let (a, x) = (DicyclicElement::a(n).map_err(usage)?, DicyclicElement::x(n).map_err(usage)?);
        let power = x.mul(&x).map_err(usage)? == a.pow(n);
        let conj = x.mul(&a).and_then(|g| g.mul(&x.inverse())).map_err(usage)? == a.inverse();
        let all = dicyclic::elements(n).map_err(usage)?;
        let model = all.iter().all(|g| {
            all.iter().all(|h| {
                let q = quaternion::Unit::from_element(g).mul(&quaternion::Unit::from_element(h));
                q.to_element() == g.mul(h).ok()
            })
        });
        result["relations_ok"] = json!(power && conj);
        result["model_ok"] = json!(model);
        ok &= power && conj && model;
    }
    let summary = format!("Dic_{n}: order {order}, abelianization {}", abelianization_name(&ab));
    Ok(Outcome::new(if ok { Status::Ok } else { Status::VerificationFailed }, result, summary))
}

/// `p/q`, an integer, or a decimal with a short expansion.
pub fn parse_ratio(s: &str) -> Result<Ratio<i64>, CliError> {
    let bad = || CliError::Usage(format!("invalid rational `{s}`"));
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let (p, q) = (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?);
        if q == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10i64.pow(frac.len() as u32);
        let whole: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let f: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        return Ok(Ratio::new(whole * den + f, den));
    }
    t.parse::<i64>().map(Ratio::from_integer).map_err(|_| bad())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ProfileArg {
    Exp,
    ExpSquared,
    Both,
}

pub fn lemma46(grid: usize, c: &str, margin: f64, profile: ProfileArg) -> Result<Outcome, CliError> {
    let c = parse_ratio(c)?;
    let profiles: &[Profile] = match profile {
        ProfileArg::Exp => &[Profile::Exp],
        ProfileArg::ExpSquared => &[Profile::ExpSquared],
        ProfileArg::Both => &Profile::ALL,
    };
    let mut runs = Vec::new();
    let mut ok = true;
    let mut min = f64::INFINITY;
    let mut cells = 0;
    for &p in profiles {
        let bump = BumpFunction::new(c, p).map_err(|e| CliError::Usage(e.to_string()))?;
        let r = verify_no_rank2(grid, &bump, margin).map_err(|e| CliError::Usage(e.to_string()))?;
        ok &= r.ok;
        min = min.min(r.min_entry_max);
        cells += r.cells_checked;
        runs.push(json!({
            "profile": p.to_string(),
            "ok": r.ok,
            "min_entry_max": r.min_entry_max,
            "cells_checked": r.cells_checked,
            "offending_cell": r.offending_cell.map(|(x, y)| [x, y]),
        }));
    }
    let sym = symbolic_elimination(c);
    ok &= sym.ok;
    let result = json!({
        "ok": ok,
        "min_entry_max": min,
        "cells_checked": cells,
        "c": c.to_string(),
        "grid": grid,
        "margin": margin,
        "profiles": runs,
        "symbolic": {
            "ok": sym.ok,
            "off_diagonal_difference": sym.off_diagonal_difference.to_string(),
            "diagonal_difference_at_y0": sym.diagonal_difference.to_string(),
        },
        "sigma2": if ok { Value::from(0) } else { Value::Null },
    });
    let summary = if ok {
        format!("no rank-2 points (min max|J| = {min:.3e}); #Sigma^2 = 0")
    } else {
        format!("check failed (min max|J| = {min:.3e}, symbolic {})", sym.ok)
    };
    Ok(Outcome::new(if ok { Status::Ok } else { Status::VerificationFailed }, result, summary))
}
