use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use immcalc_core::congruence::{CongruenceCertificate, ElementaryMove, InvariantMismatch, Method, Verdict};
use immcalc_core::{Invariants, SymmetricForm};

pub const SCHEMA: u32 = 1;

/// What the process exits with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
    Usage,
    Internal,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::Usage => 2,
            Status::Internal => 3,
        }
    }
}

/// Result of one command before serialisation.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub summary: String,
}

impl Outcome {
    pub fn new(status: Status, result: Value, summary: impl Into<String>) -> Self {
        Outcome { status, result, summary: summary.into() }
    }
}

#[derive(Serialize)]
pub struct Report<'a> {
    pub schema: u32,
    pub command: &'a [String],
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<&'a Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub fn big(v: &BigInt) -> Value {
    i64::try_from(v).map_or_else(|_| Value::String(v.to_string()), Value::from)
}

pub fn bigs(vs: &[BigInt]) -> Value {
    Value::Array(vs.iter().map(big).collect())
}

pub fn invariants(inv: &Invariants) -> Value {
    json!({
        "size": inv.size,
        "rank": inv.rank,
        "sigma": inv.signature,
        "det": big(&inv.determinant),
        "parity": inv.parity.to_string(),
        "snf": bigs(&inv.smith),
    })
}

pub fn form(f: &SymmetricForm) -> Value {
    Value::String(f.to_literal())
}

pub fn mismatch(m: &InvariantMismatch) -> Value {
    json!({ "invariant": m.invariant.to_string(), "left": m.left, "right": m.right })
}

fn method(m: Method) -> &'static str {
    match m {
        Method::Identical => "identical",
        Method::Bfs => "bfs",
        Method::UnitSplitting => "unit-splitting",
    }
}

/// Moves in the 1-based numbering used by scripts.
fn elementary(mv: &ElementaryMove) -> String {
    match *mv {
        ElementaryMove::Slide { target, source, sign } => {
            format!("slide {} {} {:+}", target + 1, source + 1, sign)
        }
        ElementaryMove::Flip { index } => format!("flip {}", index + 1),
    }
}

pub fn certificate(c: &CongruenceCertificate, verified: bool) -> Value {
    let mut v = json!({
        "method": method(c.method()),
        "matrix": c.to_literal(),
        "verified": verified,
    });
    if let Some(moves) = c.moves() {
        v["moves"] = moves.iter().map(elementary).collect();
    }
    v
}

/// `verdict` plus its witness or certificate. The certificate is re-checked
/// here against the two forms.
pub fn verdict(v: &Verdict, left: &SymmetricForm, right: &SymmetricForm) -> Value {
    match v {
        Verdict::Yes(c) => json!({ "verdict": "congruent", "certificate": certificate(c, c.verify(left, right)) }),
        Verdict::No(m) => json!({ "verdict": "not-congruent", "witness": mismatch(m) }),
        Verdict::Unknown { states } => json!({ "verdict": "unknown", "states_explored": states }),
    }
}
