//! Line-oriented move scripts.
//!
//! ```text
//! # comment
//! start CP2 + CP2 + CP2bar      (or a matrix literal)
//! blowup -1
//! slide 1 3 -1                  (component 1 slides over component 3)
//! blowdown 3
//! permute (1 2)(3)              (cycle notation, 1-based)
//! expect SxS + CP2
//! ```
//!
//! The final form must equal `expect` up to reordering the components.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::expr::FourManifoldExpr;
use crate::form::SymmetricForm;
use crate::kirby::{matching_permutation, KirbyState};

/// `start`/`expect` operand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Expr(FourManifoldExpr),
    Matrix(SymmetricForm),
}

impl Operand {
    pub fn form(&self) -> SymmetricForm {
        match self {
            Operand::Expr(e) => e.intersection_form(),
            Operand::Matrix(m) => m.clone(),
        }
    }

    fn parse(text: &str) -> Result<Self, String> {
        let t = text.trim();
        if t.starts_with('[') {
            SymmetricForm::parse_literal(t).map(Operand::Matrix).map_err(|e| e.to_string())
        } else {
            FourManifoldExpr::parse(t).map(Operand::Expr).map_err(|e| e.to_string())
        }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Expr(e) => write!(f, "{e}"),
            Operand::Matrix(m) => f.write_str(&m.to_literal()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Blowup(i64),
    Blowdown(usize),
    Slide { i: usize, j: usize, sign: i64 },
    /// Disjoint cycles, 1-based.
    Permute(Vec<Vec<usize>>),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Blowup(s) => write!(f, "blowup {s:+}"),
            Move::Blowdown(k) => write!(f, "blowdown {k}"),
            Move::Slide { i, j, sign } => write!(f, "slide {i} {j} {sign:+}"),
            Move::Permute(cycles) => {
                f.write_str("permute ")?;
                for c in cycles {
                    let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
                    write!(f, "({})", parts.join(" "))?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveScript {
    pub start: Operand,
    /// Moves with their 1-based source line.
    pub moves: Vec<(usize, Move)>,
    pub expect: Option<Operand>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ScriptError {
    pub line: usize,
    pub msg: String,
}

impl MoveScript {
    pub fn parse(text: &str) -> Result<Self, ScriptError> {
        let mut start = None;
        let mut expect = None;
        let mut moves = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: String| ScriptError { line, msg };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (kw, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            let rest = rest.trim();
            match kw {
                "start" | "expect" => {
                    let op = Operand::parse(rest).map_err(err)?;
                    let slot = if kw == "start" { &mut start } else { &mut expect };
                    if slot.replace(op).is_some() {
                        return Err(ScriptError { line, msg: alloc::format!("duplicate `{kw}`") });
                    }
                }
                _ if start.is_none() => return Err(err("the first statement must be `start`".into())),
                _ if expect.is_some() => return Err(err("moves after `expect`".into())),
                "blowup" => moves.push((line, Move::Blowup(sign(rest).map_err(err)?))),
                "blowdown" => moves.push((line, Move::Blowdown(index(rest).map_err(err)?))),
                "slide" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let [i, j, s] = parts.as_slice() else {
                        return Err(err("usage: slide <i> <j> <+1|-1>".into()));
                    };
                    let mv = Move::Slide {
                        i: index(i).map_err(err)?,
                        j: index(j).map_err(err)?,
                        sign: sign(s).map_err(err)?,
                    };
                    moves.push((line, mv));
                }
                "permute" => moves.push((line, Move::Permute(cycles(rest).map_err(err)?))),
                other => return Err(err(alloc::format!("unknown statement `{other}`"))),
            }
        }
        let start = start.ok_or(ScriptError { line: 0, msg: "missing `start`".into() })?;
        Ok(MoveScript { start, moves, expect })
    }
}

fn sign(s: &str) -> Result<i64, String> {
    match s.trim() {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(alloc::format!("expected +1 or -1, got `{other}`")),
    }
}

fn index(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(alloc::format!("expected a component number (1-based), got `{}`", s.trim())),
    }
}

fn cycles(s: &str) -> Result<Vec<Vec<usize>>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| alloc::format!("malformed cycle notation `{s}`"))?;
        let cycle = body
            .0
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(index)
            .collect::<Result<Vec<_>, _>>()?;
        out.push(cycle);
        rest = body.1.trim_start();
    }
    Ok(out)
}

/// Permutation (`perm[i-1]` = new position of component `i`) of `n`
/// components given by disjoint cycles.
pub fn cycles_to_permutation(n: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>, String> {
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut touched = alloc::vec![false; n];
    for c in cycles {
        for (p, &a) in c.iter().enumerate() {
            if a > n {
                return Err(alloc::format!("component {a} out of range (state has {n} components)"));
            }
            if core::mem::replace(&mut touched[a - 1], true) {
                return Err(alloc::format!("component {a} appears in two cycles"));
            }
            perm[a - 1] = c[(p + 1) % c.len()];
        }
    }
    Ok(perm)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// 0 for the start, then the 1-based move number.
    pub step: usize,
    pub description: String,
    pub form: SymmetricForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptOutcome {
    Pass { trace: Vec<TraceStep>, permutation: Option<Vec<usize>> },
    Fail { step: usize, line: usize, reason: String, trace: Vec<TraceStep> },
}

impl ScriptOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, ScriptOutcome::Pass { .. })
    }
}

/// Replays a script, checking each move and the final match.
pub fn run_script(script: &MoveScript) -> ScriptOutcome {
    let mut state = KirbyState::new(script.start.form());
    let mut trace = alloc::vec![TraceStep {
        step: 0,
        description: alloc::format!("start {}", script.start),
        form: state.form().clone(),
    }];
    for (k, (line, mv)) in script.moves.iter().enumerate() {
        let step = k + 1;
        let next = match mv {
            Move::Blowup(s) => state.blowup(*s).map_err(|e| e.to_string()),
            Move::Blowdown(c) => state.blowdown(*c).map_err(|e| e.to_string()),
            Move::Slide { i, j, sign } => state.slide(*i, *j, *sign).map_err(|e| e.to_string()),
            Move::Permute(c) => cycles_to_permutation(state.size(), c)
                .and_then(|p| state.permute(&p).map_err(|e| e.to_string())),
        };
        match next {
            Ok(s) => state = s,
            Err(reason) => return ScriptOutcome::Fail { step, line: *line, reason, trace },
        }
        trace.push(TraceStep { step, description: mv.to_string(), form: state.form().clone() });
    }
    let Some(expect) = &script.expect else {
        return ScriptOutcome::Pass { trace, permutation: None };
    };
    let target = expect.form();
    if *state.form() == target {
        return ScriptOutcome::Pass { trace, permutation: None };
    }
    match matching_permutation(state.form(), &target) {
        Some(p) => ScriptOutcome::Pass { trace, permutation: Some(p.iter().map(|x| x + 1).collect()) },
        None => ScriptOutcome::Fail {
            step: script.moves.len() + 1,
            line: script.moves.last().map_or(0, |m| m.0) + 1,
            reason: alloc::format!(
                "final form {} does not match expected {} up to reordering",
                state.form().to_literal(),
                target.to_literal()
            ),
            trace,
        },
    }
}
