//! Building-block expressions for 4-manifolds.
//!
//! An expression is a boundary connected sum of atoms. It is stored as runs
//! `(atom, count)` so that sums with thousands of `CP2` summands stay
//! cheap; signature and Euler characteristic are computed per run.
//!
//! Grammar:
//!
//! ```text
//! expr := term (" + " term)*
//! term := atom ("^" count)?
//! atom := "P(" fam "," k ";" w ")" | "E(" int ")" | "Estar(" n ")"
//!       | "SxS" | "SxtS" | "CP2" | "CP2bar" | "D4"
//!       | "G{" id ":" w ("," id ":" w)* ";" (u "-" v ("," u "-" v)*)? "}"
//! ```
//!
//! `atom^k` is shorthand for `k` consecutive copies; [`FourManifoldExpr`]'s
//! `Display` never emits it, [`FourManifoldExpr::summary`] does.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::boundary::{BoundaryDescriptor, BoundaryError, BoundaryKind, Orientation};
use crate::form::SymmetricForm;
use crate::plumbing::{Family, PlumbingError, PlumbingGraph};
use crate::snf::torsion_factors;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Plumbing(PlumbingGraph),
    /// Disk bundle over `S^2` with Euler number `m`.
    DiskBundle(i64),
    /// The two-handle model of the bundle over `RP^2` with Euler number `-n`.
    EStar(u64),
    /// Punctured `S^2 x S^2`.
    SxS,
    /// Punctured twisted `S^2`-bundle over `S^2`.
    SxtS,
    Cp2,
    Cp2Bar,
    D4,
}

impl Atom {
    pub fn plumbing(family: Family, k: usize, weight: i64) -> Result<Self, PlumbingError> {
        PlumbingGraph::family(family, k, weight).map(Atom::Plumbing)
    }

    pub fn form(&self) -> SymmetricForm {
        match self {
            Atom::Plumbing(g) => g.form(),
            Atom::DiskBundle(m) => SymmetricForm::diagonal([*m]),
            Atom::EStar(n) => {
                let d = -(*n as i64) - 2;
                SymmetricForm::from_i64([[0, 2], [2, d]])
            }
            Atom::SxS => SymmetricForm::hyperbolic(),
            Atom::SxtS => SymmetricForm::from_i64([[0, 1], [1, 1]]),
            Atom::Cp2 => SymmetricForm::diagonal([1]),
            Atom::Cp2Bar => SymmetricForm::diagonal([-1]),
            Atom::D4 => SymmetricForm::empty(),
        }
    }

    /// Number of 2-handles (size of the form).
    pub fn size(&self) -> usize {
        match self {
            Atom::Plumbing(g) => g.len(),
            Atom::DiskBundle(_) | Atom::Cp2 | Atom::Cp2Bar => 1,
            Atom::EStar(_) | Atom::SxS | Atom::SxtS => 2,
            Atom::D4 => 0,
        }
    }

    pub fn signature(&self) -> i64 {
        match self {
            Atom::Plumbing(g) => g.form().signature(),
            Atom::DiskBundle(m) => m.signum(),
            Atom::Cp2 => 1,
            Atom::Cp2Bar => -1,
            Atom::EStar(_) | Atom::SxS | Atom::SxtS | Atom::D4 => 0,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        1 + self.size() as i64
    }

    /// Atoms whose boundary is `S^3`.
    pub fn has_sphere_boundary(&self) -> bool {
        matches!(self, Atom::SxS | Atom::SxtS | Atom::Cp2 | Atom::Cp2Bar | Atom::D4)
    }

    /// Boundary of the atom on its own.
    pub fn boundary(&self) -> Result<BoundaryDescriptor, BoundaryError> {
        if self.has_sphere_boundary() {
            return Ok(BoundaryDescriptor::standard(BoundaryKind::Sphere));
        }
        let form = self.form();
        if form.determinant().is_zero() {
            return Err(BoundaryError::NotRationalHomologySphere);
        }
        let recognised = match self {
            Atom::DiskBundle(m) => Some(lens(m.unsigned_abs(), *m > 0)),
            Atom::EStar(n) => Some(BoundaryDescriptor::standard(BoundaryKind::DicyclicQuotient { n: *n })),
            Atom::Plumbing(g) => match (g.shape(), g.uniform_weight()) {
                (Some((Family::A, k)), Some(w @ (2 | -2))) => Some(lens(k as u64 + 1, w < 0)),
                (Some((Family::A, 1)), Some(w)) => Some(lens(w.unsigned_abs(), w > 0)),
                (Some((Family::D, k)), Some(w @ (2 | -2))) => Some(BoundaryDescriptor {
                    kind: BoundaryKind::DicyclicQuotient { n: k as u64 - 2 },
                    orientation: if w > 0 { Orientation::Standard } else { Orientation::Reversed },
                }),
                _ => None,
            },
            _ => None,
        };
        Ok(recognised.unwrap_or_else(|| unknown(&form)))
    }
}

// L(p,1); p <= 2 admits an orientation-reversing self-map, so the tag is
// normalised to Standard there.
fn lens(p: u64, reversed: bool) -> BoundaryDescriptor {
    if p == 1 {
        return BoundaryDescriptor::standard(BoundaryKind::Sphere);
    }
    BoundaryDescriptor {
        kind: BoundaryKind::LensSpace { p, q: 1 },
        orientation: if reversed && p > 2 { Orientation::Reversed } else { Orientation::Standard },
    }
}

fn unknown(form: &SymmetricForm) -> BoundaryDescriptor {
    BoundaryDescriptor::standard(BoundaryKind::UnknownQhs {
        h1: torsion_factors(&form.smith_normal_form()),
    })
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Plumbing(g) => write!(f, "{g}"),
            Atom::DiskBundle(m) => write!(f, "E({m})"),
            Atom::EStar(n) => write!(f, "Estar({n})"),
            Atom::SxS => f.write_str("SxS"),
            Atom::SxtS => f.write_str("SxtS"),
            Atom::Cp2 => f.write_str("CP2"),
            Atom::Cp2Bar => f.write_str("CP2bar"),
            Atom::D4 => f.write_str("D4"),
        }
    }
}

/// A boundary connected sum of atoms, stored as maximal runs of equal atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FourManifoldExpr {
    runs: Vec<(Atom, usize)>,
}

impl FourManifoldExpr {
    pub fn atom(atom: Atom) -> Self {
        FourManifoldExpr { runs: alloc::vec![(atom, 1)] }
    }

    /// `None` when `runs` contains no atom at all.
    pub fn from_runs<I: IntoIterator<Item = (Atom, usize)>>(runs: I) -> Option<Self> {
        let mut e = FourManifoldExpr { runs: Vec::new() };
        for (a, k) in runs {
            e.push(a, k);
        }
        (!e.runs.is_empty()).then_some(e)
    }

    /// Appends `count` copies of `atom`.
    pub fn push(&mut self, atom: Atom, count: usize) {
        if count == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((last, k)) if *last == atom => *k += count,
            _ => self.runs.push((atom, count)),
        }
    }

    pub fn with(mut self, atom: Atom, count: usize) -> Self {
        self.push(atom, count);
        self
    }

    /// Boundary connected sum.
    pub fn natural_sum(&self, other: &FourManifoldExpr) -> FourManifoldExpr {
        let mut out = self.clone();
        for (a, k) in &other.runs {
            out.push(a.clone(), *k);
        }
        out
    }

    pub fn runs(&self) -> &[(Atom, usize)] {
        &self.runs
    }

    pub fn atom_count(&self) -> usize {
        self.runs.iter().map(|r| r.1).sum()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.runs.iter().flat_map(|(a, k)| core::iter::repeat(a).take(*k))
    }

    pub fn count_of(&self, atom: &Atom) -> usize {
        self.runs.iter().filter(|r| &r.0 == atom).map(|r| r.1).sum()
    }

    /// Size of the intersection form.
    pub fn form_size(&self) -> usize {
        self.runs.iter().map(|(a, k)| a.size() * k).sum()
    }

    /// Block-diagonal sum of the atom forms, in order.
    pub fn intersection_form(&self) -> SymmetricForm {
        let mut out = SymmetricForm::empty();
        for (a, k) in &self.runs {
            let f = a.form();
            for _ in 0..*k {
                out = out.direct_sum(&f);
            }
        }
        out
    }

    pub fn signature(&self) -> i64 {
        self.runs.iter().map(|(a, k)| a.signature() * *k as i64).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let atoms = self.atom_count() as i64;
        self.runs.iter().map(|(a, k)| a.euler_characteristic() * *k as i64).sum::<i64>() - (atoms - 1)
    }

    /// The boundary: summands with `S^3` boundary are dropped; a single
    /// remaining atom is recognised by family, anything else is described
    /// by the first homology of its form.
    pub fn boundary(&self) -> Result<BoundaryDescriptor, BoundaryError> {
        let rest: Vec<&(Atom, usize)> = self.runs.iter().filter(|r| !r.0.has_sphere_boundary()).collect();
        match rest.as_slice() {
            [] => Ok(BoundaryDescriptor::standard(BoundaryKind::Sphere)),
            [(a, 1)] => a.boundary(),
            _ => {
                let mut form = SymmetricForm::empty();
                for (a, k) in rest {
                    let f = a.form();
                    if f.determinant().is_zero() {
                        return Err(BoundaryError::NotRationalHomologySphere);
                    }
                    for _ in 0..*k {
                        form = form.direct_sum(&f);
                    }
                }
                Ok(unknown(&form))
            }
        }
    }

    /// Determinant of the intersection form, computed per atom.
    pub fn determinant(&self) -> BigInt {
        let mut d = BigInt::from(1);
        for (a, k) in &self.runs {
            let ad = a.form().determinant();
            for _ in 0..*k {
                d *= &ad;
            }
        }
        d
    }

    /// Compact rendering with `atom^k` for repeated atoms.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|(a, k)| if *k == 1 { a.to_string() } else { alloc::format!("{a}^{k}") })
            .collect();
        parts.join(" + ")
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).expr()
    }
}

impl fmt::Display for FourManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for a in self.atoms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for FourManifoldExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("size must be positive, got {0}")]
    NonPositiveSize(i64),
    #[error(transparent)]
    Graph(#[from] PlumbingError),
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError { line, column, kind }
    }

    fn syntax(&self, msg: &str) -> ParseError {
        self.error_at(self.pos, ParseErrorKind::Syntax(msg.to_string()))
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            let msg = match self.peek() {
                Some(found) => alloc::format!("expected `{c}`, found `{found}`"),
                None => alloc::format!("expected `{c}`, found end of input"),
            };
            Err(self.syntax(&msg))
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !c.is_ascii_alphanumeric() {
                break;
            }
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-' | '+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some('0'..='9')) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.syntax("expected an integer"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, ParseErrorKind::Syntax("integer out of range".to_string())))
    }

    fn positive(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let v = self.int()?;
        if v <= 0 {
            return Err(self.error_at(start, ParseErrorKind::NonPositiveSize(v)));
        }
        Ok(v as u64)
    }

    fn id(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let v = self.int()?;
        u32::try_from(v).map_err(|_| self.error_at(start, ParseErrorKind::Syntax("vertex id out of range".to_string())))
    }

    fn expr(&mut self) -> Result<FourManifoldExpr, ParseError> {
        let mut e = FourManifoldExpr { runs: Vec::new() };
        loop {
            self.skip_ws();
            let (atom, count) = self.term()?;
            e.push(atom, count);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => self.pos += 1,
                Some(_) => return Err(self.syntax("expected `+` or end of input")),
            }
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<(Atom, usize), ParseError> {
        let atom = self.atom()?;
        let save = self.pos;
        self.skip_ws();
        if self.eat('^') {
            let k = self.positive()?;
            let k = usize::try_from(k).map_err(|_| self.syntax("repeat count out of range"))?;
            return Ok((atom, k));
        }
        self.pos = save;
        Ok((atom, 1))
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let start = self.pos;
        let name = self.ident();
        match name {
            "" => Err(self.syntax("expected an atom")),
            "SxS" => Ok(Atom::SxS),
            "SxtS" => Ok(Atom::SxtS),
            "CP2" => Ok(Atom::Cp2),
            "CP2bar" => Ok(Atom::Cp2Bar),
            "D4" => Ok(Atom::D4),
            "E" => {
                self.expect('(')?;
                let m = self.int()?;
                self.expect(')')?;
                Ok(Atom::DiskBundle(m))
            }
            "Estar" => {
                self.expect('(')?;
                let n = self.positive()?;
                self.expect(')')?;
                Ok(Atom::EStar(n))
            }
            "P" => {
                self.expect('(')?;
                self.skip_ws();
                let fam_at = self.pos;
                let family = match self.ident() {
                    "A" => Family::A,
                    "D" => Family::D,
                    other => {
                        return Err(self.error_at(
                            fam_at,
                            ParseErrorKind::Syntax(alloc::format!("unknown family `{other}`")),
                        ))
                    }
                };
                self.expect(',')?;
                self.skip_ws();
                let k_at = self.pos;
                let k = self.positive()?;
                self.expect(';')?;
                let w = self.int()?;
                self.expect(')')?;
                let k = usize::try_from(k).map_err(|_| self.syntax("family size out of range"))?;
                Atom::plumbing(family, k, w).map_err(|e| self.error_at(k_at, e.into()))
            }
            "G" => self.graph(start),
            other => Err(self.error_at(start, ParseErrorKind::UnknownAtom(other.to_string()))),
        }
    }

    fn graph(&mut self, start: usize) -> Result<Atom, ParseError> {
        self.expect('{')?;
        let mut vertices = Vec::new();
        loop {
            let id = self.id()?;
            self.expect(':')?;
            let w = self.int()?;
            vertices.push((id, w));
            self.skip_ws();
            if !self.eat(',') {
                break;
            }
        }
        self.expect(';')?;
        let mut edges = Vec::new();
        self.skip_ws();
        if self.peek() != Some('}') {
            loop {
                let u = self.id()?;
                self.expect('-')?;
                let v = self.id()?;
                edges.push((u, v));
                self.skip_ws();
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect('}')?;
        PlumbingGraph::new(vertices, edges)
            .map(Atom::Plumbing)
            .map_err(|e| self.error_at(start, e.into()))
    }
}
