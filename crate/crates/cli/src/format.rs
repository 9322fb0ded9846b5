//! The line-oriented automaton format.
//!
//! ```text
//! HRA <m> <n>
//! STATE <id> [INITIAL] [FINAL]
//! INIT <place> <name>
//! TRANS <src> <dst> ACC <X> : <X'>
//! TRANS <src> <dst> RST <X>
//! ```
//!
//! Place sets are comma-separated 1-based indices, or `-` for the empty set.
//! A `#` at the start of a token starts a comment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use hra::hra::ValidationReport;
use hra::{Hra, HraBuilder, HraType, Label, PlaceSet, StateId};

use crate::names::NameTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    DuplicateHeader,
    Syntax(String),
    BadPlaceIndex(usize),
    UnknownState(String),
    DuplicateState(String),
    NoInitial,
    MultipleInitial,
    /// A line not allowed by the declared machine class.
    ClassViolation(String),
    Arity { expected: usize, found: usize },
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line, when the error belongs to one.
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn at(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line: Some(line), kind }
    }

    pub(crate) fn file(kind: ParseErrorKind) -> Self {
        ParseError { line: None, kind }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing header line"),
            ParseErrorKind::DuplicateHeader => write!(f, "second header line"),
            ParseErrorKind::Syntax(s) => write!(f, "syntax error: {s}"),
            ParseErrorKind::BadPlaceIndex(p) => write!(f, "place index {p} out of range"),
            ParseErrorKind::UnknownState(s) => write!(f, "unknown state {s}"),
            ParseErrorKind::DuplicateState(s) => write!(f, "state {s} declared twice"),
            ParseErrorKind::NoInitial => write!(f, "no INITIAL state"),
            ParseErrorKind::MultipleInitial => write!(f, "more than one INITIAL state"),
            ParseErrorKind::ClassViolation(s) => write!(f, "{s}"),
            ParseErrorKind::Arity { expected, found } => write!(f, "expected {expected} values, found {found}"),
            ParseErrorKind::Invalid(s) => write!(f, "invalid automaton: {s}"),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

impl std::error::Error for ParseError {}

/// Splits a line into tokens, dropping a trailing comment.
pub(crate) fn tokens(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    for tok in line.split_whitespace() {
        if tok.starts_with('#') {
            break;
        }
        out.push(tok);
    }
    out
}

pub(crate) fn number<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::at(line, ParseErrorKind::Syntax(format!("expected a number, found `{tok}`"))))
}

fn place_set(line: usize, tok: &str, ty: HraType) -> Result<PlaceSet, ParseError> {
    if tok == "-" {
        return Ok(PlaceSet::EMPTY);
    }
    let mut x = PlaceSet::EMPTY;
    for part in tok.split(',') {
        let p: usize = number(line, part)?;
        if p == 0 || p > ty.places() {
            return Err(ParseError::at(line, ParseErrorKind::BadPlaceIndex(p)));
        }
        x.insert(p);
    }
    Ok(x)
}

pub fn parse_hra(text: &str, names: &mut NameTable) -> Result<Hra, ParseError> {
    let mut b: Option<HraBuilder> = None;
    let mut ids: BTreeMap<String, StateId> = BTreeMap::new();
    let mut initial: Option<StateId> = None;
    let mut pending: Vec<(usize, String, String, Label)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        let syntax = |msg: &str| ParseError::at(line, ParseErrorKind::Syntax(msg.to_owned()));
        if toks[0] == "HRA" {
            if b.is_some() {
                return Err(ParseError::at(line, ParseErrorKind::DuplicateHeader));
            }
            let [_, m, n] = toks[..] else {
                return Err(syntax("expected `HRA <m> <n>`"));
            };
            b = Some(HraBuilder::new(HraType::new(number(line, m)?, number(line, n)?)));
            continue;
        }
        let Some(b) = b.as_mut() else {
            return Err(ParseError::at(line, ParseErrorKind::MissingHeader));
        };
        match toks[0] {
            "STATE" => {
                let Some(&id) = toks.get(1) else {
                    return Err(syntax("expected `STATE <id> [INITIAL] [FINAL]`"));
                };
                if ids.contains_key(id) {
                    return Err(ParseError::at(line, ParseErrorKind::DuplicateState(id.to_owned())));
                }
                let q = b.add_state(id);
                ids.insert(id.to_owned(), q);
                for &flag in &toks[2..] {
                    match flag {
                        "INITIAL" => {
                            if initial.is_some() {
                                return Err(ParseError::at(line, ParseErrorKind::MultipleInitial));
                            }
                            initial = Some(q);
                        }
                        "FINAL" => {
                            b.set_final(q);
                        }
                        _ => return Err(syntax(&format!("unknown state flag `{flag}`"))),
                    }
                }
            }
            "INIT" => {
                let [_, p, name] = toks[..] else {
                    return Err(syntax("expected `INIT <place> <name>`"));
                };
                let p: usize = number(line, p)?;
                if p == 0 || p > b.ty.places() {
                    return Err(ParseError::at(line, ParseErrorKind::BadPlaceIndex(p)));
                }
                b.init_name(p, names.intern(name));
            }
            "TRANS" => {
                let label = match toks.get(3).copied() {
                    Some("ACC") => {
                        let [_, _, _, _, x, ":", y] = toks[..] else {
                            return Err(syntax("expected `TRANS <src> <dst> ACC <X> : <X'>`"));
                        };
                        Label::accept(place_set(line, x, b.ty)?, place_set(line, y, b.ty)?)
                    }
                    Some("RST") => {
                        let [_, _, _, _, x] = toks[..] else {
                            return Err(syntax("expected `TRANS <src> <dst> RST <X>`"));
                        };
                        Label::Reset(place_set(line, x, b.ty)?)
                    }
                    _ => return Err(syntax("expected ACC or RST")),
                };
                pending.push((line, toks[1].to_owned(), toks[2].to_owned(), label));
            }
            other => return Err(syntax(&format!("unknown keyword `{other}`"))),
        }
    }
    let mut b = b.ok_or(ParseError::file(ParseErrorKind::MissingHeader))?;
    let initial = initial.ok_or(ParseError::file(ParseErrorKind::NoInitial))?;
    b.set_initial(initial);
    for (line, src, dst, label) in pending {
        let lookup = |s: &str| {
            ids.get(s)
                .copied()
                .ok_or_else(|| ParseError::at(line, ParseErrorKind::UnknownState(s.to_owned())))
        };
        let (src, dst) = (lookup(&src)?, lookup(&dst)?);
        b.add_transition(hra::Transition { src, label, dst });
    }
    b.build().map_err(|e: ValidationReport| ParseError::file(ParseErrorKind::Invalid(e.to_string())))
}

fn show_set(x: PlaceSet) -> String {
    if x.is_empty() {
        return "-".into();
    }
    x.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// State identifiers safe for the format: no whitespace, no leading `#`,
/// pairwise distinct.
fn state_ids(a: &Hra) -> Vec<String> {
    let mut seen = BTreeSet::new();
    a.states()
        .map(|q| {
            let mut id: String = a
                .state_label(q)
                .chars()
                .map(|c| if c.is_whitespace() { '_' } else { c })
                .collect();
            if id.is_empty() || id.starts_with('#') {
                id = format!("s{}{id}", q.0);
            }
            if !seen.insert(id.clone()) {
                id = format!("{id}~{}", q.0);
                seen.insert(id.clone());
            }
            id
        })
        .collect()
}

pub fn print_hra(a: &Hra, names: &NameTable) -> String {
    let ty = a.ty();
    let ids = state_ids(a);
    let mut out = format!("HRA {} {}\n", ty.histories, ty.registers);
    for q in a.states() {
        out.push_str(&format!("STATE {}", ids[q.index()]));
        if q == a.initial() {
            out.push_str(" INITIAL");
        }
        if a.is_final(q) {
            out.push_str(" FINAL");
        }
        out.push('\n');
    }
    for (p, x) in a.initial_assignment().entries() {
        out.push_str(&format!("INIT {p} {}\n", names.text(x)));
    }
    for t in a.transitions() {
        let (s, d) = (&ids[t.src.index()], &ids[t.dst.index()]);
        match t.label {
            Label::Accept { pre, post } => {
                out.push_str(&format!("TRANS {s} {d} ACC {} : {}\n", show_set(pre), show_set(post)))
            }
            Label::Reset(x) => out.push_str(&format!("TRANS {s} {d} RST {}\n", show_set(x))),
        }
    }
    out
}
