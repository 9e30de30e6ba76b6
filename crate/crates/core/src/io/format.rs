//! Line-oriented problem files.
//!
//! ```text
//! # F(x) = {y : y >= x}, C = R+
//! polyset 1
//! n 1
//! q 1
//! graph hrep
//! 1 -1 <= 0
//! end
//! cone
//! ray 1
//! end
//! ```
//!
//! An `hrep` row `a b <= r` stands for `a·x + b·y ≤ r` (`=` for equality).
//! A `vrep` block lists `point`, `ray` and `line` rows in `R^{n+q}`. When
//! both graph blocks are present the graph is their Minkowski sum; this is
//! how standard forms are written. An empty `cone` block is `C = {0}`.

use std::fmt;
use std::fmt::Write as _;

use crate::exact::{Matrix, Scalar};
use crate::polyhedron::{HRep, Polyhedron, VRep};
use crate::setopt::{OrderCone, PolyMap, SetOptProblem};

pub const FORMAT_NAME: &str = "polyset";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    BadHeader(String),
    MalformedNumeral(String),
    DimensionMismatch { row: String, expected: usize, got: usize },
    UnknownBlock(String),
    Syntax(String),
    Missing(&'static str),
}

/// Parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::BadHeader(s) => write!(f, "expected header `{FORMAT_NAME} {FORMAT_VERSION}`, found `{s}`"),
            ParseErrorKind::MalformedNumeral(s) => write!(f, "malformed numeral `{s}`"),
            ParseErrorKind::DimensionMismatch { row, expected, got } => {
                write!(f, "{row} has {got} entries, expected {expected}")
            }
            ParseErrorKind::UnknownBlock(s) => write!(f, "unknown block `{s}`"),
            ParseErrorKind::Syntax(s) => f.write_str(s),
            ParseErrorKind::Missing(s) => write!(f, "missing {s}"),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn error(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.number,
            column,
            kind,
        }
    }

    fn first_column(&self) -> usize {
        self.tokens.first().map_or(1, |t| t.column)
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (k, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(k),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &body[s..k],
                        column: body[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    out
}

fn numeral(line: &Line, t: &Token) -> Result<Scalar, ParseError> {
    let text = t.text.replace('−', "-");
    text.parse()
        .map_err(|_| line.error(t.column, ParseErrorKind::MalformedNumeral(t.text.to_string())))
}

fn numerals(line: &Line, tokens: &[Token], row: String, expected: usize) -> Result<Vec<Scalar>, ParseError> {
    let v = tokens
        .iter()
        .map(|t| numeral(line, t))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != expected {
        return Err(line.error(
            line.first_column(),
            ParseErrorKind::DimensionMismatch {
                row,
                expected,
                got: v.len(),
            },
        ));
    }
    Ok(v)
}

fn count(line: &Line, key: &'static str) -> Result<usize, ParseError> {
    match line.tokens.as_slice() {
        [k, v] if k.text == key => v
            .text
            .parse()
            .map_err(|_| line.error(v.column, ParseErrorKind::MalformedNumeral(v.text.to_string()))),
        _ => Err(line.error(line.first_column(), ParseErrorKind::Syntax(format!("expected `{key} <count>`")))),
    }
}

/// Reads a problem file. Every numeral is an exact rational.
pub fn parse_problem(text: &str) -> Result<SetOptProblem, ParseError> {
    let lines = tokenize(text);
    let eof = |what| ParseError {
        line: text.lines().count().max(1),
        column: 1,
        kind: ParseErrorKind::Missing(what),
    };
    let mut it = lines.iter().peekable();
    let header = it.next().ok_or_else(|| eof("header"))?;
    let words: Vec<&str> = header.tokens.iter().map(|t| t.text).collect();
    if words != [FORMAT_NAME, "1"] {
        return Err(header.error(1, ParseErrorKind::BadHeader(words.join(" "))));
    }
    let n = count(it.next().ok_or_else(|| eof("`n` line"))?, "n")?;
    let q = count(it.next().ok_or_else(|| eof("`q` line"))?, "q")?;
    let dim = n + q;

    let mut hrep: Option<HRep> = None;
    let mut vrep: Option<VRep> = None;
    let mut cone: Option<OrderCone> = None;
    while let Some(open) = it.next() {
        let words: Vec<&str> = open.tokens.iter().map(|t| t.text).collect();
        let kind = match words.as_slice() {
            ["graph", "hrep"] => 0,
            ["graph", "vrep"] => 1,
            ["cone"] => 2,
            _ => {
                return Err(open.error(open.first_column(), ParseErrorKind::UnknownBlock(words.join(" "))));
            }
        };
        let taken = [hrep.is_some(), vrep.is_some(), cone.is_some()][kind];
        if taken {
            return Err(open.error(
                open.first_column(),
                ParseErrorKind::Syntax(format!("duplicate block `{}`", words.join(" "))),
            ));
        }
        let mut h = HRep::new(dim);
        let mut v = VRep::empty(dim);
        let mut c = OrderCone::zero(q);
        let mut row = 0;
        loop {
            let line = it.next().ok_or_else(|| eof("`end`"))?;
            if line.tokens.len() == 1 && line.tokens[0].text == "end" {
                break;
            }
            row += 1;
            let toks = &line.tokens;
            match kind {
                0 => {
                    let Some(s) = toks.iter().position(|t| matches!(t.text, "<=" | "≤" | "=" | "==")) else {
                        return Err(line.error(line.first_column(), ParseErrorKind::Syntax("expected `<=` or `=`".into())));
                    };
                    let a = numerals(line, &toks[..s], format!("graph row {row}"), dim)?;
                    let rhs = match &toks[s + 1..] {
                        [t] => numeral(line, t)?,
                        _ => {
                            return Err(line.error(
                                toks[s].column,
                                ParseErrorKind::Syntax("expected a single right-hand side".into()),
                            ))
                        }
                    };
                    if matches!(toks[s].text, "<=" | "≤") {
                        h.push_ineq(a, rhs);
                    } else {
                        h.push_eq(a, rhs);
                    }
                }
                _ => {
                    let tag = toks[0].text;
                    let allowed: &[&str] = if kind == 1 { &["point", "ray", "line"] } else { &["ray", "line"] };
                    if !allowed.contains(&tag) {
                        return Err(line.error(
                            toks[0].column,
                            ParseErrorKind::Syntax(format!("expected one of {}, found `{tag}`", allowed.join(", "))),
                        ));
                    }
                    let (name, width) = if kind == 1 { ("graph", dim) } else { ("cone", q) };
                    let z = numerals(line, &toks[1..], format!("{name} row {row}"), width)?;
                    match (kind, tag) {
                        (1, "point") => v.points.push(z),
                        (1, "ray") => v.rays.push(z),
                        (1, _) => v.lines.push(z),
                        (_, "ray") => c.rays.push(z),
                        _ => c.lines.push(z),
                    }
                }
            }
        }
        match kind {
            0 => hrep = Some(h),
            1 => vrep = Some(v),
            _ => cone = Some(OrderCone::new(q, c.rays, c.lines)),
        }
    }
    let c = cone.ok_or_else(|| eof("`cone` block"))?;
    let graph = match (hrep, vrep) {
        (None, None) => return Err(eof("graph block")),
        (h, v) => Polyhedron { dim, h, v },
    };
    let f = PolyMap::new(n, q, graph).expect("dimensions checked while parsing");
    Ok(SetOptProblem::new(f, c).expect("dimensions checked while parsing"))
}

/// Reads whitespace-separated rational rows of equal width, e.g. a
/// bid-ask matrix or an initial portfolio. `#` starts a comment.
pub fn parse_rows(text: &str) -> Result<Vec<Vec<Scalar>>, ParseError> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for line in tokenize(text) {
        let width = rows.first().map_or(line.tokens.len(), Vec::len);
        rows.push(numerals(&line, &line.tokens, format!("row {}", rows.len() + 1), width)?);
    }
    Ok(rows)
}

fn write_row(out: &mut String, tag: &str, z: &[Scalar]) {
    out.push_str(tag);
    for v in z {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
}

fn write_hrep(out: &mut String, m: &Matrix, rhs: &[Scalar], sense: &str) {
    for (a, r) in m.row_iter().zip(rhs) {
        let text: Vec<String> = a.iter().map(Scalar::to_string).collect();
        let _ = writeln!(out, "{} {sense} {r}", text.join(" "));
    }
}

/// Canonical text of a problem; [`parse_problem`] reads it back unchanged.
pub fn serialize_problem(p: &SetOptProblem) -> String {
    let mut out = format!("{FORMAT_NAME} {FORMAT_VERSION}\nn {}\nq {}\n", p.n(), p.q());
    let g = &p.f.graph;
    if let Some(h) = &g.h {
        out.push_str("graph hrep\n");
        write_hrep(&mut out, &h.ineq, &h.ineq_rhs, "<=");
        write_hrep(&mut out, &h.eq, &h.eq_rhs, "=");
        out.push_str("end\n");
    }
    // a graph with neither part is the origin
    if g.v.is_some() || g.h.is_none() {
        let origin = VRep::from_points(g.dim, vec![vec![Scalar::zero(); g.dim]]);
        let v = g.v.as_ref().unwrap_or(&origin);
        out.push_str("graph vrep\n");
        for z in &v.points {
            write_row(&mut out, "point", z);
        }
        for z in &v.rays {
            write_row(&mut out, "ray", z);
        }
        for z in &v.lines {
            write_row(&mut out, "line", z);
        }
        out.push_str("end\n");
    }
    out.push_str("cone\n");
    for z in &p.c.rays {
        write_row(&mut out, "ray", z);
    }
    for z in &p.c.lines {
        write_row(&mut out, "line", z);
    }
    out.push_str("end\n");
    out
}
