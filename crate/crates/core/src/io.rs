//! The GAF text format and the DOT / JSON exports.
//!
//! GAF is line oriented, one statement per line:
//!
//! ```text
//! # gaf 1
//! axis v
//! chamber w1 rank=2 orientable=yes
//! edge v w1
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Names match
//! `[A-Za-z0-9_]+` and are case sensitive. Declarations may come in any order;
//! repeated `edge` lines produce parallel edges. An optional first line
//! `# gaf <version>` pins the format version; only version 1 exists.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::diagram::{Chamber, ChamberData, Diagram, Edge};
use crate::error::{Error, Result};

pub const GAF_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: Vec<&'static str>, found: String },
    DuplicateName(String),
    Undeclared { name: String, expected: &'static str },
    BadRank(String),
    UnsupportedVersion(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "syntax error: expected {}, found {found}", expected.join(" or "))
            }
            ParseErrorKind::DuplicateName(n) => write!(f, "duplicate declaration of `{n}`"),
            ParseErrorKind::Undeclared { name, expected } => {
                write!(f, "undeclared name {name} (expected {expected})")
            }
            ParseErrorKind::BadRank(r) => write!(f, "rank `{r}` is not a positive integer"),
            ParseErrorKind::UnsupportedVersion(v) => write!(f, "unsupported gaf version `{v}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Axis(String),
    Chamber(String, ChamberData),
    Edge(String, String),
    Comment(String),
}

/// A located statement. `column` points at the first token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub column: usize,
    pub statement: Statement,
}

/// Parsed GAF text before name resolution. Statements keep file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GafDocument {
    pub statements: Vec<Located>,
}

impl GafDocument {
    /// Resolves names into a diagram. Storage order follows file order.
    pub fn to_diagram(&self) -> std::result::Result<Diagram, ParseError> {
        #[derive(Clone, Copy, PartialEq)]
        enum Kind {
            Axis,
            Chamber,
        }
        let mut names: HashMap<&str, Kind> = HashMap::new();
        let mut d = Diagram::new();
        for s in &self.statements {
            let (name, kind) = match &s.statement {
                Statement::Axis(n) => (n, Kind::Axis),
                Statement::Chamber(n, _) => (n, Kind::Chamber),
                _ => continue,
            };
            if names.insert(name, kind).is_some() {
                return Err(ParseError {
                    line: s.line,
                    column: s.column,
                    kind: ParseErrorKind::DuplicateName(name.clone()),
                });
            }
            match &s.statement {
                Statement::Axis(n) => d.axes.push(n.clone()),
                Statement::Chamber(n, data) => d.chambers.push(Chamber {
                    name: n.clone(),
                    data: *data,
                }),
                _ => unreachable!(),
            }
        }
        for s in &self.statements {
            if let Statement::Edge(a, c) = &s.statement {
                for (name, kind, label) in [(a, Kind::Axis, "an axis"), (c, Kind::Chamber, "a chamber")] {
                    if names.get(name.as_str()) != Some(&kind) {
                        return Err(ParseError {
                            line: s.line,
                            column: s.column,
                            kind: ParseErrorKind::Undeclared {
                                name: name.clone(),
                                expected: label,
                            },
                        });
                    }
                }
                d.edges.push(Edge::new(a.clone(), c.clone()));
            }
        }
        Ok(d)
    }
}

impl fmt::Display for GafDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            match &s.statement {
                Statement::Axis(n) => writeln!(f, "axis {n}")?,
                Statement::Chamber(n, data) => writeln!(f, "{}", chamber_line(n, data))?,
                Statement::Edge(a, c) => writeln!(f, "edge {a} {c}")?,
                Statement::Comment(text) => writeln!(f, "#{text}")?,
            }
        }
        Ok(())
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn syntax(line: usize, column: usize, expected: &[&'static str], found: &str) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Syntax {
            expected: expected.to_vec(),
            found: if found.is_empty() {
                "end of line".to_string()
            } else {
                format!("`{found}`")
            },
        },
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

fn name_token(
    line: usize,
    tok: Option<&Token<'_>>,
    end: usize,
    what: &'static str,
) -> std::result::Result<String, ParseError> {
    match tok {
        Some(t) if is_name(t.text) => Ok(t.text.to_string()),
        Some(t) => Err(syntax(line, t.column, &[what], t.text)),
        None => Err(syntax(line, end, &[what], "")),
    }
}

/// Parses the statement structure of a GAF file without resolving names.
pub fn parse_document(text: &[u8]) -> std::result::Result<GafDocument, ParseError> {
    let mut doc = GafDocument::default();
    let mut seen_content = false;
    for (idx, raw) in text.split(|&b| b == b'\n').enumerate() {
        let line_no = idx + 1;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        if let Some(pos) = raw
            .iter()
            .position(|&b| !(b.is_ascii_graphic() || b == b' ' || b == b'\t'))
        {
            return Err(syntax(
                line_no,
                pos + 1,
                &["printable ASCII"],
                &format!("byte 0x{:02x}", raw[pos]),
            ));
        }
        // every byte is ASCII now
        let line = std::str::from_utf8(raw).expect("ascii");
        let (body, comment) = match line.find('#') {
            Some(p) => (&line[..p], Some(&line[p + 1..])),
            None => (line, None),
        };
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch == ' ' || ch == '\t', start) {
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &body[s..i],
                        column: s + 1,
                    });
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if tokens.is_empty() {
            if let Some(c) = comment {
                if !seen_content {
                    check_version(line_no, c)?;
                }
                if body.trim().is_empty() {
                    doc.statements.push(Located {
                        line: line_no,
                        column: body.len() + 1,
                        statement: Statement::Comment(c.to_string()),
                    });
                }
            }
            if comment.is_some() || !line.trim().is_empty() {
                seen_content = true;
            }
            continue;
        }
        seen_content = true;
        let end = body.trim_end().len() + 1;
        let first = &tokens[0];
        let statement = match first.text {
            "axis" => {
                let name = name_token(line_no, tokens.get(1), end, "axis name")?;
                expect_end(line_no, &tokens, 2)?;
                Statement::Axis(name)
            }
            "chamber" => {
                let name = name_token(line_no, tokens.get(1), end, "chamber name")?;
                let rank = parse_rank(line_no, tokens.get(2), end)?;
                let orientable = parse_orientable(line_no, tokens.get(3), end)?;
                expect_end(line_no, &tokens, 4)?;
                Statement::Chamber(name, ChamberData { rank, orientable })
            }
            "edge" => {
                let a = name_token(line_no, tokens.get(1), end, "axis name")?;
                let c = name_token(line_no, tokens.get(2), end, "chamber name")?;
                expect_end(line_no, &tokens, 3)?;
                Statement::Edge(a, c)
            }
            other => return Err(syntax(line_no, first.column, &["`axis`", "`chamber`", "`edge`"], other)),
        };
        doc.statements.push(Located {
            line: line_no,
            column: first.column,
            statement,
        });
    }
    Ok(doc)
}

fn check_version(line: usize, comment: &str) -> std::result::Result<(), ParseError> {
    let mut words = comment.split_whitespace();
    if words.next() == Some("gaf") {
        if let (Some(v), None) = (words.next(), words.next()) {
            if v != GAF_VERSION {
                return Err(ParseError {
                    line,
                    column: 1,
                    kind: ParseErrorKind::UnsupportedVersion(v.to_string()),
                });
            }
        }
    }
    Ok(())
}

fn expect_end(line: usize, tokens: &[Token<'_>], n: usize) -> std::result::Result<(), ParseError> {
    match tokens.get(n) {
        Some(t) => Err(syntax(line, t.column, &["end of line"], t.text)),
        None => Ok(()),
    }
}

fn parse_rank(line: usize, tok: Option<&Token<'_>>, end: usize) -> std::result::Result<u32, ParseError> {
    let t = tok.ok_or_else(|| syntax(line, end, &["`rank=<int>`"], ""))?;
    let value = t
        .text
        .strip_prefix("rank=")
        .ok_or_else(|| syntax(line, t.column, &["`rank=<int>`"], t.text))?;
    let vcol = t.column + "rank=".len();
    if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, vcol, &["positive integer"], value));
    }
    match value.parse::<u32>() {
        Ok(r) if r > 0 => Ok(r),
        _ => Err(ParseError {
            line,
            column: vcol,
            kind: ParseErrorKind::BadRank(value.to_string()),
        }),
    }
}

fn parse_orientable(line: usize, tok: Option<&Token<'_>>, end: usize) -> std::result::Result<bool, ParseError> {
    let t = tok.ok_or_else(|| syntax(line, end, &["`orientable=yes|no`"], ""))?;
    let value = t
        .text
        .strip_prefix("orientable=")
        .ok_or_else(|| syntax(line, t.column, &["`orientable=yes|no`"], t.text))?;
    match value {
        "yes" => Ok(true),
        "no" => Ok(false),
        other => Err(syntax(line, t.column + "orientable=".len(), &["`yes`", "`no`"], other)),
    }
}

pub fn parse_gaf(text: &[u8]) -> std::result::Result<Diagram, ParseError> {
    parse_document(text)?.to_diagram()
}

fn chamber_line(name: &str, data: &ChamberData) -> String {
    format!(
        "chamber {name} rank={} orientable={}",
        data.rank,
        if data.orientable { "yes" } else { "no" }
    )
}

/// Deterministic GAF text: axes, chambers and edges, each sorted by name.
pub fn print_gaf(d: &Diagram) -> String {
    let d = d.normalized();
    let mut out = String::new();
    for a in &d.axes {
        let _ = writeln!(out, "axis {a}");
    }
    for c in &d.chambers {
        let _ = writeln!(out, "{}", chamber_line(&c.name, &c.data));
    }
    for e in &d.edges {
        let _ = writeln!(out, "edge {} {}", e.axis, e.chamber);
    }
    out
}

fn dot_id(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering: axes as circles, chambers as boxes, one `->` statement
/// per edge (parallel edges are repeated).
pub fn export_dot(d: &Diagram) -> String {
    let mut out = String::from("digraph diagram {\n");
    for a in &d.axes {
        let _ = writeln!(out, "  {} [shape=circle];", dot_id(a));
    }
    for c in &d.chambers {
        let _ = writeln!(
            out,
            "  {} [shape=box, label=\"{}\\n{}\"];",
            dot_id(&c.name),
            c.name,
            c.data
        );
    }
    for e in &d.edges {
        let _ = writeln!(out, "  {} -> {};", dot_id(&e.axis), dot_id(&e.chamber));
    }
    out.push_str("}\n");
    out
}

/// JSON document `{"axes": [...], "chambers": [...], "edges": [...]}` in
/// storage order.
pub fn export_json(d: &Diagram) -> String {
    serde_json::to_string_pretty(d).expect("diagram serializes")
}

pub fn import_json(text: &str) -> Result<Diagram> {
    let d: Diagram = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let names = d
        .axes
        .iter()
        .chain(d.chambers.iter().map(|c| &c.name))
        .chain(d.edges.iter().flat_map(|e| [&e.axis, &e.chamber]));
    for n in names {
        if !is_name(n) {
            return Err(Error::Malformed(format!("invalid name `{n}`")));
        }
    }
    Ok(d)
}
