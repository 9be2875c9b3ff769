//! Line-oriented instance and sequence files.
//!
//! ```text
//! n 4
//! rep L1 L2 R1 L3 R2 L4 R3 R4
//! blue 1 3
//! red 2 4
//! ```
//!
//! An edge list replaces `rep` with `edges <m>` followed by `m` lines `u v`.
//! Text after `#` is ignored.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Move, Vertex};
use crate::interval::IntervalRepresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Rep(IntervalRepresentation),
    Edges(Graph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub structure: Structure,
    pub blue: Vec<Vertex>,
    pub red: Vec<Vertex>,
}

/// A syntax error. Lines and columns are 1-based.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next line with content, as (line number, text without comment).
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let text = raw.split('#').next().unwrap();
            if !text.trim().is_empty() {
                return Some((i + 1, text));
            }
        }
        None
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated words of a line with their 1-based columns.
fn words(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

fn number<T: std::str::FromStr>(
    line: usize,
    (col, w): (usize, &str),
    what: &str,
) -> Result<T, ParseError> {
    w.parse()
        .map_err(|_| err(line, col, format!("expected {what}, found `{w}`")))
}

fn vertex(line: usize, word: (usize, &str), n: usize) -> Result<Vertex, ParseError> {
    let id: u32 = number(line, word, "a vertex id")?;
    if id == 0 || id as usize > n {
        return Err(err(line, word.0, format!("vertex {id} is outside 1..={n}")));
    }
    Ok(Vertex::new(id))
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = Lines::new(text);
        let mut n: Option<usize> = None;
        let mut structure: Option<Structure> = None;
        let mut blue: Option<Vec<Vertex>> = None;
        let mut red: Option<Vec<Vertex>> = None;
        let mut last_line = 1;
        while let Some((ln, text)) = lines.next_content() {
            last_line = ln;
            let ws = words(text);
            let (kcol, key) = ws[0];
            let rest = &ws[1..];
            let need_n = || n.ok_or_else(|| err(ln, kcol, format!("`{key}` before `n`")));
            match key {
                "n" => {
                    if n.is_some() {
                        return Err(err(ln, kcol, "duplicate `n`"));
                    }
                    let [w] = rest else {
                        return Err(err(ln, kcol, "expected `n <int>`"));
                    };
                    let v: usize = number(ln, *w, "a vertex count")?;
                    if v == 0 {
                        return Err(err(ln, w.0, "n must be positive"));
                    }
                    n = Some(v);
                }
                "rep" | "edges" => {
                    let n = need_n()?;
                    if structure.is_some() {
                        return Err(err(ln, kcol, "only one of `rep` or `edges` is allowed"));
                    }
                    if key == "rep" {
                        let body_start = rest.first().map_or(text.len(), |w| w.0 - 1);
                        let rep =
                            IntervalRepresentation::parse(&text[body_start..]).map_err(|e| {
                                let column = rest.get(e.position - 1).map_or(kcol, |w| w.0);
                                err(ln, column, e.to_string())
                            })?;
                        if rep.n() != n {
                            return Err(err(
                                ln,
                                kcol,
                                format!("representation has {} vertices, expected {n}", rep.n()),
                            ));
                        }
                        structure = Some(Structure::Rep(rep));
                    } else {
                        let [w] = rest else {
                            return Err(err(ln, kcol, "expected `edges <m>`"));
                        };
                        let m: usize = number(ln, *w, "an edge count")?;
                        let mut edges = Vec::with_capacity(m);
                        for i in 0..m {
                            let (el, et) = lines.next_content().ok_or_else(|| {
                                err(ln, w.0, format!("expected {m} edge lines, found {i}"))
                            })?;
                            let ew = words(et);
                            let [a, b] = ew[..] else {
                                return Err(err(el, 1, "expected `<u> <v>`"));
                            };
                            edges.push((vertex(el, a, n)?, vertex(el, b, n)?));
                            last_line = el;
                        }
                        let g = Graph::from_edges(n, &edges)
                            .map_err(|e| err(ln, kcol, e.to_string()))?;
                        structure = Some(Structure::Edges(g));
                    }
                }
                "blue" | "red" => {
                    let n = need_n()?;
                    let slot = if key == "blue" { &mut blue } else { &mut red };
                    if slot.is_some() {
                        return Err(err(ln, kcol, format!("duplicate `{key}`")));
                    }
                    let mut vs = Vec::with_capacity(rest.len());
                    for &w in rest {
                        vs.push(vertex(ln, w, n)?);
                    }
                    *slot = Some(vs);
                }
                other => return Err(err(ln, kcol, format!("unknown keyword `{other}`"))),
            }
        }
        let missing = |what: &str| err(last_line, 1, format!("missing `{what}` line"));
        n.ok_or_else(|| missing("n"))?;
        Ok(Instance {
            structure: structure.ok_or_else(|| missing("rep` or `edges"))?,
            blue: blue.ok_or_else(|| missing("blue"))?,
            red: red.ok_or_else(|| missing("red"))?,
        })
    }

    pub fn n(&self) -> usize {
        match &self.structure {
            Structure::Rep(r) => r.n(),
            Structure::Edges(g) => g.n(),
        }
    }

    /// The graph, built from the representation if needed.
    pub fn graph(&self) -> Graph {
        match &self.structure {
            Structure::Rep(r) => r.intersection_graph(),
            Structure::Edges(g) => g.clone(),
        }
    }

    /// The instance on one line, lines joined by ` ; `.
    pub fn to_inline(&self) -> String {
        self.to_string().trim_end().replace('\n', " ; ")
    }
}

fn join(vs: &[Vertex]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n())?;
        match &self.structure {
            Structure::Rep(r) => writeln!(f, "rep {r}")?,
            Structure::Edges(g) => {
                writeln!(f, "edges {}", g.m())?;
                for (u, v) in g.edges() {
                    writeln!(f, "{u} {v}")?;
                }
            }
        }
        let line = |f: &mut fmt::Formatter<'_>, key: &str, vs: &[Vertex]| {
            if vs.is_empty() {
                writeln!(f, "{key}")
            } else {
                writeln!(f, "{key} {}", join(vs))
            }
        };
        line(f, "blue", &self.blue)?;
        line(f, "red", &self.red)
    }
}

impl std::str::FromStr for Instance {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// Parses `MOVES <count>` followed by `<from> <to>` lines. A leading `YES`
/// line, as printed by the solver, is accepted.
pub fn parse_moves(text: &str) -> Result<Vec<Move>, ParseError> {
    let mut lines = Lines::new(text);
    let mut head = lines
        .next_content()
        .ok_or_else(|| err(1, 1, "empty sequence file"))?;
    if words(head.1)[0].1 == "YES" {
        head = lines
            .next_content()
            .ok_or_else(|| err(head.0, 1, "missing `MOVES` line"))?;
    }
    let (ln, text) = head;
    let ws = words(text);
    let [(_, "MOVES"), c] = ws[..] else {
        return Err(err(ln, 1, "expected `MOVES <count>`"));
    };
    let count: usize = number(ln, c, "a move count")?;
    let mut moves = Vec::with_capacity(count);
    for i in 0..count {
        let (ml, mt) = lines
            .next_content()
            .ok_or_else(|| err(ln, c.0, format!("expected {count} moves, found {i}")))?;
        let mw = words(mt);
        let [a, b] = mw[..] else {
            return Err(err(ml, 1, "expected `<from> <to>`"));
        };
        let from = vertex(ml, a, u32::MAX as usize)?;
        let to = vertex(ml, b, u32::MAX as usize)?;
        moves.push(Move::new(from, to));
    }
    if let Some((extra, _)) = lines.next_content() {
        return Err(err(extra, 1, format!("more than {count} moves")));
    }
    Ok(moves)
}

/// `MOVES <count>` and one move per line.
pub fn format_moves(moves: &[Move]) -> String {
    let mut s = format!("MOVES {}\n", moves.len());
    for m in moves {
        s.push_str(&format!("{m}\n"));
    }
    s
}
