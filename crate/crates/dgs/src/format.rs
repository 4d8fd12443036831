//! Text formats for signed graphs.
//!
//! Matrix format: the first line holds `n`, the next `n` lines hold the
//! rows of the adjacency matrix with entries in `{-1, 0, 1}`.
//!
//! Edge-list format: the first line holds `n m`, followed by `m` lines
//! `u v s` with 0-based vertices and `s` one of `+1`, `-1`, `1`.
//!
//! In both, `#` starts a comment and blank lines are skipped.

use std::fmt::Write as _;

use dgs_core::graph::{Sign, SignedGraph};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Matrix,
    EdgeList,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }

    fn parse_usize(&self, what: &str) -> Result<usize, ParseError> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected {what}, found `{}`", self.text)))
    }
}

/// Non-empty lines after comment stripping, tokenized with 1-based positions.
fn content_lines(text: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (byte, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(byte),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &line[s..byte],
                        line: idx + 1,
                        column: line[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push((idx + 1, tokens));
        }
    }
    out
}

fn end_of_input(text: &str) -> ParseError {
    ParseError {
        line: text.lines().count().max(1),
        column: text.lines().last().map_or(0, |l| l.chars().count()) + 1,
        message: "unexpected end of input".into(),
    }
}

/// Guesses the format from the header line: one token for a matrix, two
/// for an edge list.
pub fn detect_format(text: &str) -> Result<Format, ParseError> {
    let lines = content_lines(text);
    let (_, header) = lines.first().ok_or_else(|| end_of_input(text))?;
    match header.len() {
        1 => Ok(Format::Matrix),
        2 => Ok(Format::EdgeList),
        _ => Err(header[2].error("header must be `n` (matrix) or `n m` (edge list)")),
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<SignedGraph, ParseError> {
    match format {
        Format::Matrix => parse_matrix(text),
        Format::EdgeList => parse_edge_list(text),
    }
}

pub fn parse_auto(text: &str) -> Result<SignedGraph, ParseError> {
    parse_graph(text, detect_format(text)?)
}

pub fn parse_matrix(text: &str) -> Result<SignedGraph, ParseError> {
    let lines = content_lines(text);
    let mut iter = lines.iter();
    let (_, header) = iter.next().ok_or_else(|| end_of_input(text))?;
    if header.len() != 1 {
        return Err(header[1].error("matrix header must contain only n"));
    }
    let n = header[0].parse_usize("vertex count")?;
    let mut rows: Vec<Vec<(i8, Token<'_>)>> = Vec::with_capacity(n);
    for i in 0..n {
        let (line, tokens) = iter.next().ok_or_else(|| end_of_input(text))?;
        if tokens.len() != n {
            let column = tokens.get(n).map_or(tokens.last().map_or(1, |t| t.column + t.text.len()), |t| t.column);
            return Err(ParseError {
                line: *line,
                column,
                message: format!("row {i} has {} entries, expected {n}", tokens.len()),
            });
        }
        let mut row = Vec::with_capacity(n);
        for t in tokens {
            let v = match t.text {
                "0" => 0,
                "1" | "+1" => 1,
                "-1" => -1,
                other => return Err(t.error(format!("entry `{other}` is not in {{-1, 0, 1}}"))),
            };
            row.push((v, *t));
        }
        rows.push(row);
    }
    if let Some((_, tokens)) = iter.next() {
        return Err(tokens[0].error("trailing data after the last matrix row"));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        let (d, t) = rows[i][i];
        if d != 0 {
            return Err(t.error(format!("diagonal entry ({i}, {i}) must be 0")));
        }
        for j in i + 1..n {
            let (a, _) = rows[i][j];
            let (b, t) = rows[j][i];
            if a != b {
                return Err(t.error(format!("matrix is not symmetric at ({j}, {i})")));
            }
            if let Some(s) = Sign::from_value(a as i64) {
                edges.push((i, j, s));
            }
        }
    }
    Ok(SignedGraph::new(n, edges).expect("validated above"))
}

pub fn parse_edge_list(text: &str) -> Result<SignedGraph, ParseError> {
    let lines = content_lines(text);
    let mut iter = lines.iter();
    let (_, header) = iter.next().ok_or_else(|| end_of_input(text))?;
    if header.len() != 2 {
        let t = header.get(2).unwrap_or(&header[0]);
        return Err(t.error("edge-list header must be `n m`"));
    }
    let n = header[0].parse_usize("vertex count")?;
    let m = header[1].parse_usize("edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for _ in 0..m {
        let (line, tokens) = iter.next().ok_or_else(|| end_of_input(text))?;
        if tokens.len() != 3 {
            return Err(ParseError {
                line: *line,
                column: tokens.get(3).map_or(1, |t| t.column),
                message: format!("expected `u v s`, found {} fields", tokens.len()),
            });
        }
        let u = tokens[0].parse_usize("vertex")?;
        let v = tokens[1].parse_usize("vertex")?;
        for (t, x) in [(&tokens[0], u), (&tokens[1], v)] {
            if x >= n {
                return Err(t.error(format!("vertex {x} out of range 0..{n}")));
            }
        }
        if u == v {
            return Err(tokens[1].error(format!("self-loop at vertex {u}")));
        }
        let sign = match tokens[2].text {
            "1" | "+1" => Sign::Plus,
            "-1" => Sign::Minus,
            other => return Err(tokens[2].error(format!("sign `{other}` must be +1, -1 or 1"))),
        };
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(tokens[0].error(format!("duplicate edge {{{u}, {v}}}")));
        }
        edges.push((u, v, sign));
    }
    if let Some((_, tokens)) = iter.next() {
        return Err(tokens[0].error(format!("more than the declared {m} edges")));
    }
    Ok(SignedGraph::new(n, edges).expect("validated above"))
}

/// Canonical matrix text: entries right-aligned in width 2.
pub fn to_matrix_text(g: &SignedGraph) -> String {
    let mut out = format!("{}\n", g.n());
    for row in g.adjacency_i8() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Canonical edge list: edges in `(u, v)` order with `u < v`, signs `+1`/`-1`.
pub fn to_edge_list_text(g: &SignedGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edges().len());
    for &(u, v, s) in g.edges() {
        let _ = writeln!(out, "{u} {v} {}", if s == Sign::Plus { "+1" } else { "-1" });
    }
    out
}

pub fn serialize(g: &SignedGraph, format: Format) -> String {
    match format {
        Format::Matrix => to_matrix_text(g),
        Format::EdgeList => to_edge_list_text(g),
    }
}
