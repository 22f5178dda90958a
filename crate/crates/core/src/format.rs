//! Plain-text instance format.
//!
//! ```text
//! c any comment
//! p dg <n> <m>
//! e <u> <v>
//! ```
//!
//! Vertex ids are 0-based. The problem line comes before any edge and the
//! number of `e` lines must equal `m`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::Digraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        msg: msg.into(),
    })
}

fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    match token {
        Some(t) => t
            .parse()
            .or_else(|_| err(line, format!("bad {what} `{t}`"))),
        None => err(line, format!("missing {what}")),
    }
}

pub fn parse_instance(text: &str) -> Result<Digraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let mut tokens = raw.split_whitespace();
        let Some(kind) = tokens.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return err(line, "duplicate problem line");
                }
                if tokens.next() != Some("dg") {
                    return err(line, "expected `p dg <n> <m>`");
                }
                let n = number(tokens.next(), line, "vertex count")?;
                let m = number(tokens.next(), line, "edge count")?;
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return err(line, "edge before problem line");
                };
                let u = number(tokens.next(), line, "tail")?;
                let v = number(tokens.next(), line, "head")?;
                if u >= n || v >= n {
                    return err(line, format!("edge ({u}, {v}) out of range for n = {n}"));
                }
                if u == v {
                    return err(line, format!("loop at {u}"));
                }
                edges.push((u, v));
            }
            other => return err(line, format!("unknown line type `{other}`")),
        }
        if let Some(extra) = tokens.next() {
            return err(line, format!("trailing token `{extra}`"));
        }
    }
    let Some((n, m)) = header else {
        return err(last_line.max(1), "missing problem line");
    };
    if edges.len() != m {
        return err(
            last_line.max(1),
            format!("expected {m} edges, found {}", edges.len()),
        );
    }
    Digraph::build(n, edges).or_else(|e| err(last_line, e.to_string()))
}

/// Serializes with one `c` line per entry of `comments`.
pub fn write_instance(g: &Digraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "c {line}");
        }
    }
    let _ = writeln!(out, "p dg {} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}
