//! Plain-text graph format.
//!
//! ```text
//! # comment
//! n m
//! u v
//! u v opt
//! ```
//!
//! Vertices are 0-based. A trailing `opt` marks the arc as optional (it need
//! not be dominated).

use std::fmt::Write as _;

use super::{ArcId, Digraph};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Digraph,
    /// Indices of arcs marked `opt`, increasing.
    pub optional: Vec<ArcId>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a non-negative integer, got `{tok}`")))
}

/// Lines with comments and surrounding whitespace removed, numbered from 1.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing `n m` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n = parse_usize(toks[0], hline)?;
    let m = parse_usize(toks[1], hline)?;
    let mut arcs = Vec::with_capacity(m);
    let mut optional = Vec::new();
    for (lno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [u, v] => arcs.push((parse_usize(u, lno)?, parse_usize(v, lno)?)),
            [u, v, "opt"] => {
                optional.push(arcs.len());
                arcs.push((parse_usize(u, lno)?, parse_usize(v, lno)?));
            }
            _ => return Err(parse_err(lno, "expected `u v` or `u v opt`")),
        }
    }
    if arcs.len() != m {
        return Err(parse_err(hline, format!("header announces {m} arcs, found {}", arcs.len())));
    }
    let graph = Digraph::new(n, arcs)?;
    Ok(ParsedGraph { graph, optional })
}

pub fn write_graph(g: &Digraph, optional: &[ArcId]) -> String {
    let mut is_opt = vec![false; g.m()];
    for &a in optional {
        is_opt[a] = true;
    }
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (a, &(u, v)) in g.arcs().iter().enumerate() {
        if is_opt[a] {
            writeln!(out, "{u} {v} opt").unwrap();
        } else {
            writeln!(out, "{u} {v}").unwrap();
        }
    }
    out
}
