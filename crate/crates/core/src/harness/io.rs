//! Plain-text edge-list format.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v      (m lines, 0-based ends; line order is edge-id order)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_pair(line: usize, text: &str, what: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let [a, b] = fields.as_slice() else {
        return Err(parse_error(
            line,
            format!("expected two integers ({what}), found {text:?}"),
        ));
    };
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_error(line, format!("{s:?} is not a non-negative integer")))
    };
    Ok((num(a)?, num(b)?))
}

/// Parses the edge-list format. Edge ids follow line order.
pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing \"n m\" header"))?;
    let (n, m) = parse_pair(header_line, header, "header n m")?;
    let mut g = MultiGraph::new(n);
    let mut last_line = header_line;
    for (line, text) in lines {
        if g.edge_count() == m {
            return Err(parse_error(
                line,
                format!("more than the declared {m} edges"),
            ));
        }
        let (u, v) = parse_pair(line, text, "edge u v")?;
        if u == v {
            return Err(parse_error(line, format!("self-loop at vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(parse_error(
                line,
                format!("vertex out of range in \"{u} {v}\" (n = {n})"),
            ));
        }
        g.add_edge(VertexId(u), VertexId(v))
            .map_err(|e| parse_error(line, e.to_string()))?;
        last_line = line;
    }
    if g.edge_count() != m {
        return Err(parse_error(
            last_line,
            format!("declared {m} edges but found {}", g.edge_count()),
        ));
    }
    Ok(g)
}

/// Writes the edge-list format. Edges are written in id order, so the
/// round trip through [`parse_graph`] renumbers ids densely from 0.
pub fn emit_graph(g: &MultiGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        writeln!(out, "{} {}", e.u.0, e.v.0).expect("writing to a String");
    }
    out
}

pub fn read_graph_file(path: &Path) -> Result<MultiGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_error(0, format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text)
}
