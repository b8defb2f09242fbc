//! Text formats.
//!
//! `.lhg` instances: first line `n m`, then `m` lines of space-separated,
//! strictly increasing 0-based vertex ids, one edge per line. Lines starting
//! with `#` are comments. The serializer emits edges in canonical
//! (lexicographic) order, so serialize . parse is the identity on canonical
//! input. Size-one edges are dropped at parse time and counted.
//!
//! Matchings: one matching per line, each a space-separated sorted edge-id
//! list. Colourings: CSV `edge_id,colour` with a header row.

use crate::generators::LatinSquare;
use crate::hypergraph::{EdgeId, Hypergraph, PartialEdgeColouring};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line")]
    MissingHeader,
    #[error("bad header {0:?}: expected \"n m\"")]
    BadHeader(String),
    #[error("line {line}: token {token:?} is not a vertex id")]
    NotAnInteger { line: usize, token: String },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { line: usize, vertex: u64, n: u32 },
    #[error("line {line}: duplicate vertex in edge")]
    DuplicateVertexInEdge { line: usize },
    #[error("line {line}: vertices not strictly increasing")]
    UnsortedEdge { line: usize },
    #[error("duplicate edge at line {line}")]
    DuplicateEdge { line: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: {token:?} is not a colour")]
    BadColour { line: usize, token: String },
    #[error("line {line}: expected \"edge_id,colour\"")]
    BadColouringRow { line: usize },
}

#[derive(Debug, Clone)]
pub struct ParsedHypergraph {
    pub hypergraph: Hypergraph,
    /// Size-one edges silently removed from the input.
    pub dropped_unit_edges: usize,
}

pub fn parse_lhg(text: &str) -> Result<ParsedHypergraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let mut it = header.split_ascii_whitespace();
    let n: u32 = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| ParseError::BadHeader(header.to_string()))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| ParseError::BadHeader(header.to_string()))?;
    if it.next().is_some() {
        return Err(ParseError::BadHeader(header.to_string()));
    }
    let _ = header_line;

    let mut edges: Vec<(Vec<u32>, usize)> = Vec::with_capacity(m);
    let mut dropped_unit_edges = 0usize;
    let mut found = 0usize;
    for (line, raw) in lines {
        found += 1;
        let mut edge: Vec<u32> = Vec::new();
        for token in raw.split_ascii_whitespace() {
            let value: u64 = token.parse().map_err(|_| ParseError::NotAnInteger {
                line,
                token: token.to_string(),
            })?;
            if value >= n as u64 {
                return Err(ParseError::VertexOutOfRange {
                    line,
                    vertex: value,
                    n,
                });
            }
            let v = value as u32;
            if let Some(&last) = edge.last() {
                if v == last {
                    return Err(ParseError::DuplicateVertexInEdge { line });
                }
                if v < last {
                    return Err(ParseError::UnsortedEdge { line });
                }
            }
            edge.push(v);
        }
        match edge.len() {
            1 => dropped_unit_edges += 1,
            _ => edges.push((edge, line)),
        }
    }
    if found != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found,
        });
    }
    edges.sort_unstable();
    for w in edges.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(ParseError::DuplicateEdge { line: w[1].1 });
        }
    }
    let hypergraph = Hypergraph::from_canonical(n, edges.into_iter().map(|(e, _)| e).collect());
    Ok(ParsedHypergraph {
        hypergraph,
        dropped_unit_edges,
    })
}

pub fn serialize_lhg(h: &Hypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", h.n(), h.m());
    for edge in h.edges() {
        let ids: Vec<String> = edge.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", ids.join(" "));
    }
    out
}

/// One matching per line: sorted edge ids, space separated.
pub fn serialize_matchings(matchings: &[Vec<EdgeId>]) -> String {
    let mut out = String::new();
    for m in matchings {
        let mut ids = m.clone();
        ids.sort_unstable();
        let ids: Vec<String> = ids.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", ids.join(" "));
    }
    out
}

pub fn parse_matchings(text: &str) -> Result<Vec<Vec<EdgeId>>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let mut ids = Vec::new();
        for token in raw.split_ascii_whitespace() {
            let id: u32 = token.parse().map_err(|_| ParseError::NotAnInteger {
                line,
                token: token.to_string(),
            })?;
            ids.push(id);
        }
        out.push(ids);
    }
    Ok(out)
}

/// CSV rows `edge_id,colour` sorted by edge id, with a header.
pub fn serialize_colouring(c: &PartialEdgeColouring) -> String {
    let mut out = String::from("edge_id,colour\n");
    for (e, colour) in c.iter() {
        let _ = writeln!(out, "{e},{colour}");
    }
    out
}

/// Reads a colouring for a host with `m` edges; `palette_size` becomes
/// max colour + 1.
pub fn parse_colouring(text: &str, m: usize) -> Result<PartialEdgeColouring, ParseError> {
    let mut colouring = PartialEdgeColouring::empty(m, 0);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') || raw == "edge_id,colour" {
            continue;
        }
        let mut parts = raw.split(',');
        let (Some(e), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ParseError::BadColouringRow { line });
        };
        let e: u32 = e.trim().parse().map_err(|_| ParseError::NotAnInteger {
            line,
            token: e.to_string(),
        })?;
        let c: u32 = c.trim().parse().map_err(|_| ParseError::BadColour {
            line,
            token: raw.to_string(),
        })?;
        if (e as usize) >= m {
            return Err(ParseError::VertexOutOfRange {
                line,
                vertex: e as u64,
                n: m as u32,
            });
        }
        colouring.assign(e, c);
    }
    Ok(colouring)
}

/// `n` lines of `n` space-separated symbols in `0..n`.
pub fn parse_latin(text: &str) -> Result<LatinSquare, ParseError> {
    let rows: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let n = rows.len();
    let mut cells = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let line = i + 1;
        for token in row.split_ascii_whitespace() {
            let s: u32 = token.parse().map_err(|_| ParseError::NotAnInteger {
                line,
                token: token.to_string(),
            })?;
            cells.push(s);
        }
    }
    LatinSquare::from_cells(n as u32, cells).map_err(|_| ParseError::BadHeader(
        "not a Latin square".to_string(),
    ))
}

pub fn serialize_latin(l: &LatinSquare) -> String {
    let mut out = String::new();
    let n = l.order();
    for r in 0..n {
        let row: Vec<String> = (0..n).map(|c| l.get(r, c).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
