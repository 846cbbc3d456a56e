//! Plain-text hypergraph format, version 1.
//!
//! ```text
//! # optional comments
//! k=3 n=2,2,2
//! e 0 0 0
//! e 0 1 1
//! ```
//!
//! The header comes first (after comments and blank lines). Each edge line
//! lists class-local, 0-based indices in class order. A matching file uses
//! the same layout, with its edges as the edge lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::KPartiteHypergraph;
use crate::matching::Matching;

pub fn write_hypergraph(h: &KPartiteHypergraph) -> String {
    write_edges(h.class_sizes(), h.edges().iter().map(|e| e.as_slice()))
}

pub fn write_matching(m: &Matching) -> String {
    write_edges(&m.class_sizes(), m.edges().iter().map(|e| e.as_slice()))
}

fn write_edges<'a>(sizes: &[usize], edges: impl Iterator<Item = &'a [usize]>) -> String {
    let mut out = String::new();
    let sizes: Vec<String> = sizes.iter().map(usize::to_string).collect();
    let _ = writeln!(out, "k={} n={}", sizes.len(), sizes.join(","));
    for e in edges {
        out.push('e');
        for i in e {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<KPartiteHypergraph> {
    let (k, sizes, edges) = parse_raw(text)?;
    KPartiteHypergraph::new(k, &sizes, edges)
}

/// Parses a matching file and checks it against `h`.
pub fn parse_matching(text: &str, h: &KPartiteHypergraph) -> Result<Matching> {
    let (_, sizes, edges) = parse_raw(text)?;
    if sizes != h.class_sizes() {
        return Err(Error::DimensionMismatch(format!(
            "matching file declares {sizes:?}, hypergraph has {:?}",
            h.class_sizes()
        )));
    }
    Matching::from_edges(h, edges)
}

type Raw = (usize, Vec<usize>, Vec<Vec<usize>>);

fn parse_raw(text: &str) -> Result<Raw> {
    let mut header: Option<(usize, Vec<usize>)> = None;
    let mut edges = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line_no = no + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match &header {
            None => header = Some(parse_header(content).map_err(err)?),
            Some((k, _)) => {
                let mut parts = content.split_whitespace();
                if parts.next() != Some("e") {
                    return Err(err(format!("expected an edge line, got {content:?}")));
                }
                let e = parts
                    .map(|p| p.parse::<usize>().map_err(|_| err(format!("bad index {p:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                if e.len() != *k {
                    return Err(err(format!("edge has {} indices, expected {k}", e.len())));
                }
                edges.push(e);
            }
        }
    }
    let (k, sizes) = header.ok_or(Error::Parse {
        line: 0,
        message: "missing header".into(),
    })?;
    Ok((k, sizes, edges))
}

fn parse_header(content: &str) -> std::result::Result<(usize, Vec<usize>), String> {
    let mut k = None;
    let mut sizes = None;
    for field in content.split_whitespace() {
        if let Some(v) = field.strip_prefix("k=") {
            k = Some(v.parse::<usize>().map_err(|_| format!("bad k {v:?}"))?);
        } else if let Some(v) = field.strip_prefix("n=") {
            sizes = Some(
                v.split(',')
                    .map(|s| s.parse::<usize>().map_err(|_| format!("bad class size {s:?}")))
                    .collect::<std::result::Result<Vec<_>, _>>()?,
            );
        } else {
            return Err(format!("unexpected header field {field:?}"));
        }
    }
    let k = k.ok_or("header lacks k=")?;
    let sizes = sizes.ok_or("header lacks n=")?;
    if sizes.len() != k {
        return Err(format!("header lists {} class sizes for k={k}", sizes.len()));
    }
    Ok((k, sizes))
}
