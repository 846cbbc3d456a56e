use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{KPartiteHypergraph, VertexRef};
use crate::matching::Matching;

/// `x` and matching edge `edge` are `class`-connected: more than the
/// threshold number of edges contain `x` and the class-`class` vertex of
/// `edge` and avoid every other matched vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IConnection {
    pub edge: usize,
    pub class: usize,
    pub count: usize,
}

/// (2k)^{k-2}.
pub fn default_connection_threshold(k: usize) -> usize {
    (2 * k).pow(k as u32 - 2)
}

/// All i-connections of the uncovered vertex `x`, ordered by matching
/// position and then class.
pub fn i_connections(
    h: &KPartiteHypergraph,
    m: &Matching,
    x: VertexRef,
    threshold: Option<usize>,
) -> Result<Vec<IConnection>> {
    h.check_vertex(x)?;
    m.verify(h)?;
    if m.is_covered(x) {
        return Err(Error::InvalidParameter(format!("{x} is covered by the matching")));
    }
    let threshold = threshold.unwrap_or_else(|| default_connection_threshold(h.k()));
    let mut counts = vec![vec![0usize; h.k()]; m.len()];
    for &id in h.incident(x) {
        let e = h.edge(id);
        let mut hit: Option<(usize, usize)> = None;
        let mut clean = true;
        for (c, &i) in e.iter().enumerate() {
            if let Some(p) = m.covering(VertexRef::new(c, i)) {
                if hit.is_some() {
                    clean = false;
                    break;
                }
                hit = Some((p, c));
            }
        }
        if let (true, Some((p, c))) = (clean, hit) {
            counts[p][c] += 1;
        }
    }
    let mut out = Vec::new();
    for (p, per) in counts.iter().enumerate() {
        for (c, &count) in per.iter().enumerate() {
            if count > threshold {
                out.push(IConnection { edge: p, class: c, count });
            }
        }
    }
    Ok(out)
}
