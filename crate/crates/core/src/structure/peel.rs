use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// Simple undirected graph on `0..n` (no loops, no parallel edges).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![BTreeSet::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!("edge ({a},{b}) out of range for n={n}")));
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("loop at {a}")));
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Self { adj })
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).expect("valid")
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).min().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// Induced subgraph on `keep`, relabelled to `0..keep.len()` in order.
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut pos = vec![usize::MAX; self.order()];
        for (j, &v) in keep.iter().enumerate() {
            pos[v] = j;
        }
        let edges = self
            .edges()
            .filter(|&(a, b)| pos[a] != usize::MAX && pos[b] != usize::MAX)
            .map(|(a, b)| (pos[a], pos[b]));
        SimpleGraph::new(keep.len(), edges).expect("relabelled edges are valid")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Peeled {
    /// Surviving vertices, in original labels, ascending.
    pub kept: Vec<usize>,
    pub graph: SimpleGraph,
    pub deleted_edges: usize,
    /// e(G) > 2ε·C(n,2) held for the input.
    pub precondition_met: bool,
}

/// Repeatedly deletes vertices of degree below ε·n, with n the order of the
/// input graph. `None` means nothing survived.
pub fn peel_subgraph(g: &SimpleGraph, epsilon: f64) -> Result<Option<Peeled>> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} not in (0,1)")));
    }
    let n = g.order();
    let limit = epsilon * n as f64;
    let pairs = (n * n.saturating_sub(1) / 2) as f64;
    let precondition_met = g.edge_count() as f64 > 2.0 * epsilon * pairs;
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| (deg[v] as f64) < limit).collect();
    let mut queued = vec![false; n];
    for &v in &stack {
        queued[v] = true;
    }
    let mut deleted_edges = 0;
    while let Some(v) = stack.pop() {
        alive[v] = false;
        deleted_edges += deg[v];
        for &u in &g.adj[v] {
            if alive[u] {
                deg[u] -= 1;
                if !queued[u] && (deg[u] as f64) < limit {
                    queued[u] = true;
                    stack.push(u);
                }
            }
        }
        deg[v] = 0;
    }
    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if kept.is_empty() {
        return Ok(None);
    }
    Ok(Some(Peeled {
        graph: g.induced(&kept),
        kept,
        deleted_edges,
        precondition_met,
    }))
}
