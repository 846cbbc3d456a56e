//! Edge types of matching-edge pairs and the matching graph they colour.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{KPartiteHypergraph, VertexRef};
use crate::matching::Matching;

/// `(a_1, a_2, a_3)`: for each centre `x_i`, how many of its two candidate
/// pairs across `e_1, e_2` complete it to an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeType(pub [u8; 3]);

impl EdgeType {
    pub fn sum(&self) -> u8 {
        self.0.iter().sum()
    }

    pub fn matches(&self, pattern: [Option<u8>; 3]) -> bool {
        self.0.iter().zip(pattern).all(|(&a, p)| p.is_none_or(|p| p == a))
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Which of the two path shapes a type-(1,2,1) pair takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// `x_1` uses `v_{2,2} v_{3,1}`, `x_3` uses `v_{1,1} v_{2,2}`.
    Forward,
    /// `x_1` uses `v_{2,1} v_{3,2}`, `x_3` uses `v_{1,2} v_{2,1}`.
    Reverse,
    /// The single pairs at `x_1` and `x_3` are disjoint; together with a pair
    /// at `x_2` they give three disjoint edges.
    Augmenting,
}

fn check_transversal(h: &KPartiteHypergraph, s: &[VertexRef; 3]) -> Result<()> {
    if h.k() != 3 {
        return Err(Error::InvalidParameter(format!("edge types need k=3, got k={}", h.k())));
    }
    for (i, &x) in s.iter().enumerate() {
        h.check_vertex(x)?;
        if x.class != i {
            return Err(Error::InvalidParameter(format!("S[{i}] = {x} is not in class {i}")));
        }
    }
    Ok(())
}

/// The two candidate pairs for centre `i`: `(e1[j], e2[l])` and `(e2[j], e1[l])`
/// where `j < l` are the other classes. Returned as full edges through `x`.
fn candidate_edges(x: VertexRef, e1: &[usize], e2: &[usize]) -> [[usize; 3]; 2] {
    let i = x.class;
    let (j, l) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut a = [0; 3];
    a[i] = x.index;
    a[j] = e1[j];
    a[l] = e2[l];
    let mut b = [0; 3];
    b[i] = x.index;
    b[j] = e2[j];
    b[l] = e1[l];
    [a, b]
}

fn presence(h: &KPartiteHypergraph, x: VertexRef, e1: &[usize], e2: &[usize]) -> [bool; 2] {
    candidate_edges(x, e1, e2).map(|e| h.contains_edge(&e))
}

fn validate_pair(h: &KPartiteHypergraph, s: &[VertexRef; 3], e1: &[usize], e2: &[usize]) -> Result<()> {
    check_transversal(h, s)?;
    for e in [e1, e2] {
        if e.len() != 3 {
            return Err(Error::EdgeArity {
                edge: e.to_vec(),
                expected: 3,
                got: e.len(),
            });
        }
        for (c, &i) in e.iter().enumerate() {
            h.check_vertex(VertexRef::new(c, i))?;
        }
    }
    if e1.iter().zip(e2).any(|(a, b)| a == b) {
        return Err(Error::InvalidParameter(format!("{e1:?} and {e2:?} overlap")));
    }
    if s.iter().any(|x| e1[x.class] == x.index || e2[x.class] == x.index) {
        return Err(Error::InvalidParameter("S meets the pair".into()));
    }
    Ok(())
}

/// Type of the pair `{e1, e2}` with respect to the transversal `s`.
pub fn edge_pair_type(h: &KPartiteHypergraph, s: &[VertexRef; 3], e1: &[usize], e2: &[usize]) -> Result<EdgeType> {
    validate_pair(h, s, e1, e2)?;
    Ok(type_unchecked(h, s, e1, e2))
}

fn type_unchecked(h: &KPartiteHypergraph, s: &[VertexRef; 3], e1: &[usize], e2: &[usize]) -> EdgeType {
    EdgeType(s.map(|x| presence(h, x, e1, e2).iter().filter(|&&p| p).count() as u8))
}

/// Shape of a type-(1,2,1) pair, or `None` for any other type.
pub fn orientation(h: &KPartiteHypergraph, s: &[VertexRef; 3], e1: &[usize], e2: &[usize]) -> Result<Option<Orientation>> {
    validate_pair(h, s, e1, e2)?;
    if type_unchecked(h, s, e1, e2) != EdgeType([1, 2, 1]) {
        return Ok(None);
    }
    // presence()[0] at x_1 is v_{2,1}v_{3,2}, [1] is v_{2,2}v_{3,1};
    // at x_3, [0] is v_{1,1}v_{2,2}, [1] is v_{1,2}v_{2,1}
    let p1 = presence(h, s[0], e1, e2);
    let p3 = presence(h, s[2], e1, e2);
    Ok(Some(match (p1[1], p3[0]) {
        (true, true) => Orientation::Forward,
        (false, false) => Orientation::Reverse,
        _ => Orientation::Augmenting,
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchingGraph {
    pub s: [VertexRef; 3],
    pub order: usize,
    pub counts: BTreeMap<EdgeType, usize>,
    /// Per-pair colours `(p, q, type)` with `p < q`, when requested.
    pub pairs: Option<Vec<(usize, usize, EdgeType)>>,
}

impl MatchingGraph {
    /// e_S(a_1, a_2, a_3).
    pub fn count(&self, t: EdgeType) -> usize {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    /// Aggregate count with wildcards, e.g. e_S(2, *, *).
    pub fn count_matching(&self, pattern: [Option<u8>; 3]) -> usize {
        self.counts
            .iter()
            .filter(|(t, _)| t.matches(pattern))
            .map(|(_, &c)| c)
            .sum()
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

/// Colours every pair of edges of `m` by its type with respect to `s`.
pub fn matching_graph(h: &KPartiteHypergraph, m: &Matching, s: &[VertexRef; 3], keep_pairs: bool) -> Result<MatchingGraph> {
    check_transversal(h, s)?;
    m.verify(h)?;
    if let Some(x) = s.iter().find(|&&x| m.is_covered(x)) {
        return Err(Error::InvalidParameter(format!("{x} is covered by the matching")));
    }
    let mut counts = BTreeMap::new();
    let mut pairs = keep_pairs.then(Vec::new);
    let edges = m.edges();
    for p in 0..edges.len() {
        for q in p + 1..edges.len() {
            let t = type_unchecked(h, s, &edges[p], &edges[q]);
            *counts.entry(t).or_insert(0) += 1;
            if let Some(list) = pairs.as_mut() {
                list.push((p, q, t));
            }
        }
    }
    Ok(MatchingGraph {
        s: *s,
        order: edges.len(),
        counts,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_hprime;

    fn s_of(a: usize, b: usize, c: usize) -> [VertexRef; 3] {
        [VertexRef::new(0, a), VertexRef::new(1, b), VertexRef::new(2, c)]
    }

    #[test]
    fn complete_and_empty() {
        let k = KPartiteHypergraph::complete(3, 4).unwrap();
        let s = s_of(3, 3, 3);
        assert_eq!(edge_pair_type(&k, &s, &[0, 0, 0], &[1, 1, 1]).unwrap(), EdgeType([2, 2, 2]));
        let e = KPartiteHypergraph::empty(&[4, 4, 4]).unwrap();
        assert_eq!(edge_pair_type(&e, &s, &[0, 0, 0], &[1, 1, 1]).unwrap(), EdgeType([0, 0, 0]));
        assert!(edge_pair_type(&k, &s, &[0, 0, 0], &[0, 1, 1]).is_err());
        assert!(edge_pair_type(&k, &s, &[3, 0, 0], &[1, 1, 1]).is_err());
    }

    #[test]
    fn hprime_uuw_pairs() {
        // W_i = {6,7,8}; e1, e2 are U U W_3 edges and S lies in U
        let h = build_hprime(9, [3, 3, 3]).unwrap();
        let s = s_of(0, 0, 0);
        let t = edge_pair_type(&h, &s, &[1, 1, 6], &[2, 2, 7]).unwrap();
        assert_eq!(t.0[2], 0);
        assert_eq!(t, EdgeType([2, 2, 0]));
        // x_3 ∈ W_3 sees two U U pairs
        let s = [VertexRef::new(0, 0), VertexRef::new(1, 0), VertexRef::new(2, 8)];
        assert_eq!(edge_pair_type(&h, &s, &[1, 1, 6], &[2, 2, 7]).unwrap().0[2], 2);
    }

    #[test]
    fn matching_graph_counts() {
        let k = KPartiteHypergraph::complete(3, 4).unwrap();
        let m = Matching::from_edges(&k, [[0, 0, 0], [1, 1, 1], [2, 2, 2]]).unwrap();
        let g = matching_graph(&k, &m, &s_of(3, 3, 3), true).unwrap();
        assert_eq!(g.count(EdgeType([2, 2, 2])), 3);
        assert_eq!(g.total(), 3);
        assert_eq!(g.count_matching([Some(2), None, None]), 3);
        assert_eq!(g.pairs.unwrap().len(), 3);
        assert!(matching_graph(&k, &m, &s_of(0, 3, 3), false).is_err());
    }

    #[test]
    fn orientations() {
        // S = (x1, x2, x3) = index 3 in each class, e1 = (0,0,0), e2 = (1,1,1)
        let s = s_of(3, 3, 3);
        let x2_pairs = [[0, 3, 1], [1, 3, 0]];
        let forward = [[3, 1, 0], [0, 1, 3]];
        let reverse = [[3, 0, 1], [1, 0, 3]];
        let mixed = [[3, 1, 0], [1, 0, 3]];
        for (edges, want) in [
            (forward, Orientation::Forward),
            (reverse, Orientation::Reverse),
            (mixed, Orientation::Augmenting),
        ] {
            let h = KPartiteHypergraph::new(3, &[4, 4, 4], edges.iter().chain(&x2_pairs)).unwrap();
            assert_eq!(edge_pair_type(&h, &s, &[0, 0, 0], &[1, 1, 1]).unwrap(), EdgeType([1, 2, 1]));
            assert_eq!(orientation(&h, &s, &[0, 0, 0], &[1, 1, 1]).unwrap(), Some(want));
        }
        let k = KPartiteHypergraph::complete(3, 4).unwrap();
        assert_eq!(orientation(&k, &s, &[0, 0, 0], &[1, 1, 1]).unwrap(), None);
    }
}
