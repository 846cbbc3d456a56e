//! Link graphs: the (k−1)-sets completing a vertex to an edge.

use std::collections::HashMap;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::hypergraph::{KPartiteHypergraph, VertexRef};
use crate::matching::Matching;

/// One element of a link: the vertices of an edge other than the center,
/// ordered by class.
pub type LinkTuple = SmallVec<[VertexRef; 3]>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    center: VertexRef,
    tuples: Vec<LinkTuple>,
}

impl LinkGraph {
    pub fn center(&self) -> VertexRef {
        self.center
    }

    pub fn tuples(&self) -> &[LinkTuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// For k = 3: the link as a bipartite edge list `(i, j)` between the two
    /// classes other than the center's, listed as `(lower class, higher class)`.
    pub fn bipartite(&self) -> Option<((usize, usize), Vec<(usize, usize)>)> {
        let first = self.tuples.first()?;
        if first.len() != 2 {
            return None;
        }
        let classes = (first[0].class, first[1].class);
        let pairs = self.tuples.iter().map(|t| (t[0].index, t[1].index)).collect();
        Some((classes, pairs))
    }

    /// Reassembles the edges `{center} ∪ T`.
    pub fn edges(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.tuples.iter().map(move |t| {
            let mut e = vec![0; t.len() + 1];
            e[self.center.class] = self.center.index;
            for v in t {
                e[v.class] = v.index;
            }
            e
        })
    }
}

/// L_x, or L_x(U_1, …, U_s) when `restriction` is given: only tuples inside
/// `∪ U_j` that meet every `U_j` at most once.
pub fn link_graph(
    h: &KPartiteHypergraph,
    x: VertexRef,
    restriction: Option<&[Vec<VertexRef>]>,
) -> Result<LinkGraph> {
    h.check_vertex(x)?;
    let owner: Option<HashMap<VertexRef, usize>> = match restriction {
        None => None,
        Some(sets) => {
            let mut owner = HashMap::new();
            for (j, set) in sets.iter().enumerate() {
                for &v in set {
                    h.check_vertex(v)?;
                    if owner.insert(v, j).is_some_and(|prev| prev != j) {
                        return Err(Error::InvalidParameter(format!(
                            "restriction sets overlap at {v}"
                        )));
                    }
                }
            }
            Some(owner)
        }
    };
    let mut tuples = Vec::new();
    'edges: for &id in h.incident(x) {
        let e = h.edge(id);
        let t: LinkTuple = e
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != x.class)
            .map(|(c, &i)| VertexRef::new(c, i))
            .collect();
        if let Some(owner) = &owner {
            let mut used: SmallVec<[usize; 4]> = SmallVec::new();
            for v in &t {
                match owner.get(v) {
                    Some(&j) if !used.contains(&j) => used.push(j),
                    _ => continue 'edges,
                }
            }
        }
        tuples.push(t);
    }
    Ok(LinkGraph { center: x, tuples })
}

/// L_x(M): the link of `x` restricted to the vertex sets of the given
/// matching edges (one restriction set per edge).
pub fn link_in_matching(
    h: &KPartiteHypergraph,
    x: VertexRef,
    matching: &Matching,
    positions: &[usize],
) -> Result<LinkGraph> {
    let sets: Vec<Vec<VertexRef>> = positions
        .iter()
        .map(|&p| {
            matching
                .edge(p)
                .iter()
                .enumerate()
                .map(|(c, &i)| VertexRef::new(c, i))
                .collect()
        })
        .collect();
    link_graph(h, x, Some(&sets))
}

/// L_S(M') = union of the restricted links of several centers.
pub fn link_union(
    h: &KPartiteHypergraph,
    centers: &[VertexRef],
    matching: &Matching,
    positions: &[usize],
) -> Result<Vec<LinkTuple>> {
    let mut out = Vec::new();
    for &x in centers {
        out.extend(link_in_matching(h, x, matching, positions)?.tuples);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counterexample() -> KPartiteHypergraph {
        KPartiteHypergraph::new(3, &[2, 2, 2], [[0, 0, 0], [0, 1, 1], [1, 1, 0], [1, 0, 1]]).unwrap()
    }

    #[test]
    fn complete_link_is_complete_bipartite() {
        let h = KPartiteHypergraph::complete(3, 4).unwrap();
        let l = link_graph(&h, VertexRef::new(1, 2), None).unwrap();
        assert_eq!(l.len(), 16);
        let ((a, b), pairs) = l.bipartite().unwrap();
        assert_eq!((a, b), (0, 2));
        assert_eq!(pairs.len(), 16);
    }

    #[test]
    fn counterexample_link_of_u1() {
        let l = link_graph(&counterexample(), VertexRef::new(0, 0), None).unwrap();
        let (_, pairs) = l.bipartite().unwrap();
        // v_1 w_1 and v_2 w_2
        assert_eq!(pairs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn restriction_to_matching_edges() {
        let h = KPartiteHypergraph::complete(3, 4).unwrap();
        let m = Matching::from_edges(&h, [[0, 0, 0], [1, 1, 1]]).unwrap();
        let x = VertexRef::new(0, 3);
        // a single edge: no pair can meet it at most once and still have two vertices
        assert!(link_in_matching(&h, x, &m, &[0]).unwrap().is_empty());
        let l = link_in_matching(&h, x, &m, &[0, 1]).unwrap();
        let (_, pairs) = l.bipartite().unwrap();
        assert_eq!(pairs, vec![(0, 1), (1, 0)]);
        for t in l.tuples() {
            assert!(t.iter().all(|v| v.index <= 1));
        }
    }

    #[test]
    fn overlapping_restriction_rejected() {
        let h = counterexample();
        let a = vec![VertexRef::new(1, 0)];
        let twice = [a.clone(), a.clone(), vec![VertexRef::new(2, 0)]];
        assert!(link_graph(&h, VertexRef::new(0, 0), Some(&twice)).is_err());
        let b = vec![VertexRef::new(1, 0), VertexRef::new(2, 0)];
        assert!(link_graph(&h, VertexRef::new(0, 0), Some(&[a, b])).is_err());
    }
}
