use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, KPartiteHypergraph, VertexRef};

/// A set of pairwise vertex-disjoint edges with a per-class coverage index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "Vec<Vec<usize>>")]
pub struct Matching {
    edges: Vec<Edge>,
    /// `covered[class][index]` is the position in `edges` of the covering edge.
    covered: Vec<Vec<Option<usize>>>,
}

impl From<Matching> for Vec<Vec<usize>> {
    fn from(m: Matching) -> Self {
        m.edges.iter().map(|e| e.to_vec()).collect()
    }
}

impl Matching {
    pub fn new(class_sizes: &[usize]) -> Self {
        Self {
            edges: Vec::new(),
            covered: class_sizes.iter().map(|&n| vec![None; n]).collect(),
        }
    }

    pub fn empty_for(h: &KPartiteHypergraph) -> Self {
        Self::new(h.class_sizes())
    }

    /// Builds a matching of `h`, checking that every edge belongs to `h` and
    /// that the edges are pairwise disjoint.
    pub fn from_edges<I, E>(h: &KPartiteHypergraph, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut m = Self::empty_for(h);
        for e in edges {
            let e = e.as_ref();
            if !h.contains_edge(e) {
                return Err(Error::NotAMatching(format!("{e:?} is not an edge")));
            }
            m.insert(e)?;
        }
        Ok(m)
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.covered.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, pos: usize) -> &Edge {
        &self.edges[pos]
    }

    pub fn is_covered(&self, v: VertexRef) -> bool {
        self.covering(v).is_some()
    }

    /// Position of the edge covering `v`.
    pub fn covering(&self, v: VertexRef) -> Option<usize> {
        self.covered.get(v.class)?.get(v.index).copied().flatten()
    }

    /// Whether every vertex of `e` is free.
    pub fn is_free(&self, e: &[usize]) -> bool {
        e.iter()
            .enumerate()
            .all(|(c, &i)| self.covered[c].get(i).is_some_and(Option::is_none))
    }

    pub fn insert(&mut self, e: &[usize]) -> Result<usize> {
        if e.len() != self.covered.len() {
            return Err(Error::NotAMatching(format!("{e:?} has wrong arity")));
        }
        for (c, &i) in e.iter().enumerate() {
            match self.covered[c].get(i) {
                None => {
                    return Err(Error::VertexOutOfRange { class: c, index: i });
                }
                Some(Some(_)) => {
                    return Err(Error::NotAMatching(format!(
                        "{e:?} meets an edge already in the matching at ({c}, {i})"
                    )));
                }
                Some(None) => {}
            }
        }
        let pos = self.edges.len();
        for (c, &i) in e.iter().enumerate() {
            self.covered[c][i] = Some(pos);
        }
        self.edges.push(Edge::from_slice(e));
        Ok(pos)
    }

    /// Removes the edge at `pos` (the last edge takes its place).
    pub fn remove(&mut self, pos: usize) -> Edge {
        let e = self.edges.swap_remove(pos);
        for (c, &i) in e.iter().enumerate() {
            self.covered[c][i] = None;
        }
        if pos < self.edges.len() {
            let moved = self.edges[pos].clone();
            for (c, &i) in moved.iter().enumerate() {
                self.covered[c][i] = Some(pos);
            }
        }
        e
    }

    pub fn covered_count(&self) -> usize {
        self.edges.len() * self.covered.len()
    }

    pub fn uncovered(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.covered[class]
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(i, _)| i)
    }

    pub fn uncovered_vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        (0..self.covered.len()).flat_map(move |c| self.uncovered(c).map(move |i| VertexRef::new(c, i)))
    }

    /// Covers every vertex of every class.
    pub fn is_perfect(&self) -> bool {
        self.covered.iter().all(|c| c.iter().all(Option::is_some))
    }

    /// Independent re-check against `h`: edges exist, are disjoint, and the
    /// coverage index agrees with the edge list.
    pub fn verify(&self, h: &KPartiteHypergraph) -> Result<()> {
        if self.class_sizes() != h.class_sizes() {
            return Err(Error::DimensionMismatch(format!(
                "matching over {:?}, hypergraph over {:?}",
                self.class_sizes(),
                h.class_sizes()
            )));
        }
        let mut seen: Vec<Vec<bool>> = h.class_sizes().iter().map(|&n| vec![false; n]).collect();
        for (pos, e) in self.edges.iter().enumerate() {
            if !h.contains_edge(e) {
                return Err(Error::NotAMatching(format!("{e:?} is not an edge")));
            }
            for (c, &i) in e.iter().enumerate() {
                if std::mem::replace(&mut seen[c][i], true) {
                    return Err(Error::NotAMatching(format!("vertex ({c}, {i}) covered twice")));
                }
                if self.covered[c][i] != Some(pos) {
                    return Err(Error::NotAMatching("coverage index out of sync".into()));
                }
            }
        }
        let indexed = self.covered.iter().flatten().filter(|x| x.is_some()).count();
        if indexed != self.covered_count() {
            return Err(Error::NotAMatching("coverage index out of sync".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_keeps_index_consistent() {
        let h = KPartiteHypergraph::complete(3, 3).unwrap();
        let mut m = Matching::empty_for(&h);
        m.insert(&[0, 0, 0]).unwrap();
        m.insert(&[1, 2, 1]).unwrap();
        m.insert(&[2, 1, 2]).unwrap();
        assert!(m.is_perfect());
        assert!(m.insert(&[0, 1, 1]).is_err());
        let e = m.remove(0);
        assert_eq!(e.as_slice(), &[0, 0, 0]);
        assert_eq!(m.covering(VertexRef::new(0, 2)), Some(0));
        m.verify(&h).unwrap();
        assert_eq!(m.uncovered(1).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn from_edges_rejects_non_edges_and_overlaps() {
        let h = KPartiteHypergraph::new(3, &[2, 2, 2], [[0, 0, 0], [0, 1, 1]]).unwrap();
        assert!(Matching::from_edges(&h, [[1, 1, 1]]).is_err());
        assert!(Matching::from_edges(&h, [[0, 0, 0], [0, 1, 1]]).is_err());
        assert_eq!(Matching::from_edges(&h, [[0, 1, 1]]).unwrap().len(), 1);
    }
}
