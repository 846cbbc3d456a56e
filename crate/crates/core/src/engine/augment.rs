//! Exchange moves: release up to `depth` matching edges and insert one more
//! edge than was released, using only the released vertices and uncovered ones.

use itertools::Itertools;

use super::greedy::greedy_matching;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, KPartiteHypergraph, VertexRef};
use crate::matching::Matching;

pub const MAX_DEPTH: usize = 3;

/// One improving move, or `None` if no move releasing at most `depth` edges
/// exists. Moves are tried in a fixed order: plain insertion first, then
/// released subsets by size and lexicographic position.
pub fn augment_local(h: &KPartiteHypergraph, m: &Matching, depth: usize) -> Result<Option<Matching>> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(Error::InvalidParameter(format!("depth {depth} not in 1..={MAX_DEPTH}")));
    }
    m.verify(h)?;
    if let Some(e) = h.edges().iter().find(|e| m.is_free(e)) {
        let mut out = m.clone();
        out.insert(e)?;
        return Ok(Some(out));
    }
    let k = h.k();
    let mut search = Search {
        h,
        m,
        in_r: vec![false; m.len()],
        used: h.class_sizes().iter().map(|&n| vec![false; n]).collect(),
        order: Vec::new(),
        cand: Vec::new(),
        chosen: Vec::new(),
    };
    for r in 1..=depth.min(m.len()) {
        for subset in (0..m.len()).combinations(r) {
            if let Some(found) = search.try_subset(&subset, k) {
                let kept = (0..m.len()).filter(|p| !subset.contains(p)).map(|p| m.edge(p).clone());
                let out = Matching::from_edges(h, kept.chain(found))?;
                return Ok(Some(out));
            }
        }
    }
    Ok(None)
}

struct Search<'a> {
    h: &'a KPartiteHypergraph,
    m: &'a Matching,
    in_r: Vec<bool>,
    used: Vec<Vec<bool>>,
    order: Vec<VertexRef>,
    cand: Vec<Vec<usize>>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn allowed(&self, v: VertexRef) -> bool {
        self.m.covering(v).is_none_or(|p| self.in_r[p])
    }

    fn try_subset(&mut self, subset: &[usize], k: usize) -> Option<Vec<Edge>> {
        for &p in subset {
            self.in_r[p] = true;
        }
        self.order.clear();
        self.cand.clear();
        for &p in subset {
            for (c, &i) in self.m.edge(p).iter().enumerate() {
                self.order.push(VertexRef::new(c, i));
            }
        }
        let mut linked = vec![false; subset.len()];
        for (slot, &v) in self.order.iter().enumerate() {
            let list: Vec<usize> = self
                .h
                .incident(v)
                .iter()
                .copied()
                .filter(|&id| {
                    self.h
                        .edge(id)
                        .iter()
                        .enumerate()
                        .all(|(c, &i)| self.allowed(VertexRef::new(c, i)))
                })
                .collect();
            if !list.is_empty() {
                linked[slot / k] = true;
            }
            self.cand.push(list);
        }
        let r = subset.len();
        let result = if linked.iter().all(|&l| l) {
            self.chosen.clear();
            let skip_budget = k * r - (r + 1);
            if self.dfs(0, skip_budget, r + 1) {
                Some(self.chosen.iter().map(|&id| self.h.edge(id).clone()).collect())
            } else {
                None
            }
        } else {
            None
        };
        for &p in subset {
            self.in_r[p] = false;
        }
        result
    }

    fn dfs(&mut self, idx: usize, skips_left: usize, want: usize) -> bool {
        if self.chosen.len() == want {
            return true;
        }
        let Some(&v) = self.order.get(idx) else {
            return false;
        };
        if self.used[v.class][v.index] {
            return self.dfs(idx + 1, skips_left, want);
        }
        for j in 0..self.cand[idx].len() {
            let id = self.cand[idx][j];
            let e = self.h.edge(id);
            if e.iter().enumerate().any(|(c, &i)| self.used[c][i]) {
                continue;
            }
            self.mark(id, true);
            self.chosen.push(id);
            if self.dfs(idx + 1, skips_left, want) {
                return true;
            }
            self.chosen.pop();
            self.mark(id, false);
        }
        if skips_left > 0 {
            self.used[v.class][v.index] = true;
            let ok = self.dfs(idx + 1, skips_left - 1, want);
            self.used[v.class][v.index] = false;
            if ok {
                return true;
            }
        }
        false
    }

    fn mark(&mut self, id: usize, value: bool) {
        for (c, &i) in self.h.edge(id).iter().enumerate() {
            self.used[c][i] = value;
        }
    }
}

/// Applies `augment_local` until no move of the given depth improves `m`.
pub fn augment_to_fixpoint(h: &KPartiteHypergraph, m: Matching, depth: usize) -> Result<Matching> {
    let mut cur = m;
    while let Some(next) = augment_local(h, &cur, depth)? {
        cur = next;
    }
    Ok(cur)
}

/// Seeded greedy matching followed by exchange moves to a fixpoint.
pub fn local_search(h: &KPartiteHypergraph, seed: u64, depth: usize) -> Result<Matching> {
    augment_to_fixpoint(h, greedy_matching(h, seed), depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_h, counterexample6};

    #[test]
    fn examples() {
        let k3 = KPartiteHypergraph::complete(3, 3).unwrap();
        let m = Matching::from_edges(&k3, [[0, 0, 0], [1, 1, 1]]).unwrap();
        assert_eq!(augment_local(&k3, &m, 1).unwrap().unwrap().len(), 3);

        let c = counterexample6();
        let m = Matching::from_edges(&c, [[0, 0, 0]]).unwrap();
        assert!(augment_local(&c, &m, 3).unwrap().is_none());

        let h = build_h(5, &[1, 1, 1]).unwrap();
        let m = Matching::from_edges(&h, [[4, 0, 0], [0, 4, 1]]).unwrap();
        let out = augment_local(&h, &m, 2).unwrap().unwrap();
        out.verify(&h).unwrap();
        assert_eq!(out.len(), 3);
    }

    #[test]
    fn needs_an_exchange() {
        // (0,0,0) meets both other edges; swapping it out gives a 2-matching
        let h = KPartiteHypergraph::new(3, &[2, 2, 2], [[0, 0, 0], [0, 1, 1], [1, 0, 0]]).unwrap();
        let m = Matching::from_edges(&h, [[0, 0, 0]]).unwrap();
        let out = augment_local(&h, &m, 1).unwrap().unwrap();
        assert_eq!(out.len(), 2);
        out.verify(&h).unwrap();
    }

    #[test]
    fn rejects_foreign_matching_and_bad_depth() {
        let h = counterexample6();
        let k = KPartiteHypergraph::complete(3, 2).unwrap();
        let m = Matching::from_edges(&k, [[1, 1, 1]]).unwrap();
        assert!(augment_local(&h, &m, 1).is_err());
        assert!(augment_local(&h, &Matching::empty_for(&h), 0).is_err());
    }
}
