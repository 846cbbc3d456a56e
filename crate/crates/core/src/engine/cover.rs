//! Search for a vertex set with a prescribed per-class profile that meets
//! every edge.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::KPartiteHypergraph;

/// `w[c]` lists the chosen local indices of class `c`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    pub profile: Vec<usize>,
    pub w: Vec<Vec<usize>>,
    /// Result of the independent every-edge-meets-W pass.
    pub verified: bool,
}

impl CoverWitness {
    pub fn check(&self, h: &KPartiteHypergraph) -> bool {
        let sizes_ok = self
            .w
            .iter()
            .zip(&self.profile)
            .all(|(w, &d)| w.len() == d);
        sizes_ok
            && h.edges()
                .iter()
                .all(|e| e.iter().enumerate().any(|(c, i)| self.w[c].binary_search(i).is_ok()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CoverOutcome {
    Found(CoverWitness),
    /// The search space was exhausted without a witness.
    NoneExists,
    /// The node budget ran out first.
    Exhausted { nodes: u64 },
}

/// Exact hitting-set search with per-class budgets `profile`.
pub fn balanced_cover_check(h: &KPartiteHypergraph, profile: &[usize], node_limit: u64) -> Result<CoverOutcome> {
    if profile.len() != h.k() {
        return Err(Error::DimensionMismatch(format!(
            "profile has {} entries for k={}",
            profile.len(),
            h.k()
        )));
    }
    if let Some((c, &d)) = profile.iter().enumerate().find(|&(c, &d)| d > h.class_sizes()[c]) {
        return Err(Error::InvalidProfile(format!("d={d} exceeds class {c} size")));
    }
    let mut s = CoverSearch {
        h,
        left: profile.to_vec(),
        chosen: h.class_sizes().iter().map(|&n| vec![false; n]).collect(),
        banned: h.class_sizes().iter().map(|&n| vec![false; n]).collect(),
        hits: vec![0; h.edge_count()],
        nodes: 0,
        node_limit,
    };
    match s.dfs() {
        Some(true) => {
            let mut w: Vec<Vec<usize>> = s
                .chosen
                .iter()
                .map(|c| c.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i).collect())
                .collect();
            for (c, wc) in w.iter_mut().enumerate() {
                let mut i = 0;
                while wc.len() < profile[c] {
                    if !s.chosen[c][i] {
                        wc.push(i);
                    }
                    i += 1;
                }
                wc.sort_unstable();
            }
            let mut witness = CoverWitness {
                profile: profile.to_vec(),
                w,
                verified: false,
            };
            witness.verified = witness.check(h);
            Ok(CoverOutcome::Found(witness))
        }
        Some(false) => Ok(CoverOutcome::NoneExists),
        None => Ok(CoverOutcome::Exhausted { nodes: s.nodes }),
    }
}

struct CoverSearch<'a> {
    h: &'a KPartiteHypergraph,
    left: Vec<usize>,
    chosen: Vec<Vec<bool>>,
    banned: Vec<Vec<bool>>,
    hits: Vec<u32>,
    nodes: u64,
    node_limit: u64,
}

impl CoverSearch<'_> {
    fn eligible(&self, c: usize, i: usize) -> bool {
        self.left[c] > 0 && !self.banned[c][i] && !self.chosen[c][i]
    }

    /// `Some(found)` on completion, `None` when the budget ran out.
    fn dfs(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return None;
        }
        let mut pick: Option<(usize, usize)> = None;
        for (id, e) in self.h.edges().iter().enumerate() {
            if self.hits[id] > 0 {
                continue;
            }
            let options = e.iter().enumerate().filter(|&(c, &i)| self.eligible(c, i)).count();
            if options == 0 {
                return Some(false);
            }
            if pick.is_none_or(|(_, best)| options < best) {
                pick = Some((id, options));
            }
        }
        let Some((id, _)) = pick else {
            return Some(true);
        };
        if self.disjoint_unhit_lower_bound() > self.left.iter().sum::<usize>() {
            return Some(false);
        }
        let e = self.h.edge(id).clone();
        let mut banned_here: Vec<(usize, usize)> = Vec::new();
        let mut outcome = Some(false);
        for (c, &i) in e.iter().enumerate() {
            if !self.eligible(c, i) {
                continue;
            }
            self.set(c, i, true);
            let r = self.dfs();
            if r != Some(false) {
                outcome = r;
                if r == Some(true) {
                    // keep the chosen set for the caller
                    for (bc, bi) in banned_here {
                        self.banned[bc][bi] = false;
                    }
                    return outcome;
                }
                self.set(c, i, false);
                break;
            }
            self.set(c, i, false);
            self.banned[c][i] = true;
            banned_here.push((c, i));
        }
        for (c, i) in banned_here {
            self.banned[c][i] = false;
        }
        outcome
    }

    fn set(&mut self, c: usize, i: usize, on: bool) {
        self.chosen[c][i] = on;
        if on {
            self.left[c] -= 1;
        } else {
            self.left[c] += 1;
        }
        for &id in self.h.incident(crate::hypergraph::VertexRef::new(c, i)) {
            if on {
                self.hits[id] += 1;
            } else {
                self.hits[id] -= 1;
            }
        }
    }

    /// Size of a greedy family of pairwise disjoint un-hit edges; each chosen
    /// vertex can hit at most one of them.
    fn disjoint_unhit_lower_bound(&self) -> usize {
        let mut used: Vec<Vec<bool>> = self.chosen.iter().map(|c| vec![false; c.len()]).collect();
        let mut count = 0;
        for (id, e) in self.h.edges().iter().enumerate() {
            if self.hits[id] > 0 || e.iter().enumerate().any(|(c, &i)| used[c][i]) {
                continue;
            }
            for (c, &i) in e.iter().enumerate() {
                used[c][i] = true;
            }
            count += 1;
        }
        count
    }
}
