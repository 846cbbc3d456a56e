//! Exhaustive minimum-degree threshold over every sub-hypergraph of K(n,…,n).

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergraph::{all_tuples, Edge, KPartiteHypergraph};

/// Largest number of legal k-tuples for which the sweep is allowed.
const MAX_SLOTS: usize = 16;

#[derive(Debug, Clone)]
pub struct ThresholdReport {
    pub k: usize,
    pub n: usize,
    /// Smallest t such that every H with δ₁(H) ≥ t has a perfect matching.
    pub value: usize,
    pub graphs_checked: u64,
    pub symmetry_reduced: bool,
    /// Edge masks of the graphs without a perfect matching, grouped by δ₁.
    /// With symmetry reduction only orbit representatives are listed.
    pub non_pm_by_delta: Vec<Vec<u64>>,
    slots: Vec<Edge>,
}

impl ThresholdReport {
    pub fn hypergraph(&self, mask: u64) -> KPartiteHypergraph {
        let edges = (0..self.slots.len())
            .filter(|&j| mask >> j & 1 == 1)
            .map(|j| self.slots[j].clone());
        KPartiteHypergraph::new(self.k, &vec![self.n; self.k], edges).expect("slots are in range")
    }

    /// Non-PM graphs attaining the largest δ₁ among non-PM graphs.
    pub fn extremal(&self) -> Vec<KPartiteHypergraph> {
        self.non_pm_with_delta(self.value.saturating_sub(1))
    }

    pub fn non_pm_with_delta(&self, d: usize) -> Vec<KPartiteHypergraph> {
        self.non_pm_by_delta
            .get(d)
            .map(|ms| ms.iter().map(|&m| self.hypergraph(m)).collect())
            .unwrap_or_default()
    }

    /// Slot mask of `h`, for lookups in `non_pm_by_delta`.
    pub fn mask_of(&self, h: &KPartiteHypergraph) -> u64 {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| h.contains_edge(s))
            .fold(0, |m, (j, _)| m | 1 << j)
    }

    /// Smallest mask in the orbit of `mask` under class and vertex relabelings.
    pub fn canonical(&self, mask: u64) -> u64 {
        symmetry_perms(self.k, self.n, &self.slots)
            .iter()
            .map(|p| apply(p, mask))
            .min()
            .unwrap_or(mask)
    }
}

/// Sweeps all 2^(n^k) sub-hypergraphs of the complete k-partite k-graph.
pub fn brute_force_threshold(k: usize, n: usize, symmetry_reduced: bool) -> Result<ThresholdReport> {
    let slots_count = n.checked_pow(k as u32).unwrap_or(usize::MAX);
    if k < 2 || n == 0 || slots_count > MAX_SLOTS {
        return Err(Error::Infeasible { k, n, slots: slots_count });
    }
    let sizes = vec![n; k];
    let slots: Vec<Edge> = all_tuples(&sizes).collect();
    let s = slots.len();
    let total = 1u64 << s;
    let mut non_pm_by_delta: Vec<Vec<u64>> = vec![Vec::new(); n.pow(k as u32 - 1) + 1];
    let mut graphs_checked = 0u64;
    let mut examine = |mask: u64| {
        graphs_checked += 1;
        if !has_pm(mask, &slots, k, n) {
            non_pm_by_delta[min_degree(mask, &slots, k, n)].push(mask);
        }
    };
    if symmetry_reduced {
        let perms = symmetry_perms(k, n, &slots);
        let mut seen = FixedBitSet::with_capacity(total as usize);
        for mask in 0..total {
            if seen.contains(mask as usize) {
                continue;
            }
            for p in &perms {
                seen.insert(apply(p, mask) as usize);
            }
            examine(mask);
        }
    } else {
        (0..total).for_each(&mut examine);
    }
    let worst = non_pm_by_delta
        .iter()
        .rposition(|v| !v.is_empty())
        .expect("the empty hypergraph has no perfect matching");
    Ok(ThresholdReport {
        k,
        n,
        value: worst + 1,
        graphs_checked,
        symmetry_reduced,
        non_pm_by_delta,
        slots,
    })
}

fn min_degree(mask: u64, slots: &[Edge], k: usize, n: usize) -> usize {
    let mut deg = vec![0usize; k * n];
    for (j, t) in slots.iter().enumerate() {
        if mask >> j & 1 == 1 {
            for (c, &i) in t.iter().enumerate() {
                deg[c * n + i] += 1;
            }
        }
    }
    deg.into_iter().min().unwrap_or(0)
}

fn has_pm(mask: u64, slots: &[Edge], k: usize, n: usize) -> bool {
    fn go(row: usize, used: &mut [bool], mask: u64, slots: &[Edge], k: usize, n: usize) -> bool {
        if row == n {
            return true;
        }
        for (j, t) in slots.iter().enumerate() {
            if mask >> j & 1 == 0 || t[0] != row {
                continue;
            }
            if (1..k).any(|c| used[c * n + t[c]]) {
                continue;
            }
            for c in 1..k {
                used[c * n + t[c]] = true;
            }
            let ok = go(row + 1, used, mask, slots, k, n);
            for c in 1..k {
                used[c * n + t[c]] = false;
            }
            if ok {
                return true;
            }
        }
        false
    }
    go(0, &mut vec![false; k * n], mask, slots, k, n)
}

/// Slot permutations induced by permuting classes and relabeling vertices
/// inside each class.
fn symmetry_perms(k: usize, n: usize, slots: &[Edge]) -> Vec<Vec<usize>> {
    let index_of = |t: &[usize]| t.iter().fold(0, |acc, &i| acc * n + i);
    let vertex_perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut out = Vec::new();
    for class_perm in (0..k).permutations(k) {
        for choice in (0..k).map(|_| 0..vertex_perms.len()).multi_cartesian_product() {
            let perm = slots
                .iter()
                .map(|t| {
                    let mut img = vec![0; k];
                    for c in 0..k {
                        img[class_perm[c]] = vertex_perms[choice[c]][t[c]];
                    }
                    index_of(&img)
                })
                .collect();
            out.push(perm);
        }
    }
    out
}

fn apply(perm: &[usize], mask: u64) -> u64 {
    perm.iter()
        .enumerate()
        .filter(|&(j, _)| mask >> j & 1 == 1)
        .fold(0, |m, (_, &p)| m | 1 << p)
}
