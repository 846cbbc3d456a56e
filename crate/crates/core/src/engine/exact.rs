//! Exact branch-and-bound for maximum and perfect matchings.
//!
//! The search branches on the free vertex with the fewest available edges
//! (ties by class, then index). Availability is maintained incrementally: an
//! edge is available while none of its vertices is covered or discarded.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use smallvec::SmallVec;

use super::lp::max_packing;
use super::{MatchingResult, PerfectAnswer, SearchBudget, SearchMode};
use crate::hypergraph::KPartiteHypergraph;
use crate::matching::Matching;

/// Depth up to which the LP bound is tried when cheaper bounds fail.
const LP_DEPTH: usize = 2;
/// Skip the LP when the tableau would exceed this many entries.
const LP_MAX_CELLS: usize = 8_000_000;
/// Below this many edges the root branches run sequentially.
const PARALLEL_MIN_EDGES: usize = 64;

type GEdge = SmallVec<[u32; 4]>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    Maximum,
    Perfect,
}

struct Problem {
    k: usize,
    class_of: Vec<usize>,
    offset: Vec<usize>,
    edges: Vec<GEdge>,
    inc: Vec<Vec<u32>>,
}

impl Problem {
    fn new(h: &KPartiteHypergraph) -> Self {
        let mut offset = Vec::with_capacity(h.k());
        let mut class_of = Vec::new();
        for (c, &n) in h.class_sizes().iter().enumerate() {
            offset.push(class_of.len());
            class_of.extend(std::iter::repeat_n(c, n));
        }
        let edges: Vec<GEdge> = h
            .edges()
            .iter()
            .map(|e| e.iter().enumerate().map(|(c, &i)| (offset[c] + i) as u32).collect())
            .collect();
        let mut inc = vec![Vec::new(); class_of.len()];
        for (id, e) in edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(id as u32);
            }
        }
        Self {
            k: h.k(),
            class_of,
            offset,
            edges,
            inc,
        }
    }

    fn to_local(&self, f: u32) -> SmallVec<[usize; 4]> {
        self.edges[f as usize]
            .iter()
            .enumerate()
            .map(|(c, &v)| v as usize - self.offset[c])
            .collect()
    }
}

#[derive(Clone)]
struct State {
    dead: Vec<u8>,
    avail: Vec<u32>,
    free: Vec<bool>,
    free_in_class: Vec<usize>,
    chosen: Vec<u32>,
    // scratch for the cover bound
    cnt: Vec<u32>,
    hit: Vec<bool>,
}

impl State {
    fn new(p: &Problem, sizes: &[usize]) -> Self {
        Self {
            dead: vec![0; p.edges.len()],
            avail: p.inc.iter().map(|l| l.len() as u32).collect(),
            free: vec![true; p.class_of.len()],
            free_in_class: sizes.to_vec(),
            chosen: Vec::new(),
            cnt: vec![0; p.class_of.len()],
            hit: vec![false; p.edges.len()],
        }
    }

    fn block(&mut self, p: &Problem, v: u32) {
        self.free[v as usize] = false;
        self.free_in_class[p.class_of[v as usize]] -= 1;
        for &f in &p.inc[v as usize] {
            let d = &mut self.dead[f as usize];
            *d += 1;
            if *d == 1 {
                for &u in &p.edges[f as usize] {
                    self.avail[u as usize] -= 1;
                }
            }
        }
    }

    fn unblock(&mut self, p: &Problem, v: u32) {
        for &f in &p.inc[v as usize] {
            let d = &mut self.dead[f as usize];
            if *d == 1 {
                for &u in &p.edges[f as usize] {
                    self.avail[u as usize] += 1;
                }
            }
            *d -= 1;
        }
        self.free[v as usize] = true;
        self.free_in_class[p.class_of[v as usize]] += 1;
    }

    fn take(&mut self, p: &Problem, f: u32) {
        for i in 0..p.k {
            self.block(p, p.edges[f as usize][i]);
        }
        self.chosen.push(f);
    }

    fn untake(&mut self, p: &Problem, f: u32) {
        self.chosen.pop();
        for i in (0..p.k).rev() {
            self.unblock(p, p.edges[f as usize][i]);
        }
    }

    /// Free vertex with the fewest available edges, ignoring those with none.
    fn pivot(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        for (v, (&free, &a)) in self.free.iter().zip(&self.avail).enumerate() {
            if free && a > 0 && best.is_none_or(|(_, b)| a < b) {
                best = Some((v as u32, a));
            }
        }
        best.map(|(v, _)| v)
    }

    fn has_stranded_vertex(&self) -> bool {
        self.free.iter().zip(&self.avail).any(|(&f, &a)| f && a == 0)
    }

    fn class_bound(&self, p: &Problem) -> usize {
        let mut per = vec![0usize; p.k];
        for (v, (&free, &a)) in self.free.iter().zip(&self.avail).enumerate() {
            if free && a > 0 {
                per[p.class_of[v]] += 1;
            }
        }
        per.into_iter().min().unwrap_or(0)
    }

    /// Size of a greedy vertex cover of the available edges, or `None` once it
    /// exceeds `cutoff`.
    fn cover_bound(&mut self, p: &Problem, cutoff: usize) -> Option<usize> {
        let mut remaining = 0usize;
        for (v, &free) in self.free.iter().enumerate() {
            self.cnt[v] = if free { self.avail[v] } else { 0 };
            remaining += self.cnt[v] as usize;
        }
        remaining /= p.k;
        let mut touched: Vec<u32> = Vec::new();
        let mut size = 0usize;
        let mut result = Some(0);
        while remaining > 0 {
            if size >= cutoff {
                result = None;
                break;
            }
            let (v, _) = self
                .cnt
                .iter()
                .enumerate()
                .max_by_key(|&(v, &c)| (c, std::cmp::Reverse(v)))
                .expect("vertices exist");
            size += 1;
            for &f in &p.inc[v] {
                if self.dead[f as usize] == 0 && !self.hit[f as usize] {
                    self.hit[f as usize] = true;
                    touched.push(f);
                    remaining -= 1;
                    for &u in &p.edges[f as usize] {
                        self.cnt[u as usize] -= 1;
                    }
                }
            }
            result = Some(size);
        }
        for f in touched {
            self.hit[f as usize] = false;
        }
        result
    }

    fn lp_bound(&self, p: &Problem) -> Option<usize> {
        let mut row = vec![u32::MAX; self.free.len()];
        let mut rows = 0u32;
        for (v, (&free, &a)) in self.free.iter().zip(&self.avail).enumerate() {
            if free && a > 0 {
                row[v] = rows;
                rows += 1;
            }
        }
        let cols: Vec<GEdge> = (0..p.edges.len())
            .filter(|&f| self.dead[f] == 0)
            .map(|f| p.edges[f].iter().map(|&v| row[v as usize]).collect())
            .collect();
        if (rows as usize + 1) * (cols.len() + rows as usize + 1) > LP_MAX_CELLS {
            return None;
        }
        let refs: Vec<&[u32]> = cols.iter().map(|c| c.as_slice()).collect();
        max_packing(rows as usize, &refs).map(|x| (x + 1e-6).floor() as usize)
    }

    /// Edges at `pivot` that are still available, scarcest partners first.
    fn branch_edges(&self, p: &Problem, pivot: u32) -> Vec<u32> {
        let mut list: Vec<(u64, u32)> = p.inc[pivot as usize]
            .iter()
            .filter(|&&f| self.dead[f as usize] == 0)
            .map(|&f| {
                let key: u64 = p.edges[f as usize]
                    .iter()
                    .filter(|&&u| u != pivot)
                    .map(|&u| self.avail[u as usize] as u64)
                    .sum();
                (key, f)
            })
            .collect();
        list.sort_unstable();
        list.into_iter().map(|(_, f)| f).collect()
    }

    /// Minimum-remaining-values greedy; leaves the state unchanged.
    fn greedy(&mut self, p: &Problem) -> Vec<u32> {
        let mut taken = Vec::new();
        while let Some(v) = self.pivot() {
            let f = self.branch_edges(p, v)[0];
            self.take(p, f);
            taken.push(f);
        }
        let out = self.chosen.clone();
        for &f in taken.iter().rev() {
            self.untake(p, f);
        }
        out
    }
}

struct Shared {
    goal: Goal,
    target: usize,
    use_lp: bool,
    node_limit: u64,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    exhausted: AtomicBool,
    global_best: AtomicUsize,
    /// Lowest root-branch index that has found a perfect matching.
    pm_branch: AtomicUsize,
}

struct Worker<'a> {
    p: &'a Problem,
    sh: &'a Shared,
    st: State,
    branch: usize,
    best: Vec<u32>,
    best_len: usize,
    local_nodes: u64,
}

impl Worker<'_> {
    fn stop(&self) -> bool {
        if self.sh.exhausted.load(Ordering::Relaxed) {
            return true;
        }
        self.sh.goal == Goal::Perfect && self.sh.pm_branch.load(Ordering::Relaxed) <= self.branch
    }

    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        let flush = self.sh.node_limit.min(256);
        if self.local_nodes.is_multiple_of(flush) {
            let total = self.sh.nodes.fetch_add(flush, Ordering::Relaxed) + flush;
            let late = self.sh.deadline.is_some_and(|d| Instant::now() >= d);
            if total >= self.sh.node_limit || late {
                self.sh.exhausted.store(true, Ordering::Relaxed);
            }
        }
        !self.stop()
    }

    fn record(&mut self) {
        let s = self.st.chosen.len();
        if s > self.best_len {
            self.best_len = s;
            self.best = self.st.chosen.clone();
            self.sh.global_best.fetch_max(s, Ordering::Relaxed);
            if self.sh.goal == Goal::Perfect && s == self.sh.target {
                self.sh.pm_branch.fetch_min(self.branch, Ordering::Relaxed);
            }
        }
    }

    /// Whether the subtree rooted at the current state can be discarded.
    fn prune(&mut self, depth: usize) -> bool {
        let s = self.st.chosen.len();
        let need = match self.sh.goal {
            Goal::Perfect => {
                if self.st.has_stranded_vertex() {
                    return true;
                }
                self.sh.target - s
            }
            Goal::Maximum => {
                let local = self.best_len + 1;
                let global = self.sh.global_best.load(Ordering::Relaxed);
                local.max(global).saturating_sub(s)
            }
        };
        if need == 0 {
            return false;
        }
        if self.st.class_bound(self.p) < need {
            return true;
        }
        if self.st.cover_bound(self.p, need).is_some_and(|c| c < need) {
            return true;
        }
        if self.sh.use_lp && depth <= LP_DEPTH {
            if let Some(b) = self.st.lp_bound(self.p) {
                return b < need;
            }
        }
        false
    }

    fn dfs(&mut self, depth: usize) {
        if !self.tick() {
            return;
        }
        self.record();
        if self.sh.goal == Goal::Perfect && self.best_len == self.sh.target {
            return;
        }
        if self.prune(depth) {
            return;
        }
        let Some(v) = self.st.pivot() else {
            return;
        };
        for f in self.st.branch_edges(self.p, v) {
            self.st.take(self.p, f);
            self.dfs(depth + 1);
            self.st.untake(self.p, f);
            if self.stop() || (self.sh.goal == Goal::Perfect && self.best_len == self.sh.target) {
                return;
            }
        }
        if self.sh.goal == Goal::Maximum {
            self.st.block(self.p, v);
            self.dfs(depth + 1);
            self.st.unblock(self.p, v);
        }
    }
}

enum RootBranch {
    Take(u32),
    Skip(u32),
}

struct Outcome {
    chosen: Vec<u32>,
    complete: bool,
    nodes: u64,
}

fn search(h: &KPartiteHypergraph, budget: &SearchBudget, goal: Goal) -> Outcome {
    let p = Problem::new(h);
    let mut root = State::new(&p, h.class_sizes());
    let target = h.class_sizes().iter().copied().min().unwrap_or(0);
    let greedy = root.greedy(&p);
    let sh = Shared {
        goal,
        target,
        use_lp: budget.mode == SearchMode::Exact,
        node_limit: budget.node_limit.max(1),
        deadline: budget.time_limit.map(|d| Instant::now() + d),
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        global_best: AtomicUsize::new(greedy.len()),
        pm_branch: AtomicUsize::new(usize::MAX),
    };
    let done_early = greedy.len() == target;
    let mut worker = Worker {
        p: &p,
        sh: &sh,
        st: root,
        branch: 0,
        best: greedy.clone(),
        best_len: greedy.len(),
        local_nodes: 0,
    };
    if done_early || worker.prune(0) {
        return Outcome {
            chosen: greedy,
            complete: true,
            nodes: 1,
        };
    }
    let Some(v) = worker.st.pivot() else {
        return Outcome {
            chosen: greedy,
            complete: true,
            nodes: 1,
        };
    };
    let mut branches: Vec<RootBranch> = worker
        .st
        .branch_edges(&p, v)
        .into_iter()
        .map(RootBranch::Take)
        .collect();
    if goal == Goal::Maximum {
        branches.push(RootBranch::Skip(v));
    }
    let base = worker.st;
    let run = |(i, b): (usize, &RootBranch)| -> (Vec<u32>, usize, u64) {
        let mut w = Worker {
            p: &p,
            sh: &sh,
            st: base.clone(),
            branch: i,
            best: Vec::new(),
            best_len: greedy.len(),
            local_nodes: 0,
        };
        match *b {
            RootBranch::Take(f) => {
                w.st.take(&p, f);
                w.dfs(1);
            }
            RootBranch::Skip(v) => {
                w.st.block(&p, v);
                w.dfs(1);
            }
        }
        (w.best, w.best_len, w.local_nodes)
    };
    let results: Vec<(Vec<u32>, usize, u64)> = if budget.parallel && p.edges.len() >= PARALLEL_MIN_EDGES {
        branches.par_iter().enumerate().map(run).collect()
    } else {
        let mut out = Vec::with_capacity(branches.len());
        for item in branches.iter().enumerate() {
            out.push(run(item));
            if goal == Goal::Perfect && out.last().is_some_and(|r| r.1 == target) {
                break;
            }
        }
        out
    };
    let nodes = 1 + results.iter().map(|r| r.2).sum::<u64>();
    let mut chosen = greedy.clone();
    let mut len = greedy.len();
    for (best, best_len, _) in results {
        if best_len > len {
            len = best_len;
            chosen = best;
        }
    }
    let found_all = goal == Goal::Perfect && len == target;
    Outcome {
        chosen,
        complete: found_all || !sh.exhausted.load(Ordering::Relaxed),
        nodes,
    }
}

fn to_matching(h: &KPartiteHypergraph, chosen: &[u32]) -> Matching {
    let p = Problem::new(h);
    let mut m = Matching::empty_for(h);
    for &f in chosen {
        m.insert(&p.to_local(f)).expect("search keeps edges disjoint");
    }
    m
}

/// Maximum matching by branch-and-bound. `optimal` is set only when the search
/// finished within budget; otherwise the best matching seen is returned.
pub fn max_matching_exact(h: &KPartiteHypergraph, budget: &SearchBudget) -> MatchingResult {
    let out = search(h, budget, Goal::Maximum);
    MatchingResult {
        matching: to_matching(h, &out.chosen),
        optimal: out.complete,
        nodes: out.nodes,
    }
}

/// Decides whether `h` has a perfect matching. Unequal class sizes give `No`
/// immediately; `Unknown` means the budget ran out.
pub fn has_perfect_matching(h: &KPartiteHypergraph, budget: &SearchBudget) -> PerfectAnswer {
    let Some(n) = h.uniform_class_size() else {
        return PerfectAnswer::No;
    };
    if n == 0 {
        return PerfectAnswer::Yes(Matching::empty_for(h));
    }
    let out = search(h, budget, Goal::Perfect);
    if out.chosen.len() == n {
        PerfectAnswer::Yes(to_matching(h, &out.chosen))
    } else if out.complete {
        PerfectAnswer::No
    } else {
        PerfectAnswer::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_h, build_hk, build_hstar, counterexample6};

    fn budget(parallel: bool) -> SearchBudget {
        SearchBudget {
            parallel,
            ..SearchBudget::default()
        }
    }

    #[test]
    fn small_examples() {
        for par in [false, true] {
            let b = budget(par);
            let k4 = KPartiteHypergraph::complete(3, 4).unwrap();
            let r = max_matching_exact(&k4, &b);
            assert_eq!((r.matching.len(), r.optimal), (4, true));
            let r = max_matching_exact(&build_h(4, &[1, 1, 1]).unwrap(), &b);
            assert_eq!((r.matching.len(), r.optimal), (3, true));
            let r = max_matching_exact(&counterexample6(), &b);
            assert_eq!((r.matching.len(), r.optimal), (1, true));
            assert!(has_perfect_matching(&k4, &b).is_yes());
            assert!(has_perfect_matching(&counterexample6(), &b).is_no());
            assert!(has_perfect_matching(&build_hstar(3, 5, 4).unwrap(), &b).is_no());
        }
    }

    #[test]
    fn unequal_classes_are_no() {
        let h = KPartiteHypergraph::complete(3, 2).unwrap();
        let h = h.induced(&[vec![0, 1], vec![0], vec![0, 1]]).unwrap();
        assert!(has_perfect_matching(&h, &SearchBudget::default()).is_no());
        assert_eq!(max_matching_exact(&h, &SearchBudget::default()).matching.len(), 1);
    }

    #[test]
    fn tight_constructions_have_no_pm() {
        for n in 3..=9 {
            let h = if n % 3 == 2 {
                build_hstar(3, n, n - 1).unwrap()
            } else {
                build_hk(3, n, n - 1).unwrap()
            };
            assert!(has_perfect_matching(&h, &SearchBudget::default()).is_no(), "n={n}");
            let r = max_matching_exact(&h, &SearchBudget::default());
            assert_eq!((r.matching.len(), r.optimal), (n - 1, true), "n={n}");
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        for n in 3..=6 {
            for m in 0..=n {
                let h = build_hstar(3, n, m.max(1)).unwrap();
                let a = max_matching_exact(&h, &budget(false));
                let b = max_matching_exact(&h, &budget(true));
                assert_eq!(a.matching, b.matching);
            }
        }
    }

    #[test]
    fn tiny_budget_reports_non_optimal() {
        let h = build_hstar(3, 8, 7).unwrap();
        let b = SearchBudget {
            node_limit: 1,
            mode: SearchMode::BestEffort,
            ..SearchBudget::default()
        };
        let r = max_matching_exact(&h, &b);
        r.matching.verify(&h).unwrap();
        assert!(r.matching.len() <= 7);
        assert!(!r.optimal);
    }
}
