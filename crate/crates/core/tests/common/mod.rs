//! Brute-force oracles and instance corpora shared by the integration tests.
//! Nothing here calls the library's search code.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use hypermatch::constructions::{build_h, build_hk, build_hprime, build_hstar, counterexample6};
use hypermatch::solver::random_instance;
use hypermatch::KPartiteHypergraph;

/// Maximum matching by memoised recursion over class-0 vertices, with the
/// used vertices of the other classes as bitmasks. Class sizes up to 64.
pub fn oracle_max_matching(h: &KPartiteHypergraph) -> Vec<Vec<usize>> {
    let k = h.k();
    let n0 = h.class_sizes()[0];
    let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n0];
    for e in h.edges() {
        by_first[e[0]].push(e.to_vec());
    }
    let mut memo: HashMap<(usize, Vec<u64>), usize> = HashMap::new();
    fn best(
        i: usize,
        masks: &mut Vec<u64>,
        by_first: &[Vec<Vec<usize>>],
        memo: &mut HashMap<(usize, Vec<u64>), usize>,
    ) -> usize {
        if i == by_first.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(i, masks.clone())) {
            return v;
        }
        let mut v = best(i + 1, masks, by_first, memo);
        for e in &by_first[i] {
            if e[1..].iter().zip(masks.iter()).all(|(&x, &m)| m >> x & 1 == 0) {
                for (c, &x) in e[1..].iter().enumerate() {
                    masks[c] |= 1 << x;
                }
                v = v.max(1 + best(i + 1, masks, by_first, memo));
                for (c, &x) in e[1..].iter().enumerate() {
                    masks[c] &= !(1 << x);
                }
            }
        }
        memo.insert((i, masks.clone()), v);
        v
    }
    let mut masks = vec![0u64; k - 1];
    let total = best(0, &mut masks, &by_first, &mut memo);
    // walk the memo table to recover one optimal matching
    let mut out = Vec::new();
    let mut remaining = total;
    for i in 0..n0 {
        if remaining == 0 {
            break;
        }
        if best(i + 1, &mut masks, &by_first, &mut memo) == remaining {
            continue;
        }
        for e in &by_first[i] {
            if !e[1..].iter().zip(masks.iter()).all(|(&x, &m)| m >> x & 1 == 0) {
                continue;
            }
            for (c, &x) in e[1..].iter().enumerate() {
                masks[c] |= 1 << x;
            }
            if 1 + best(i + 1, &mut masks, &by_first, &mut memo) == remaining {
                out.push(e.clone());
                remaining -= 1;
                break;
            }
            for (c, &x) in e[1..].iter().enumerate() {
                masks[c] &= !(1 << x);
            }
        }
    }
    assert_eq!(out.len(), total);
    out
}

pub fn oracle_nu(h: &KPartiteHypergraph) -> usize {
    oracle_max_matching(h).len()
}

/// Perfect matching existence by depth-first search over class-0 vertices,
/// remembering dead states (the used masks determine the depth).
pub fn oracle_has_pm(h: &KPartiteHypergraph) -> bool {
    let Some(n) = h.uniform_class_size() else {
        return false;
    };
    let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for e in h.edges() {
        by_first[e[0]].push(e[1..].to_vec());
    }
    fn go(i: usize, masks: &mut Vec<u64>, by_first: &[Vec<Vec<usize>>], dead: &mut HashSet<Vec<u64>>) -> bool {
        if i == by_first.len() {
            return true;
        }
        if dead.contains(masks) {
            return false;
        }
        for rest in &by_first[i] {
            if rest.iter().zip(masks.iter()).all(|(&x, &m)| m >> x & 1 == 0) {
                for (c, &x) in rest.iter().enumerate() {
                    masks[c] |= 1 << x;
                }
                let ok = go(i + 1, masks, by_first, dead);
                for (c, &x) in rest.iter().enumerate() {
                    masks[c] &= !(1 << x);
                }
                if ok {
                    return true;
                }
            }
        }
        dead.insert(masks.clone());
        false
    }
    go(0, &mut vec![0; h.k() - 1], &by_first, &mut HashSet::new())
}

/// Edges are pairwise disjoint and all in `h`.
pub fn is_valid_matching(h: &KPartiteHypergraph, edges: &[Vec<usize>]) -> bool {
    let k = h.k();
    edges.iter().all(|e| h.edges().iter().any(|f| f.as_slice() == e.as_slice()))
        && (0..k).all(|c| {
            let mut seen: Vec<usize> = edges.iter().map(|e| e[c]).collect();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
}

/// δ₁ by counting edge incidences.
pub fn oracle_delta1(h: &KPartiteHypergraph) -> usize {
    let mut deg: Vec<Vec<usize>> = h.class_sizes().iter().map(|&n| vec![0; n]).collect();
    for e in h.edges() {
        for (c, &i) in e.iter().enumerate() {
            deg[c][i] += 1;
        }
    }
    deg.iter().flatten().copied().min().unwrap_or(0)
}

/// δ₂ over every pair of vertices from distinct classes.
pub fn oracle_delta2(h: &KPartiteHypergraph) -> usize {
    let sizes = h.class_sizes();
    let k = h.k();
    let mut best = usize::MAX;
    for c1 in 0..k {
        for c2 in c1 + 1..k {
            let mut count = vec![vec![0usize; sizes[c2]]; sizes[c1]];
            for e in h.edges() {
                count[e[c1]][e[c2]] += 1;
            }
            best = best.min(count.iter().flatten().copied().min().unwrap_or(0));
        }
    }
    best
}

pub fn binom(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Named 3-partite instances with n ≤ `n_max` from every generator.
pub fn corpus(n_max: usize) -> Vec<(String, KPartiteHypergraph)> {
    let mut out = vec![("counterexample6".to_string(), counterexample6())];
    for n in 1..=n_max {
        out.push((format!("K({n})"), KPartiteHypergraph::complete(3, n).unwrap()));
        for m in 0..=n {
            out.push((format!("H_3({n};{m})"), build_hk(3, n, m).unwrap()));
            if m >= 1 {
                out.push((format!("H*_3({n};{m})"), build_hstar(3, n, m).unwrap()));
            }
        }
        for d1 in 0..=n {
            for d2 in 0..=n - d1 {
                let d3 = n - d1 - d2;
                out.push((format!("H'({n};{d1},{d2},{d3})"), build_hprime(n, [d1, d2, d3]).unwrap()));
            }
        }
        for d in [[1, 0, 0], [n / 2, n / 2, 0], [n, 0, 0], [n, n, n]] {
            out.push((format!("H({n};{d:?})"), build_h(n, &d).unwrap()));
        }
        for (t, target) in [n * n / 3, n * n / 2, 5 * n * n / 9].into_iter().enumerate() {
            out.push((
                format!("random({n};δ≥{target})"),
                random_instance(n, target, 1000 + t as u64 + 10 * n as u64).unwrap(),
            ));
        }
    }
    out
}

/// Maximum matchings in lexicographic order of class-0 choices, up to `cap`.
/// The flag says whether the listing is complete.
pub fn oracle_max_matchings(h: &KPartiteHypergraph, cap: usize) -> (Vec<Vec<Vec<usize>>>, bool) {
    let nu = oracle_nu(h);
    let n0 = h.class_sizes()[0];
    let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n0];
    for e in h.edges() {
        by_first[e[0]].push(e.to_vec());
    }
    struct Walk<'a> {
        by_first: &'a [Vec<Vec<usize>>],
        cap: usize,
        out: Vec<Vec<Vec<usize>>>,
        cur: Vec<Vec<usize>>,
        used: Vec<u64>,
        complete: bool,
    }
    fn go(w: &mut Walk, i: usize, need: usize) {
        if !w.complete {
            return;
        }
        if need == 0 {
            if w.out.len() == w.cap {
                w.complete = false;
            } else {
                w.out.push(w.cur.clone());
            }
            return;
        }
        if w.by_first.len() - i < need {
            return;
        }
        for j in 0..w.by_first[i].len() {
            let e = w.by_first[i][j].clone();
            if e[1..].iter().zip(&w.used).all(|(&x, &m)| m >> x & 1 == 0) {
                for (c, &x) in e[1..].iter().enumerate() {
                    w.used[c] |= 1 << x;
                }
                w.cur.push(e.clone());
                go(w, i + 1, need - 1);
                w.cur.pop();
                for (c, &x) in e[1..].iter().enumerate() {
                    w.used[c] &= !(1 << x);
                }
            }
        }
        go(w, i + 1, need);
    }
    let mut w = Walk {
        by_first: &by_first,
        cap,
        out: Vec::new(),
        cur: Vec::new(),
        used: vec![0; h.k() - 1],
        complete: true,
    };
    go(&mut w, 0, nu);
    (w.out, w.complete)
}
