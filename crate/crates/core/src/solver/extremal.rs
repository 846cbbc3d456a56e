//! Perfect matchings in hypergraphs close to H'(n; d_1, d_2, d_3).
//!
//! Every edge of the final matching is of type UUW: one vertex in some `W_i`
//! and the other two in the `U` parts of the other classes. With
//! `Σ d_i = n` the counts work out exactly: after a maximal UUW matching,
//! the uncovered `U_i` vertices number `x_j + x_l`, where `x_c` counts the
//! uncovered `W_c` vertices. Each uncovered `w` is then absorbed by
//! exchanging it together with two uncovered `U` vertices against one or two
//! matching edges.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use super::SolverConfig;
use crate::absorption::pm_within;
use crate::constructions::{ExtremalTemplate, TemplateRule};
use crate::hypergraph::{Edge, KPartiteHypergraph, VertexRef};
use crate::matching::Matching;
use crate::structure::classify_good_vertices;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ExtremalFailure {
    /// Inputs that do not describe an H'-type instance.
    Invalid(String),
    RegimeViolated(String),
    Stuck { stage: String, detail: String, trace: Vec<String> },
}

impl fmt::Display for ExtremalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Invalid(s) => write!(f, "invalid input: {s}"),
            Self::RegimeViolated(s) => write!(f, "regime violated: {s}"),
            Self::Stuck { stage, detail, .. } => write!(f, "stuck in stage {stage}: {detail}"),
        }
    }
}

impl std::error::Error for ExtremalFailure {}

struct State<'a> {
    h: &'a KPartiteHypergraph,
    /// UUW edges of `h`.
    uuw: KPartiteHypergraph,
    t: &'a ExtremalTemplate,
    m: Matching,
    trace: Vec<String>,
}

impl State<'_> {
    fn stuck(&self, stage: &str, detail: String) -> ExtremalFailure {
        ExtremalFailure::Stuck {
            stage: stage.into(),
            detail,
            trace: self.trace.clone(),
        }
    }

    fn imbalance(&self) -> isize {
        self.m.edges().iter().map(|e| self.t.w_count(e) as isize - 1).sum()
    }

    fn first_free_edge(&self, w_count: usize) -> Option<Edge> {
        self.h
            .edges()
            .iter()
            .find(|e| self.t.w_count(e) == w_count && self.m.is_free(e))
            .cloned()
    }

    /// Covers each bad vertex by an edge, preferring UUW edges and edges
    /// through further bad vertices.
    fn cover_bad(&mut self, bad: &[Vec<bool>]) -> Result<(), ExtremalFailure> {
        let is_bad = |e: &[usize]| e.iter().enumerate().filter(|&(c, &i)| bad[c][i]).count();
        for (c, row) in bad.iter().enumerate() {
            for (i, _) in row.iter().enumerate().filter(|(_, &b)| b) {
                let v = VertexRef::new(c, i);
                if self.m.is_covered(v) {
                    continue;
                }
                let best = self
                    .h
                    .incident(v)
                    .iter()
                    .map(|&id| self.h.edge(id))
                    .filter(|e| self.m.is_free(e))
                    .min_by_key(|e| (self.t.w_count(e) != 1, std::cmp::Reverse(is_bad(e))))
                    .cloned();
                match best {
                    Some(e) => {
                        self.m.insert(&e).expect("free edge");
                        self.trace.push(format!("bad-cover: {v} by {:?}", e.as_slice()));
                    }
                    None => return Err(self.stuck("bad-cover", format!("no free edge at bad vertex {v}"))),
                }
            }
        }
        Ok(())
    }

    /// Restores Σ d_i = n on the uncovered part using UUU or UWW edges.
    fn rebalance(&mut self) -> Result<(), ExtremalFailure> {
        loop {
            let want = match self.imbalance() {
                0 => return Ok(()),
                x if x > 0 => 0,
                _ => 2,
            };
            match self.first_free_edge(want) {
                Some(e) => {
                    self.m.insert(&e).expect("free edge");
                    self.trace.push(format!("rebalance: {:?}", e.as_slice()));
                }
                None => {
                    return Err(self.stuck(
                        "rebalance",
                        format!("imbalance {} and no free edge with {want} W vertices", self.imbalance()),
                    ))
                }
            }
        }
    }

    fn uncovered(&self, class: usize, in_w: bool) -> Vec<usize> {
        self.m.uncovered(class).filter(|&i| self.t.in_w(class, i) == in_w).collect()
    }

    /// Maximal UUW matching on the uncovered part, then exchanges.
    fn finish(&mut self) -> Result<(), ExtremalFailure> {
        for c in 0..3 {
            for w in self.uncovered(c, true) {
                let v = VertexRef::new(c, w);
                if let Some(&id) = self.uuw.incident(v).iter().find(|&&id| self.m.is_free(self.uuw.edge(id))) {
                    let e = self.uuw.edge(id).clone();
                    self.m.insert(&e).expect("free edge");
                }
            }
        }
        self.trace.push(format!("finish: maximal UUW matching of size {}", self.m.len()));
        loop {
            let x: Vec<Vec<usize>> = (0..3).map(|c| self.uncovered(c, true)).collect();
            let u: Vec<Vec<usize>> = (0..3).map(|c| self.uncovered(c, false)).collect();
            for c in 0..3 {
                let need = x[(c + 1) % 3].len() + x[(c + 2) % 3].len();
                if u[c].len() != need {
                    return Err(self.stuck(
                        "finish",
                        format!("class {c} has {} uncovered U vertices, expected {need}", u[c].len()),
                    ));
                }
            }
            let Some(c) = (0..3).find(|&c| !x[c].is_empty()) else {
                return Ok(());
            };
            let w = x[c][0];
            let (j, l) = ((c + 1) % 3, (c + 2) % 3);
            if !self.absorb_one(c, w, &u[j], &u[l], j, l) {
                return Err(self.stuck(
                    "finish",
                    format!("no exchange absorbs {}", VertexRef::new(c, w)),
                ));
            }
        }
    }

    /// Covers `w` together with one vertex from each of `uj`, `ul`: directly,
    /// by re-matching one matching edge, or by re-matching a pair.
    fn absorb_one(&mut self, c: usize, w: usize, uj: &[usize], ul: &[usize], j: usize, l: usize) -> bool {
        let triples: Vec<[usize; 3]> = uj
            .iter()
            .cartesian_product(ul)
            .map(|(&a, &b)| {
                let mut t = [0; 3];
                t[c] = w;
                t[j] = a;
                t[l] = b;
                t
            })
            .collect();
        for r in 0..=2 {
            for released in (0..self.m.len()).combinations(r) {
                for t in &triples {
                    let parts: Vec<Vec<usize>> = (0..3)
                        .map(|cl| {
                            let mut p: Vec<usize> = released.iter().map(|&q| self.m.edge(q)[cl]).collect();
                            p.push(t[cl]);
                            p
                        })
                        .collect();
                    if let Some(new) = pm_within(&self.uuw, &parts) {
                        for &q in released.iter().rev() {
                            self.m.remove(q);
                        }
                        for e in &new {
                            self.m.insert(e).expect("exchange keeps disjointness");
                        }
                        self.trace.push(format!(
                            "finish: {} absorbed with {r} released edge(s)",
                            VertexRef::new(c, w)
                        ));
                        return true;
                    }
                }
            }
        }
        false
    }
}

fn validate(h: &KPartiteHypergraph, t: &ExtremalTemplate, alpha: f64) -> Result<usize, ExtremalFailure> {
    if h.k() != 3 || t.k != 3 || t.rule != TemplateRule::UuwUww {
        return Err(ExtremalFailure::Invalid("needs k=3 and an H' template".into()));
    }
    let n = h
        .uniform_class_size()
        .ok_or_else(|| ExtremalFailure::Invalid(format!("unequal classes {:?}", h.class_sizes())))?;
    if t.n != n {
        return Err(ExtremalFailure::Invalid(format!("template n={} but H has n={n}", t.n)));
    }
    let sum: usize = t.profile.iter().sum();
    if sum != n {
        return Err(ExtremalFailure::Invalid(format!("profile {:?} sums to {sum}, not {n}", t.profile)));
    }
    if alpha.is_nan() || alpha < 0.0 {
        return Err(ExtremalFailure::Invalid(format!("alpha {alpha} is negative")));
    }
    if let Some((i, d)) = t.profile.iter().enumerate().find(|&(_, &d)| 16 * d < 5 * n) {
        return Err(ExtremalFailure::RegimeViolated(format!("d_{} = {d} is below 5n/16 = {:.2}", i + 1, 5.0 * n as f64 / 16.0)));
    }
    Ok(n)
}

/// Perfect matching of `h` built from the template structure. Bad vertices
/// (missing more than α·n² of their template links) are covered first and
/// the W-balance restored before the UUW finishing routine runs.
pub fn extremal_solve(
    h: &KPartiteHypergraph,
    template: &ExtremalTemplate,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<Matching, ExtremalFailure> {
    let n = validate(h, template, alpha)?;
    let goodness = classify_good_vertices(h, template, alpha).map_err(|e| ExtremalFailure::Invalid(e.to_string()))?;
    let bad_count = goodness.bad_count();
    let limit = cfg.max_bad_fraction * n as f64;
    if bad_count as f64 > limit {
        return Err(ExtremalFailure::RegimeViolated(format!(
            "{bad_count} bad vertices, more than {limit:.1}"
        )));
    }
    let mut bad: Vec<Vec<bool>> = vec![vec![false; n]; 3];
    for (c, list) in goodness.bad.iter().enumerate() {
        for &i in list {
            bad[c][i] = true;
        }
    }
    let mut st = State {
        h,
        uuw: h.filter_edges(|e| template.w_count(e) == 1),
        t: template,
        m: Matching::empty_for(h),
        trace: vec![format!("{bad_count} bad vertices")],
    };
    if bad_count > 0 {
        st.cover_bad(&bad)?;
        st.rebalance()?;
    }
    st.finish()?;
    let m = st.m;
    if m.verify(h).is_err() || !m.is_perfect() {
        return Err(ExtremalFailure::Stuck {
            stage: "verify".into(),
            detail: "result is not a perfect matching".into(),
            trace: st.trace,
        });
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_hprime;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn template_itself() {
        for (n, d) in [(9, [3, 3, 3]), (12, [4, 4, 4]), (15, [5, 5, 5]), (16, [5, 5, 6])] {
            let t = ExtremalTemplate::hprime(n, d).unwrap();
            let h = t.build();
            let m = extremal_solve(&h, &t, 0.0, &cfg()).unwrap();
            assert!(m.is_perfect());
            assert!(m.edges().iter().all(|e| t.w_count(e) == 1));
            let per_class: Vec<usize> = (0..3)
                .map(|c| m.edges().iter().filter(|e| t.in_w(c, e[c])).count())
                .collect();
            assert_eq!(per_class, d.to_vec());
        }
    }

    #[test]
    fn regime_checks() {
        let t = ExtremalTemplate::hprime(16, [1, 1, 14]).unwrap();
        let h = t.build();
        assert!(matches!(extremal_solve(&h, &t, 0.0, &cfg()), Err(ExtremalFailure::RegimeViolated(_))));
        let t = ExtremalTemplate::hprime(9, [3, 3, 2]).unwrap();
        assert!(matches!(
            extremal_solve(&build_hprime(9, [3, 3, 3]).unwrap(), &t, 0.0, &cfg()),
            Err(ExtremalFailure::Invalid(_))
        ));
    }

    #[test]
    fn bad_vertices_are_staged() {
        // strip all UUW edges at one W vertex; it becomes the only bad vertex
        // at α = 0.1, is covered by a UWW edge, and a UUU edge rebalances
        let t = ExtremalTemplate::hprime(12, [4, 4, 4]).unwrap();
        let full = t.build();
        let h = KPartiteHypergraph::new(
            3,
            &[12, 12, 12],
            full.edges()
                .iter()
                .filter(|e| !(e[0] == 11 && t.w_count(e) == 1))
                .cloned()
                .chain((0..3).map(|a| smallvec::smallvec![a, a, a])),
        )
        .unwrap();
        assert_eq!(classify_good_vertices(&h, &t, 0.1).unwrap().bad_count(), 1);
        let m = extremal_solve(&h, &t, 0.1, &cfg()).unwrap();
        assert!(m.is_perfect());
        m.verify(&h).unwrap();
    }

    #[test]
    fn empty_graph_is_stuck() {
        let t = ExtremalTemplate::hprime(9, [3, 3, 3]).unwrap();
        let h = KPartiteHypergraph::empty(&[9, 9, 9]).unwrap();
        let strict = SolverConfig {
            max_bad_fraction: 10.0,
            ..cfg()
        };
        assert!(matches!(extremal_solve(&h, &t, 0.0, &strict), Err(ExtremalFailure::Stuck { .. })));
        assert!(matches!(extremal_solve(&h, &t, 0.0, &cfg()), Err(ExtremalFailure::RegimeViolated(_))));
    }
}
