//! End-to-end perfect-matching solver plus the sweep and threshold harnesses.

mod extremal;
mod sweep;
mod verify;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::absorption::{absorb, sample_absorbing_family, AbsorptionConfig, PruneRule};
use crate::constructions::ExtremalTemplate;
use crate::engine::{local_search, max_matching_exact, SearchBudget};
use crate::error::Result;
use crate::hypergraph::{BalancedSet, KPartiteHypergraph};
use crate::matching::Matching;
use crate::structure::{closeness, ClosenessReport};

pub use extremal::{extremal_solve, ExtremalFailure};
pub use sweep::{random_instance, random_with_min_degree, threshold_sweep, SweepReport, SweepRow, MAX_SWEEP_N};
pub use verify::{verify_thresholds, ThresholdRow, ThresholdTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolverMode {
    Auto,
    ExactOnly,
    HeuristicOnly,
    ExtremalOnly,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolverConfig {
    pub gamma: f64,
    /// Uncovered fraction the large-matching phase aims for.
    pub rho: f64,
    pub alpha: f64,
    /// Closeness below which the extremal routine is tried.
    pub epsilon: f64,
    pub augment_depth: usize,
    /// Largest n handed to the exact search first.
    pub exact_cutoff: usize,
    pub exact_node_limit: u64,
    /// Node budget of the final exact attempt for n above the cutoff.
    pub fallback_node_limit: u64,
    pub restarts: usize,
    /// Bad-vertex allowance of the extremal routine, as a fraction of n.
    pub max_bad_fraction: f64,
    pub seed: u64,
    pub mode: SolverMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let gamma: f64 = 0.1;
        Self {
            gamma,
            rho: 6.0 * gamma.powi(6),
            alpha: 0.01,
            epsilon: 0.02,
            augment_depth: 2,
            exact_cutoff: 10,
            exact_node_limit: 10_000_000,
            fallback_node_limit: 2_000_000,
            restarts: 4,
            max_bad_fraction: 0.25,
            seed: 0,
            mode: SolverMode::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolveStatus {
    Perfect,
    NoPerfect,
    Incomplete,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseRecord {
    pub phase: String,
    pub outcome: String,
    pub matching_size: Option<usize>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The returned matching is perfect and was re-verified.
    Witness,
    /// The exact search finished and found no matching larger than this.
    ExhaustedSearch { max_matching: usize, nodes: u64 },
    UnequalClasses { sizes: Vec<usize> },
    Stuck { report: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Perfect matching, or the largest matching seen otherwise.
    pub matching: Matching,
    pub trace: Vec<PhaseRecord>,
    pub certificate: Certificate,
}

impl SolveOutcome {
    fn perfect(m: Matching, trace: Vec<PhaseRecord>) -> Self {
        Self {
            status: SolveStatus::Perfect,
            matching: m,
            trace,
            certificate: Certificate::Witness,
        }
    }
}

fn spread(d: &[usize]) -> usize {
    d.iter().max().unwrap_or(&0) - d.iter().min().unwrap_or(&0)
}

/// Lowest-missing H' template with `Σ d_i = n` and each `d_i` within 2 of
/// n/3. Ties go to the most even profile, then the lexicographically first.
pub fn best_template(h: &KPartiteHypergraph) -> Result<Option<ClosenessReport>> {
    let Some(n) = h.uniform_class_size() else {
        return Ok(None);
    };
    if h.k() != 3 || n == 0 {
        return Ok(None);
    }
    let third = n as f64 / 3.0;
    let near = |d: usize| (d as f64 - third).abs() <= 2.0;
    let mut best: Option<ClosenessReport> = None;
    for d1 in (0..=n).filter(|&d| near(d)) {
        for d2 in (0..=n - d1).filter(|&d| near(d)) {
            let d3 = n - d1 - d2;
            if !near(d3) {
                continue;
            }
            let r = closeness(h, &ExtremalTemplate::hprime(n, [d1, d2, d3])?)?;
            let key = (r.missing, spread(&r.template.profile));
            if best.as_ref().is_none_or(|b| key < (b.missing, spread(&b.template.profile))) {
                best = Some(r);
            }
        }
    }
    Ok(best)
}

struct Run<'a> {
    h: &'a KPartiteHypergraph,
    cfg: &'a SolverConfig,
    trace: Vec<PhaseRecord>,
    best: Matching,
}

impl Run<'_> {
    fn record(&mut self, phase: &str, start: Instant, outcome: String, m: Option<&Matching>) {
        if let Some(m) = m {
            if m.len() > self.best.len() && m.verify(self.h).is_ok() {
                self.best = m.clone();
            }
        }
        self.trace.push(PhaseRecord {
            phase: phase.into(),
            outcome,
            matching_size: m.map(Matching::len),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }

    /// A verified perfect matching, or `None` after noting the failure.
    fn accept(&mut self, phase: &str, start: Instant, m: Matching) -> Option<Matching> {
        if m.verify(self.h).is_ok() && m.is_perfect() {
            self.record(phase, start, "perfect matching".into(), Some(&m));
            Some(m)
        } else {
            let why = if m.verify(self.h).is_err() { "invalid matching" } else { "not perfect" };
            self.record(phase, start, why.into(), Some(&m));
            None
        }
    }

    fn exact(&mut self, phase: &str, node_limit: u64) -> std::result::Result<Matching, Option<SolveOutcome>> {
        let start = Instant::now();
        let r = max_matching_exact(self.h, &SearchBudget::with_node_limit(node_limit));
        if r.optimal && !r.matching.is_perfect() {
            self.record(phase, start, format!("exhausted, maximum matching {}", r.matching.len()), Some(&r.matching));
            return Err(Some(SolveOutcome {
                status: SolveStatus::NoPerfect,
                matching: r.matching.clone(),
                trace: std::mem::take(&mut self.trace),
                certificate: Certificate::ExhaustedSearch {
                    max_matching: r.matching.len(),
                    nodes: r.nodes,
                },
            }));
        }
        if r.matching.is_perfect() {
            return self.accept(phase, start, r.matching).ok_or(None);
        }
        self.record(phase, start, format!("budget exhausted after {} nodes", r.nodes), Some(&r.matching));
        Err(None)
    }

    fn absorbing(&mut self) -> Result<Option<Matching>> {
        let start = Instant::now();
        let h = self.h;
        let acfg = AbsorptionConfig {
            gamma: self.cfg.gamma,
            seed: self.cfg.seed,
            prune: PruneRule::GreedyDisjoint,
            ..AbsorptionConfig::default()
        };
        let sample = sample_absorbing_family(h, &acfg)?;
        if !sample.success {
            let why = sample.failure.unwrap_or_default();
            self.record("absorbing-family", start, why, None);
            return Ok(None);
        }
        let fam = sample.family;
        self.record(
            "absorbing-family",
            start,
            format!("{} member(s), coverage {}", fam.len(), fam.coverage_g),
            None,
        );
        let start = Instant::now();
        let taken = fam.covered(h.k());
        let rest = h.filter_edges(|e| e.iter().enumerate().all(|(c, i)| taken[c].binary_search(i).is_err()));
        let mut big = local_search(&rest, self.cfg.seed, self.cfg.augment_depth)?;
        for r in 1..self.cfg.restarts as u64 {
            let alt = local_search(&rest, self.cfg.seed.wrapping_add(r), self.cfg.augment_depth)?;
            if alt.len() > big.len() {
                big = alt;
            }
        }
        let n = h.uniform_class_size().unwrap_or(0);
        let free = n - fam.len() * (h.k() - 1);
        let left = free - big.len();
        self.record(
            "large-matching",
            start,
            format!(
                "{left} of {free} per class uncovered ({})",
                if left as f64 <= self.cfg.rho * n as f64 { "within rho" } else { "above rho" }
            ),
            Some(&big),
        );
        let start = Instant::now();
        let w: Vec<Vec<usize>> = (0..h.k())
            .map(|c| big.uncovered(c).filter(|i| taken[c].binary_search(i).is_err()).collect())
            .collect();
        let w = BalancedSet::from_classes(w)?;
        match absorb(h, &fam, &w) {
            Ok(a) => {
                let edges = a.edges().iter().chain(big.edges()).cloned().collect::<Vec<_>>();
                let m = Matching::from_edges(h, edges)?;
                Ok(self.accept("absorb", start, m))
            }
            Err(e) => {
                self.record("absorb", start, e.to_string(), None);
                Ok(None)
            }
        }
    }

    fn extremal(&mut self) -> Result<Option<Matching>> {
        let start = Instant::now();
        let Some(report) = best_template(self.h)? else {
            self.record("extremal", start, "no H' template applies".into(), None);
            return Ok(None);
        };
        if report.epsilon > self.cfg.epsilon && self.cfg.mode != SolverMode::ExtremalOnly {
            let msg = format!("closest template {:?} is {:.4}-far", report.template.profile, report.epsilon);
            self.record("extremal", start, msg, None);
            return Ok(None);
        }
        match extremal_solve(self.h, &report.template, self.cfg.alpha, self.cfg) {
            Ok(m) => Ok(self.accept("extremal", start, m)),
            Err(e) => {
                self.record("extremal", start, e.to_string(), None);
                Ok(None)
            }
        }
    }

    fn heuristic(&mut self) -> Result<Option<Matching>> {
        let start = Instant::now();
        let mut best = Matching::empty_for(self.h);
        for r in 0..self.cfg.restarts.max(1) as u64 {
            let m = local_search(self.h, self.cfg.seed.wrapping_add(r), self.cfg.augment_depth)?;
            if m.is_perfect() {
                return Ok(self.accept("local-search", start, m));
            }
            if m.len() > best.len() {
                best = m;
            }
        }
        self.record("local-search", start, "no perfect matching found".into(), Some(&best));
        Ok(None)
    }

    fn incomplete(mut self) -> SolveOutcome {
        let report = self
            .trace
            .iter()
            .map(|p| format!("{}: {}", p.phase, p.outcome))
            .collect::<Vec<_>>()
            .join("; ");
        SolveOutcome {
            status: SolveStatus::Incomplete,
            matching: std::mem::replace(&mut self.best, Matching::new(&[])),
            trace: self.trace,
            certificate: Certificate::Stuck { report },
        }
    }
}

/// Runs the configured pipeline. `NoPerfect` is only reported when an exact
/// search ran to completion, or when the classes differ in size.
pub fn solve_perfect_matching(h: &KPartiteHypergraph, cfg: &SolverConfig) -> Result<SolveOutcome> {
    let Some(n) = h.uniform_class_size() else {
        return Ok(SolveOutcome {
            status: SolveStatus::NoPerfect,
            matching: Matching::empty_for(h),
            trace: Vec::new(),
            certificate: Certificate::UnequalClasses {
                sizes: h.class_sizes().to_vec(),
            },
        });
    };
    let mut run = Run {
        h,
        cfg,
        trace: Vec::new(),
        best: Matching::empty_for(h),
    };
    if n == 0 {
        return Ok(SolveOutcome::perfect(Matching::empty_for(h), run.trace));
    }
    macro_rules! done {
        ($e:expr) => {
            if let Some(m) = $e {
                return Ok(SolveOutcome::perfect(m, run.trace));
            }
        };
    }
    macro_rules! exact {
        ($phase:expr, $limit:expr) => {
            match run.exact($phase, $limit) {
                Ok(m) => return Ok(SolveOutcome::perfect(m, run.trace)),
                Err(Some(out)) => return Ok(out),
                Err(None) => {}
            }
        };
    }
    match cfg.mode {
        SolverMode::ExactOnly => exact!("exact", cfg.exact_node_limit),
        SolverMode::HeuristicOnly => {
            done!(run.absorbing()?);
            done!(run.heuristic()?);
        }
        SolverMode::ExtremalOnly => done!(run.extremal()?),
        SolverMode::Auto => {
            if n <= cfg.exact_cutoff {
                exact!("exact", cfg.exact_node_limit);
            }
            done!(run.absorbing()?);
            done!(run.extremal()?);
            done!(run.heuristic()?);
            if n > cfg.exact_cutoff {
                exact!("exact-fallback", cfg.fallback_node_limit);
            }
        }
    }
    Ok(run.incomplete())
}
