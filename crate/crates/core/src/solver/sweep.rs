use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{solve_perfect_matching, SolveStatus, SolverConfig};
use crate::error::{Error, Result};
use crate::hypergraph::KPartiteHypergraph;

/// Largest n accepted by the sweep harness.
pub const MAX_SWEEP_N: usize = 30;

/// Random 3-partite 3-graph on `n + n + n` vertices with δ₁ ≥ `target`.
///
/// Each triple is kept with probability target/n²; then, while some vertex
/// is deficient, the least-degree vertex (lowest label on ties) gains the
/// missing edge through it that helps the most other deficient vertices,
/// and among those the one whose other endpoints have least total degree.
pub fn random_with_min_degree(n: usize, target: usize, rng: &mut impl Rng) -> Result<KPartiteHypergraph> {
    if target > n * n {
        return Err(Error::InvalidParameter(format!("target δ₁ {target} exceeds n² = {}", n * n)));
    }
    let q = if n == 0 { 0.0 } else { target as f64 / (n * n) as f64 };
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let mut present = vec![false; n * n * n];
    let mut deg = vec![vec![0usize; n]; 3];
    let add = |e: [usize; 3], present: &mut Vec<bool>, deg: &mut Vec<Vec<usize>>| {
        present[idx(e[0], e[1], e[2])] = true;
        for (c, &i) in e.iter().enumerate() {
            deg[c][i] += 1;
        }
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if rng.random_bool(q) {
                    add([a, b, c], &mut present, &mut deg);
                }
            }
        }
    }
    while let Some((dv, cv, iv)) = (0..3)
        .flat_map(|c| (0..n).map(move |i| (c, i)))
        .map(|(c, i)| (deg[c][i], c, i))
        .min()
        .filter(|&(d, _, _)| d < target)
    {
        debug_assert!(dv < n * n);
        let (j, l) = ((cv + 1) % 3, (cv + 2) % 3);
        let mut best: Option<((usize, usize), [usize; 3])> = None;
        for a in 0..n {
            for b in 0..n {
                let mut e = [0; 3];
                e[cv] = iv;
                e[j] = a;
                e[l] = b;
                if present[idx(e[0], e[1], e[2])] {
                    continue;
                }
                let helped = (deg[j][a] < target) as usize + (deg[l][b] < target) as usize;
                let key = (2 - helped, deg[j][a] + deg[l][b]);
                if best.is_none_or(|(k, _)| key < k) {
                    best = Some((key, e));
                }
            }
        }
        let (_, e) = best.expect("a deficient vertex has a missing edge");
        add(e, &mut present, &mut deg);
    }
    let edges = (0..n * n * n).filter(|&x| present[x]).map(|x| [x / (n * n), x / n % n, x % n]);
    KPartiteHypergraph::new(3, &[n, n, n], edges)
}

/// [`random_with_min_degree`] driven by a ChaCha8 stream seeded with `seed`.
pub fn random_instance(n: usize, target: usize, seed: u64) -> Result<KPartiteHypergraph> {
    random_with_min_degree(n, target, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub delta1: usize,
    pub trials: usize,
    pub pm_found: usize,
    pub no_pm: usize,
    pub incomplete: usize,
    pub mean_time_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub version: u32,
    pub seed: u64,
    pub rows: Vec<SweepRow>,
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `t` at grid target `delta`.
pub(crate) fn trial_seed(seed: u64, delta: usize, t: usize) -> u64 {
    mix(mix(mix(seed) ^ delta as u64) ^ t as u64)
}

/// For each δ₁ target in `grid`, solves `trials` random instances and counts
/// outcomes. Everything but `mean_time_ms` is a function of the arguments.
pub fn threshold_sweep(n: usize, trials: usize, grid: &[usize], seed: u64, cfg: &SolverConfig) -> Result<SweepReport> {
    if n == 0 || n > MAX_SWEEP_N {
        return Err(Error::InvalidParameter(format!("n={n} not in 1..={MAX_SWEEP_N}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if let Some(&d) = grid.iter().find(|&&d| d > n * n) {
        return Err(Error::InvalidParameter(format!("target δ₁ {d} exceeds n² = {}", n * n)));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &delta in grid {
        let results: Vec<(SolveStatus, f64)> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let s = trial_seed(seed, delta, t);
                let h = random_instance(n, delta, s)?;
                let start = Instant::now();
                let out = solve_perfect_matching(&h, &SolverConfig { seed: s, ..cfg.clone() })?;
                Ok((out.status, start.elapsed().as_secs_f64() * 1e3))
            })
            .collect::<Result<_>>()?;
        let count = |st: SolveStatus| results.iter().filter(|r| r.0 == st).count();
        rows.push(SweepRow {
            n,
            delta1: delta,
            trials,
            pm_found: count(SolveStatus::Perfect),
            no_pm: count(SolveStatus::NoPerfect),
            incomplete: count(SolveStatus::Incomplete),
            mean_time_ms: results.iter().map(|r| r.1).sum::<f64>() / trials as f64,
        });
    }
    Ok(SweepReport { version: 1, seed, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_meets_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (n, t) in [(5, 0), (5, 10), (6, 16), (7, 49)] {
            let h = random_with_min_degree(n, t, &mut rng).unwrap();
            assert!(h.min_l_degree(1).unwrap() >= t);
        }
        assert_eq!(random_with_min_degree(4, 16, &mut rng).unwrap().edge_count(), 64);
        assert!(random_with_min_degree(4, 17, &mut rng).is_err());
    }

    #[test]
    fn extremes_and_reproducibility() {
        let cfg = SolverConfig::default();
        let r = threshold_sweep(9, 3, &[0, 81], 5, &cfg).unwrap();
        assert_eq!(r.rows[0].pm_found, 0);
        assert_eq!(r.rows[0].no_pm, 3);
        assert_eq!(r.rows[1].pm_found, 3);
        let again = threshold_sweep(9, 3, &[0, 81], 5, &cfg).unwrap();
        let strip = |r: &SweepReport| r.rows.iter().map(|x| (x.delta1, x.pm_found, x.no_pm, x.incomplete)).collect::<Vec<_>>();
        assert_eq!(strip(&r), strip(&again));
        assert!(threshold_sweep(9, 1, &[82], 5, &cfg).is_err());
        assert!(threshold_sweep(9, 0, &[1], 5, &cfg).is_err());
    }
}
