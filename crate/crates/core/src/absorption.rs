//! Absorbing m-sets (balanced sets of size k(k-1) that can swallow a balanced
//! k-set) and a sampled, verified family of them.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use rand::seq::index::sample;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{BalancedSet, Edge, KPartiteHypergraph, VertexRef};
use crate::matching::Matching;
use crate::thresholds::binomial;

/// Most candidate sets drawn in one sampling round.
const MAX_CANDIDATES: u64 = 200_000;

/// Perfect matching of the subgraph induced on `parts` (equal-length index
/// lists, one per class), or `None`.
pub(crate) fn pm_within(h: &KPartiteHypergraph, parts: &[Vec<usize>]) -> Option<Vec<Edge>> {
    fn go(h: &KPartiteHypergraph, parts: &[Vec<usize>], used: &mut [Vec<bool>], out: &mut Vec<Edge>) -> bool {
        let j = out.len();
        if j == parts[0].len() {
            return true;
        }
        'edges: for &id in h.incident(VertexRef::new(0, parts[0][j])) {
            let e = h.edge(id);
            let mut slots = [0usize; 8];
            for c in 1..parts.len() {
                match parts[c].iter().position(|&i| i == e[c]) {
                    Some(p) if !used[c][p] => slots[c] = p,
                    _ => continue 'edges,
                }
            }
            for c in 1..parts.len() {
                used[c][slots[c]] = true;
            }
            out.push(e.clone());
            if go(h, parts, used, out) {
                return true;
            }
            out.pop();
            for c in 1..parts.len() {
                used[c][slots[c]] = false;
            }
        }
        false
    }
    debug_assert!(parts.len() <= 8);
    let mut used: Vec<Vec<bool>> = parts.iter().map(|p| vec![false; p.len()]).collect();
    let mut out = Vec::with_capacity(parts[0].len());
    go(h, parts, &mut used, &mut out).then_some(out)
}

fn with_target(parts: &[Vec<usize>], t: &[usize]) -> Vec<Vec<usize>> {
    parts
        .iter()
        .zip(t)
        .map(|(p, &x)| {
            let mut v = p.clone();
            v.push(x);
            v
        })
        .collect()
}

/// A balanced k(k-1)-set whose induced subgraph has a perfect matching.
#[derive(Debug, Clone, Serialize)]
pub struct AbsorbingSet {
    pub set: BalancedSet,
    /// A perfect matching of H[set].
    pub matching: Vec<Vec<usize>>,
    #[serde(skip)]
    cache: Arc<Mutex<HashMap<Vec<usize>, bool>>>,
}

impl AbsorbingSet {
    /// `None` when `set` has the wrong shape or H[set] has no perfect matching.
    pub fn new(h: &KPartiteHypergraph, set: BalancedSet) -> Option<Self> {
        if set.k() != h.k() || set.part_size() + 1 != h.k() {
            return None;
        }
        let pm = pm_within(h, set.classes())?;
        Some(Self {
            set,
            matching: pm.iter().map(|e| e.to_vec()).collect(),
            cache: Arc::default(),
        })
    }

    /// Whether H[set ∪ t] has a perfect matching; `t[c]` is the class-c
    /// vertex of the target. Results are cached per target.
    pub fn absorbs(&self, h: &KPartiteHypergraph, t: &[usize]) -> bool {
        if let Some(&b) = self.cache.lock().expect("cache lock").get(t) {
            return b;
        }
        let b = pm_within(h, &with_target(self.set.classes(), t)).is_some();
        self.cache.lock().expect("cache lock").insert(t.to_vec(), b);
        b
    }
}

fn check_pair(h: &KPartiteHypergraph, a: &BalancedSet, t: &BalancedSet) -> Result<()> {
    let k = h.k();
    if a.k() != k || t.k() != k {
        return Err(Error::DimensionMismatch(format!("sets over {} and {} classes, H has {k}", a.k(), t.k())));
    }
    if a.part_size() != k - 1 {
        return Err(Error::InvalidParameter(format!("A has {} vertices, expected {}", a.len(), k * (k - 1))));
    }
    if t.part_size() != 1 {
        return Err(Error::InvalidParameter(format!("T has {} vertices, expected {k}", t.len())));
    }
    for v in a.vertices().chain(t.vertices()) {
        h.check_vertex(v)?;
    }
    if !a.is_disjoint(t) {
        return Err(Error::InvalidParameter("A and T overlap".into()));
    }
    Ok(())
}

/// Whether `a` is an absorbing set for the balanced k-set `t`: both H[A] and
/// H[A ∪ T] have perfect matchings.
pub fn is_absorbing(h: &KPartiteHypergraph, a: &BalancedSet, t: &BalancedSet) -> Result<bool> {
    check_pair(h, a, t)?;
    let target: Vec<usize> = t.classes().iter().map(|c| c[0]).collect();
    Ok(pm_within(h, a.classes()).is_some() && pm_within(h, &with_target(a.classes(), &target)).is_some())
}

/// Number of absorbing sets for `t`, counting vertex sets once. Stops as soon
/// as `cap` is reached.
pub fn count_absorbing(h: &KPartiteHypergraph, t: &BalancedSet, cap: Option<u64>) -> Result<u64> {
    let k = h.k();
    if t.k() != k || t.part_size() != 1 {
        return Err(Error::InvalidParameter(format!("T must be a balanced {k}-set")));
    }
    for v in t.vertices() {
        h.check_vertex(v)?;
    }
    let target: Vec<usize> = t.classes().iter().map(|c| c[0]).collect();
    let per_class: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|c| {
            (0..h.class_sizes()[c])
                .filter(|&i| i != target[c])
                .combinations(k - 1)
                .collect()
        })
        .collect();
    let cap = cap.unwrap_or(u64::MAX);
    let mut count = 0;
    for choice in per_class.iter().map(|v| v.iter()).multi_cartesian_product() {
        let parts: Vec<Vec<usize>> = choice.into_iter().cloned().collect();
        if pm_within(h, &parts).is_some() && pm_within(h, &with_target(&parts, &target)).is_some() {
            count += 1;
            if count >= cap {
                break;
            }
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PruneRule {
    /// Drop both sets of every intersecting pair.
    IntersectingPairs,
    /// Keep each candidate, in draw order, if it avoids all kept ones.
    GreedyDisjoint,
}

#[derive(Debug, Clone, Serialize)]
pub struct AbsorptionConfig {
    pub gamma: f64,
    pub seed: u64,
    pub retry_limit: usize,
    /// Expected number of candidates drawn, as a multiple of the member cap.
    pub oversample: f64,
    /// Enforce the asymptotic γ range, the literal member cap and the
    /// unboosted sampling probability.
    pub strict: bool,
    pub prune: PruneRule,
    /// Verify coverage on every balanced k-set when there are at most this
    /// many, otherwise on this many sampled ones.
    pub target_limit: usize,
}

impl Default for AbsorptionConfig {
    fn default() -> Self {
        Self {
            gamma: 0.1,
            seed: 0,
            retry_limit: 32,
            oversample: 1.0,
            strict: false,
            prune: PruneRule::IntersectingPairs,
            target_limit: 2000,
        }
    }
}

/// Upper end of the admissible γ range: (k-1)^{k²-2k-2} / (5k e^{k(k-1)}).
pub fn gamma_upper_bound(k: usize) -> f64 {
    let k = k as f64;
    (k - 1.0).powf(k * k - 2.0 * k - 2.0) / (5.0 * k * (k * (k - 1.0)).exp())
}

impl AbsorptionConfig {
    /// γ' = γ^{2k} k (k-1)² / 2.
    pub fn gamma_prime(&self, k: usize) -> f64 {
        self.gamma.powi(2 * k as i32) * (k * (k - 1) * (k - 1)) as f64 / 2.0
    }

    /// Δ = 2 (ne/(k-1))^{k(k-1)}.
    pub fn delta(k: usize, n: usize) -> f64 {
        2.0 * (n as f64 * std::f64::consts::E / (k - 1) as f64).powi((k * (k - 1)) as i32)
    }

    /// p = γ^k n / Δ, clamped to 1.
    pub fn p_base(&self, k: usize, n: usize) -> f64 {
        (self.gamma.powi(k as i32) * n as f64 / Self::delta(k, n)).min(1.0)
    }

    /// Largest family size allowed.
    pub fn member_cap(&self, k: usize, n: usize) -> usize {
        let x = self.gamma.powi(k as i32) * n as f64;
        if self.strict {
            x.floor() as usize
        } else {
            (x.ceil() as usize).max(1)
        }
    }

    fn validate(&self, k: usize) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(Error::InvalidParameter(format!("gamma {} not in (0,1)", self.gamma)));
        }
        if !(self.oversample.is_finite() && self.oversample > 0.0) {
            return Err(Error::InvalidParameter(format!("oversample {} must be positive", self.oversample)));
        }
        if self.strict && self.gamma >= gamma_upper_bound(k) {
            return Err(Error::InvalidParameter(format!(
                "strict mode: gamma {} is not below {:.3e}",
                self.gamma,
                gamma_upper_bound(k)
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AbsorbingFamily {
    pub members: Vec<AbsorbingSet>,
    /// Union of the members' matchings.
    pub base_matching: Vec<Vec<usize>>,
    /// Minimum, over verified targets, of the number of members absorbing it.
    pub coverage_g: usize,
    pub targets_checked: usize,
    /// All balanced k-sets outside the family were checked.
    pub targets_exhaustive: bool,
    pub retries: usize,
    pub cap: usize,
    pub p: f64,
    pub p_base: f64,
}

impl AbsorbingFamily {
    /// Family from explicit sets; each must have a perfect matching and the
    /// sets must be pairwise disjoint. Coverage is not computed.
    pub fn from_sets(h: &KPartiteHypergraph, sets: Vec<BalancedSet>) -> Result<Self> {
        let mut members = Vec::with_capacity(sets.len());
        for s in sets {
            for v in s.vertices() {
                h.check_vertex(v)?;
            }
            let desc = format!("{:?}", s.classes());
            let m = AbsorbingSet::new(h, s)
                .ok_or_else(|| Error::InvalidParameter(format!("{desc} is not a balanced set with a perfect matching")))?;
            members.push(m);
        }
        if !pairwise_disjoint(&members) {
            return Err(Error::InvalidParameter("members overlap".into()));
        }
        Ok(Self::assemble(members, 0, 0, false, 0, 0, 0.0, 0.0))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        members: Vec<AbsorbingSet>,
        coverage_g: usize,
        targets_checked: usize,
        targets_exhaustive: bool,
        retries: usize,
        cap: usize,
        p: f64,
        p_base: f64,
    ) -> Self {
        let base_matching = members.iter().flat_map(|m| m.matching.iter().cloned()).collect();
        Self {
            members,
            base_matching,
            coverage_g,
            targets_checked,
            targets_exhaustive,
            retries,
            cap,
            p,
            p_base,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Vertices covered by the family, per class, sorted.
    pub fn covered(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); k];
        for m in &self.members {
            for (c, idx) in m.set.classes().iter().enumerate() {
                out[c].extend(idx);
            }
        }
        out.iter_mut().for_each(|v| v.sort_unstable());
        out
    }

    pub fn base(&self, h: &KPartiteHypergraph) -> Result<Matching> {
        Matching::from_edges(h, &self.base_matching)
    }
}

fn pairwise_disjoint(members: &[AbsorbingSet]) -> bool {
    let mut seen = HashSet::new();
    members.iter().all(|m| m.set.vertices().all(|v| seen.insert(v)))
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleOutcome {
    pub family: AbsorbingFamily,
    pub success: bool,
    /// Why the last attempt was rejected, when `success` is false.
    pub failure: Option<String>,
}

fn random_set(rng: &mut ChaCha8Rng, sizes: &[usize], r: usize) -> BalancedSet {
    let per_class = sizes.iter().map(|&n| sample(rng, n, r).into_vec()).collect();
    BalancedSet::from_classes(per_class).expect("distinct indices per class")
}

fn draw_candidates(rng: &mut ChaCha8Rng, sizes: &[usize], r: usize, count: u64, total: u128) -> Vec<BalancedSet> {
    if count as u128 * 2 >= total {
        // dense draw: enumerate everything and pick a random subset
        let all: Vec<BalancedSet> = sizes
            .iter()
            .map(|&n| (0..n).combinations(r))
            .multi_cartesian_product()
            .map(|parts| BalancedSet::from_classes(parts).expect("combinations are balanced"))
            .collect();
        return all.choose_multiple(rng, count as usize).cloned().collect();
    }
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count as usize);
    while (out.len() as u64) < count {
        let s = random_set(rng, sizes, r);
        if seen.insert(s.clone()) {
            out.push(s);
        }
    }
    out
}

fn prune(cands: Vec<BalancedSet>, rule: PruneRule) -> Vec<BalancedSet> {
    match rule {
        PruneRule::IntersectingPairs => {
            let bad: Vec<bool> = (0..cands.len())
                .map(|i| (0..cands.len()).any(|j| i != j && !cands[i].is_disjoint(&cands[j])))
                .collect();
            cands.into_iter().zip(bad).filter(|(_, b)| !b).map(|(c, _)| c).collect()
        }
        PruneRule::GreedyDisjoint => {
            let mut kept: Vec<BalancedSet> = Vec::new();
            for c in cands {
                if kept.iter().all(|x| x.is_disjoint(&c)) {
                    kept.push(c);
                }
            }
            kept
        }
    }
}

/// Targets for coverage verification: all balanced k-sets avoiding the
/// family, or a seeded sample of `limit` of them.
fn targets(h: &KPartiteHypergraph, members: &[AbsorbingSet], limit: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<usize>>, bool) {
    let k = h.k();
    let mut taken: Vec<Vec<bool>> = h.class_sizes().iter().map(|&n| vec![false; n]).collect();
    for m in members {
        for v in m.set.vertices() {
            taken[v.class][v.index] = true;
        }
    }
    let avail: Vec<Vec<usize>> = taken
        .iter()
        .map(|t| (0..t.len()).filter(|&i| !t[i]).collect())
        .collect();
    let total: u128 = avail.iter().map(|a| a.len() as u128).product();
    if total <= limit as u128 {
        let all = avail.iter().map(|a| a.iter().copied()).multi_cartesian_product().collect();
        return (all, true);
    }
    let picked = (0..limit)
        .map(|_| (0..k).map(|c| avail[c][rng.random_range(0..avail[c].len())]).collect())
        .collect();
    (picked, false)
}

/// Per-target member hit counts, with members that absorb no target removed
/// until stable.
fn verify(
    h: &KPartiteHypergraph,
    mut members: Vec<AbsorbingSet>,
    limit: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<AbsorbingSet>, usize, usize, bool) {
    loop {
        let (ts, exhaustive) = targets(h, &members, limit, rng);
        let hits: Vec<Vec<bool>> = ts
            .par_iter()
            .map(|t| members.iter().map(|m| m.absorbs(h, t)).collect())
            .collect();
        let useful: Vec<bool> = (0..members.len()).map(|i| hits.iter().any(|row| row[i])).collect();
        if useful.iter().all(|&u| u) {
            let g = if ts.is_empty() || members.is_empty() {
                0
            } else {
                hits.iter().map(|row| row.iter().filter(|&&b| b).count()).min().unwrap_or(0)
            };
            return (members, g, ts.len(), exhaustive);
        }
        members = members.into_iter().zip(useful).filter(|(_, u)| *u).map(|(m, _)| m).collect();
    }
}

/// Samples a family of pairwise-disjoint absorbing sets and verifies how many
/// members absorb each balanced k-set outside it.
pub fn sample_absorbing_family(h: &KPartiteHypergraph, cfg: &AbsorptionConfig) -> Result<SampleOutcome> {
    let k = h.k();
    let n = h.uniform_class_size().ok_or_else(|| Error::UnequalClasses(h.class_sizes().to_vec()))?;
    cfg.validate(k)?;
    if k > 8 {
        return Err(Error::InvalidParameter(format!("k={k} is above the supported 8")));
    }
    let r = k - 1;
    let cap = cfg.member_cap(k, n);
    let total = binomial(n as u64, r as u64).checked_pow(k as u32).unwrap_or(u128::MAX);
    let p_base = cfg.p_base(k, n);
    let p = if cfg.strict || total == 0 {
        p_base
    } else {
        p_base.max(cfg.oversample * cap as f64 / total as f64).min(1.0)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best: Option<AbsorbingFamily> = None;
    let mut failure = String::new();
    for attempt in 0..=cfg.retry_limit {
        let trials = total.min(u64::MAX as u128) as u64;
        let x = if trials == 0 || p <= 0.0 {
            0
        } else {
            Binomial::new(trials, p)
                .map_err(|e| Error::InvalidParameter(e.to_string()))?
                .sample(&mut rng)
                .min(MAX_CANDIDATES)
        };
        let cands = prune(draw_candidates(&mut rng, h.class_sizes(), r, x, total), cfg.prune);
        let mut members: Vec<AbsorbingSet> = cands
            .into_par_iter()
            .filter_map(|s| AbsorbingSet::new(h, s))
            .collect();
        members.sort_by(|a, b| a.set.cmp(&b.set));
        members.truncate(cap);
        let (members, g, checked, exhaustive) = verify(h, members, cfg.target_limit, &mut rng);
        let fam = AbsorbingFamily::assemble(members, g, checked, exhaustive, attempt, cap, p, p_base);
        if g > 0 {
            return Ok(SampleOutcome {
                family: fam,
                success: true,
                failure: None,
            });
        }
        failure = if fam.is_empty() {
            format!("no absorbing set survived among {x} candidates")
        } else if checked == 0 {
            "family leaves no balanced k-set to absorb".to_string()
        } else {
            "some balanced k-set is absorbed by no member".to_string()
        };
        if best.as_ref().is_none_or(|b| fam.len() > b.len()) {
            best = Some(fam);
        }
    }
    let mut family = best.expect("at least one attempt");
    family.retries = cfg.retry_limit;
    Ok(SampleOutcome {
        family,
        success: false,
        failure: Some(format!("{failure} after {} retries", cfg.retry_limit)),
    })
}

/// Extends the family's base matching to cover `w` as well. `w` is split into
/// k-sets by pairing its sorted class lists; each is swallowed by the least
/// unused member that absorbs it.
pub fn absorb(h: &KPartiteHypergraph, family: &AbsorbingFamily, w: &BalancedSet) -> Result<Matching> {
    let k = h.k();
    if w.k() != k {
        return Err(Error::DimensionMismatch(format!("W has {} classes, H has {k}", w.k())));
    }
    for v in w.vertices() {
        h.check_vertex(v)?;
    }
    if let Some(m) = family.members.iter().find(|m| !m.set.is_disjoint(w)) {
        return Err(Error::InvalidParameter(format!("W meets member {:?}", m.set.classes())));
    }
    let mut used = vec![false; family.len()];
    let mut swallowed: Vec<Option<Vec<Edge>>> = vec![None; family.len()];
    for j in 0..w.part_size() {
        let t: Vec<usize> = (0..k).map(|c| w.class(c)[j]).collect();
        let pick = (0..family.len()).find(|&i| !used[i] && family.members[i].absorbs(h, &t));
        let Some(i) = pick else {
            let named: Vec<String> = t.iter().enumerate().map(|(c, &x)| VertexRef::new(c, x).to_string()).collect();
            return Err(Error::Absorption(format!(
                "no unused absorbing member for k-set {{{}}}",
                named.join(", ")
            )));
        };
        used[i] = true;
        swallowed[i] = pm_within(h, &with_target(family.members[i].set.classes(), &t));
    }
    let edges = family.members.iter().zip(&swallowed).flat_map(|(m, s)| match s {
        Some(es) => es.iter().map(|e| e.to_vec()).collect::<Vec<_>>(),
        None => m.matching.clone(),
    });
    Matching::from_edges(h, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_hprime, counterexample6};

    fn bs(parts: Vec<Vec<usize>>) -> BalancedSet {
        BalancedSet::from_classes(parts).unwrap()
    }

    #[test]
    fn is_absorbing_basic() {
        let k = KPartiteHypergraph::complete(3, 4).unwrap();
        let a = bs(vec![vec![0, 1], vec![0, 1], vec![0, 1]]);
        let t = bs(vec![vec![2], vec![3], vec![2]]);
        assert!(is_absorbing(&k, &a, &t).unwrap());
        let e = KPartiteHypergraph::empty(&[4, 4, 4]).unwrap();
        assert!(!is_absorbing(&e, &a, &t).unwrap());
        let overlap = bs(vec![vec![0], vec![3], vec![2]]);
        assert!(is_absorbing(&k, &a, &overlap).is_err());
        assert!(is_absorbing(&k, &t, &t).is_err());
    }

    #[test]
    fn counterexample6_has_no_room_for_a_target() {
        let h = counterexample6();
        let a = bs(vec![vec![0, 1], vec![0, 1], vec![0, 1]]);
        let t = bs(vec![vec![0], vec![0], vec![0]]);
        assert!(is_absorbing(&h, &a, &t).is_err());
    }

    #[test]
    fn counts_on_small_graphs() {
        let t = bs(vec![vec![0], vec![0], vec![0]]);
        assert_eq!(count_absorbing(&KPartiteHypergraph::complete(3, 3).unwrap(), &t, None).unwrap(), 1);
        assert_eq!(count_absorbing(&KPartiteHypergraph::complete(3, 4).unwrap(), &t, None).unwrap(), 27);
        assert_eq!(count_absorbing(&KPartiteHypergraph::complete(3, 4).unwrap(), &t, Some(5)).unwrap(), 5);
        assert_eq!(count_absorbing(&KPartiteHypergraph::empty(&[4, 4, 4]).unwrap(), &t, None).unwrap(), 0);
    }

    #[test]
    fn sample_on_complete() {
        let h = KPartiteHypergraph::complete(3, 12).unwrap();
        let cfg = AbsorptionConfig { seed: 7, ..Default::default() };
        let out = sample_absorbing_family(&h, &cfg).unwrap();
        assert!(out.success, "{:?}", out.failure);
        let fam = &out.family;
        assert!(!fam.is_empty() && fam.len() <= fam.cap);
        assert!(pairwise_disjoint(&fam.members));
        assert_eq!(fam.coverage_g, fam.len());
        assert!(fam.targets_exhaustive);
        fam.base(&h).unwrap();
    }

    #[test]
    fn sample_on_empty_fails() {
        let h = KPartiteHypergraph::empty(&[6, 6, 6]).unwrap();
        let cfg = AbsorptionConfig { retry_limit: 3, ..Default::default() };
        let out = sample_absorbing_family(&h, &cfg).unwrap();
        assert!(!out.success);
        assert!(out.family.is_empty());
        assert_eq!(out.family.retries, 3);
    }

    #[test]
    fn sample_on_hprime_is_deterministic() {
        let h = build_hprime(12, [4, 4, 4]).unwrap();
        let cfg = AbsorptionConfig {
            gamma: 0.4,
            seed: 3,
            ..Default::default()
        };
        let a = sample_absorbing_family(&h, &cfg).unwrap();
        let b = sample_absorbing_family(&h, &cfg).unwrap();
        let sets = |o: &SampleOutcome| o.family.members.iter().map(|m| m.set.clone()).collect::<Vec<_>>();
        assert_eq!(sets(&a), sets(&b));
        assert_eq!(a.family.coverage_g, b.family.coverage_g);
    }

    #[test]
    fn strict_mode_rejects_desk_gamma() {
        let h = KPartiteHypergraph::complete(3, 6).unwrap();
        let cfg = AbsorptionConfig { strict: true, ..Default::default() };
        assert!(sample_absorbing_family(&h, &cfg).is_err());
        let tiny = AbsorptionConfig {
            strict: true,
            gamma: gamma_upper_bound(3) / 2.0,
            retry_limit: 0,
            ..Default::default()
        };
        let out = sample_absorbing_family(&h, &tiny).unwrap();
        assert!(!out.success);
        assert_eq!(out.family.cap, 0);
    }

    #[test]
    fn absorb_one_target() {
        let h = KPartiteHypergraph::complete(3, 6).unwrap();
        let fam = AbsorbingFamily::from_sets(&h, vec![bs(vec![vec![0, 1], vec![0, 1], vec![0, 1]])]).unwrap();
        let w = bs(vec![vec![5], vec![4], vec![3]]);
        let m = absorb(&h, &fam, &w).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.covered_count(), 9);
        assert_eq!(absorb(&h, &fam, &BalancedSet::from_classes(vec![vec![]; 3]).unwrap()).unwrap(), fam.base(&h).unwrap());
        let two = bs(vec![vec![4, 5], vec![4, 5], vec![4, 5]]);
        let err = absorb(&h, &fam, &two).unwrap_err();
        assert!(err.to_string().contains("v0:5"), "{err}");
        assert!(absorb(&h, &fam, &bs(vec![vec![0], vec![5], vec![5]])).is_err());
    }
}
