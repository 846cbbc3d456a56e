//! Generators for the extremal families.
//!
//! `W_i` is always the last `d_i` local indices of class `i`, and the
//! designated vertex `u_i` of `U_i` is local index 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{all_tuples, KPartiteHypergraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TemplateRule {
    /// Every edge meeting `W`.
    AllMeetingW,
    /// Edges with one or two vertices in `W` (k = 3 only).
    UuwUww,
}

/// A split of each class into `U_i` and `W_i` together with an edge rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalTemplate {
    pub k: usize,
    pub n: usize,
    pub profile: Vec<usize>,
    pub rule: TemplateRule,
}

impl ExtremalTemplate {
    pub fn new(n: usize, profile: &[usize], rule: TemplateRule) -> Result<Self> {
        let k = profile.len();
        if k < 2 {
            return Err(Error::InvalidUniformity(k));
        }
        if rule == TemplateRule::UuwUww && k != 3 {
            return Err(Error::InvalidProfile(format!(
                "the UUW/UWW rule needs k=3, got k={k}"
            )));
        }
        if let Some(d) = profile.iter().find(|&&d| d > n) {
            return Err(Error::InvalidProfile(format!("d={d} exceeds n={n}")));
        }
        Ok(Self {
            k,
            n,
            profile: profile.to_vec(),
            rule,
        })
    }

    /// H'(n; d_1, d_2, d_3).
    pub fn hprime(n: usize, profile: [usize; 3]) -> Result<Self> {
        Self::new(n, &profile, TemplateRule::UuwUww)
    }

    pub fn in_w(&self, class: usize, index: usize) -> bool {
        index >= self.n - self.profile[class]
    }

    pub fn w_count(&self, e: &[usize]) -> usize {
        e.iter().enumerate().filter(|&(c, &i)| self.in_w(c, i)).count()
    }

    pub fn contains(&self, e: &[usize]) -> bool {
        let w = self.w_count(e);
        match self.rule {
            TemplateRule::AllMeetingW => w >= 1,
            TemplateRule::UuwUww => w == 1 || w == 2,
        }
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        vec![self.n; self.k]
    }

    pub fn build(&self) -> KPartiteHypergraph {
        let sizes = self.class_sizes();
        KPartiteHypergraph::new(self.k, &sizes, all_tuples(&sizes).filter(|e| self.contains(e)))
            .expect("template tuples are in range")
    }

    /// Edge count of the template, computed by counting rather than building.
    pub fn edge_count(&self) -> u128 {
        let n = self.n as u128;
        let total = n.pow(self.k as u32);
        let no_w: u128 = self.profile.iter().map(|&d| n - d as u128).product();
        match self.rule {
            TemplateRule::AllMeetingW => total - no_w,
            TemplateRule::UuwUww => {
                let all_w: u128 = self.profile.iter().map(|&d| d as u128).product();
                total - no_w - all_w
            }
        }
    }
}

/// The profile `d_i = floor((m + i - 1)/k)`, i = 1..k.
pub fn hk_profile(k: usize, m: usize) -> Vec<usize> {
    (1..=k).map(|i| (m + i - 1) / k).collect()
}

/// H(n; d_1, ..., d_k): every edge meeting `W`.
pub fn build_h(n: usize, profile: &[usize]) -> Result<KPartiteHypergraph> {
    Ok(ExtremalTemplate::new(n, profile, TemplateRule::AllMeetingW)?.build())
}

/// H_k(n; m).
pub fn build_hk(k: usize, n: usize, m: usize) -> Result<KPartiteHypergraph> {
    if m > k * n {
        return Err(Error::InvalidParameter(format!("m={m} exceeds kn={}", k * n)));
    }
    build_h(n, &hk_profile(k, m))
}

/// The family added on top of H_k(n; m-1): legal k-sets holding more than
/// k/2 of the designated vertices.
pub fn build_hstar_added(k: usize, n: usize) -> Result<KPartiteHypergraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let sizes = vec![n; k];
    KPartiteHypergraph::new(
        k,
        &sizes,
        all_tuples(&sizes).filter(|e| 2 * e.iter().filter(|&&i| i == 0).count() > k),
    )
}

/// H*_k(n; m) = H_k(n; m-1) plus the added family.
pub fn build_hstar(k: usize, n: usize, m: usize) -> Result<KPartiteHypergraph> {
    if m == 0 {
        return Err(Error::InvalidParameter("H* needs m >= 1".into()));
    }
    let base = build_hk(k, n, m - 1)?;
    let added = build_hstar_added(k, n)?;
    let sizes = vec![n; k];
    KPartiteHypergraph::new(k, &sizes, base.edges().iter().chain(added.edges()))
}

/// H'(n; d_1, d_2, d_3): edges of type UUW and UWW.
pub fn build_hprime(n: usize, profile: [usize; 3]) -> Result<KPartiteHypergraph> {
    Ok(ExtremalTemplate::hprime(n, profile)?.build())
}

/// The 4-edge hypergraph on classes of size 2 with δ₁ = 2 and no perfect matching.
pub fn counterexample6() -> KPartiteHypergraph {
    KPartiteHypergraph::new(3, &[2, 2, 2], [[0, 0, 0], [0, 1, 1], [1, 1, 0], [1, 0, 1]])
        .expect("fixed edge list")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{LegalSet, VertexRef};

    #[test]
    fn hk_profiles() {
        assert_eq!(hk_profile(3, 5), vec![1, 2, 2]);
        assert_eq!(hk_profile(3, 3), vec![1, 1, 1]);
        assert_eq!(hk_profile(3, 0), vec![0, 0, 0]);
        assert_eq!(build_hk(3, 7, 0).unwrap().edge_count(), 0);
    }

    #[test]
    fn h_extremes() {
        assert_eq!(build_h(3, &[3, 3, 3]).unwrap(), KPartiteHypergraph::complete(3, 3).unwrap());
        assert_eq!(build_h(4, &[0, 0, 0]).unwrap().edge_count(), 0);
        assert!(build_h(3, &[4, 0, 0]).is_err());
        assert!(build_hk(3, 2, 7).is_err());
    }

    #[test]
    fn hk_4_3_degrees() {
        let h = build_hk(3, 4, 3).unwrap();
        assert_eq!(h.min_l_degree(1).unwrap(), 7);
        let pair = LegalSet::new([VertexRef::new(0, 0), VertexRef::new(1, 0)]).unwrap();
        assert_eq!(h.degree(&pair).unwrap(), 1);
    }

    #[test]
    fn hprime_counts() {
        assert_eq!(build_hprime(3, [1, 1, 1]).unwrap().edge_count(), 18);
        assert_eq!(build_hprime(4, [4, 4, 4]).unwrap().edge_count(), 0);
        assert_eq!(build_hprime(4, [0, 0, 0]).unwrap().edge_count(), 0);
        let t = ExtremalTemplate::hprime(9, [3, 3, 3]).unwrap();
        assert_eq!(t.edge_count(), 486);
        assert_eq!(t.build().edge_count(), 486);
        assert!(ExtremalTemplate::new(3, &[1, 1, 1, 1], TemplateRule::UuwUww).is_err());
    }

    #[test]
    fn hstar_5_4() {
        let h = build_hstar(3, 5, 4).unwrap();
        assert_eq!(h.min_l_degree(1).unwrap(), 10);
        assert!(build_hstar(3, 5, 0).is_err());
        // k=3: u1u2u3 plus the three tuples with exactly two designated vertices
        assert_eq!(build_hstar_added(3, 5).unwrap().edge_count(), 1 + 3 * 4);
    }

    #[test]
    fn counterexample_degree() {
        let h = counterexample6();
        assert_eq!(h.edge_count(), 4);
        assert_eq!(h.min_l_degree(1).unwrap(), 2);
    }

    #[test]
    fn template_edge_count_matches_build() {
        for n in 1..=5 {
            for d in itertools::iproduct!(0..=n, 0..=n, 0..=n) {
                let p = [d.0, d.1, d.2];
                for rule in [TemplateRule::AllMeetingW, TemplateRule::UuwUww] {
                    let t = ExtremalTemplate::new(n, &p, rule).unwrap();
                    assert_eq!(t.edge_count(), t.build().edge_count() as u128);
                }
            }
        }
    }
}
