//! Degree bound for vertices that a maximum matching can avoid.
//!
//! If ν(H) = m and H − v still has an m-matching, every edge at v meets that
//! matching, so deg(v) ≤ n^{k-1} − (n−m)^{k-1}.

use serde::Serialize;

use super::{max_matching_exact, SearchBudget};
use crate::error::{Error, Result};
use crate::hypergraph::{KPartiteHypergraph, LegalSet, VertexRef};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeBoundCheck {
    pub degree: u64,
    pub bound: u64,
    /// ν(H) = m and H − v has an m-matching.
    pub premise: bool,
    /// `!premise || degree <= bound`.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetDegreeBoundCheck {
    pub min_degree: u64,
    pub bound: u64,
    /// k·m·n^{k-2}, the coarser form.
    pub coarse_bound: u64,
    /// ν(H) = m and H − T has an (m−k+1)-matching.
    pub premise: bool,
    /// `!premise || (min_degree <= bound && bound <= coarse_bound)`.
    pub holds: bool,
}

fn bound(k: usize, n: usize, m: usize) -> u64 {
    let n = n as u64;
    let rest = n.saturating_sub(m as u64);
    n.pow(k as u32 - 1) - rest.pow(k as u32 - 1)
}

fn nu(h: &KPartiteHypergraph, budget: &SearchBudget) -> Result<usize> {
    let r = max_matching_exact(h, budget);
    if r.optimal {
        Ok(r.matching.len())
    } else {
        Err(Error::BudgetExhausted(format!(
            "matching number undecided after {} nodes",
            r.nodes
        )))
    }
}

fn has_matching_of_size(h: &KPartiteHypergraph, size: usize, budget: &SearchBudget) -> Result<bool> {
    if size == 0 {
        return Ok(true);
    }
    let r = max_matching_exact(h, budget);
    if r.matching.len() >= size {
        Ok(true)
    } else if r.optimal {
        Ok(false)
    } else {
        Err(Error::BudgetExhausted("matching size undecided".into()))
    }
}

fn uniform(h: &KPartiteHypergraph) -> Result<usize> {
    h.uniform_class_size()
        .ok_or_else(|| Error::UnequalClasses(h.class_sizes().to_vec()))
}

/// Checks the single-vertex form of the bound on one instance.
pub fn check_degree_bound_after_removal(
    h: &KPartiteHypergraph,
    v: VertexRef,
    m: usize,
    budget: &SearchBudget,
) -> Result<DegreeBoundCheck> {
    let n = uniform(h)?;
    h.check_vertex(v)?;
    let degree = h.vertex_degree(v) as u64;
    let bound = bound(h.k(), n, m);
    let premise = nu(h, budget)? == m && has_matching_of_size(&h.without_vertices(&[v])?, m, budget)?;
    Ok(DegreeBoundCheck {
        degree,
        bound,
        premise,
        holds: !premise || degree <= bound,
    })
}

/// Checks the legal k-set form: some vertex of `t` obeys the bound.
pub fn check_degree_bound_for_set(
    h: &KPartiteHypergraph,
    t: &LegalSet,
    m: usize,
    budget: &SearchBudget,
) -> Result<SetDegreeBoundCheck> {
    let n = uniform(h)?;
    let k = h.k();
    if t.len() != k {
        return Err(Error::InvalidParameter(format!("T has {} vertices, expected {k}", t.len())));
    }
    for &v in t.vertices() {
        h.check_vertex(v)?;
    }
    let min_degree = t.vertices().iter().map(|&v| h.vertex_degree(v) as u64).min().unwrap_or(0);
    let bound = bound(k, n, m);
    let coarse_bound = (k * m) as u64 * (n as u64).pow(k as u32 - 2);
    let need = (m + 1).saturating_sub(k);
    let premise = nu(h, budget)? == m && has_matching_of_size(&h.without_vertices(t.vertices())?, need, budget)?;
    Ok(SetDegreeBoundCheck {
        min_degree,
        bound,
        coarse_bound,
        premise,
        holds: !premise || (min_degree <= bound && bound <= coarse_bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_hk;

    #[test]
    fn complete_graph_premise_fails() {
        let h = KPartiteHypergraph::complete(3, 3).unwrap();
        let r = check_degree_bound_after_removal(&h, VertexRef::new(0, 1), 2, &SearchBudget::default()).unwrap();
        assert_eq!((r.degree, r.bound), (9, 8));
        assert!(!r.premise);
        assert!(r.holds);
    }

    #[test]
    fn empty_graph() {
        let h = KPartiteHypergraph::empty(&[4, 4, 4]).unwrap();
        let r = check_degree_bound_after_removal(&h, VertexRef::new(2, 3), 0, &SearchBudget::default()).unwrap();
        assert_eq!((r.degree, r.bound), (0, 0));
        assert!(r.premise && r.holds);
    }

    #[test]
    fn hk_6_5_vertex_in_u() {
        let h = build_hk(3, 6, 5).unwrap();
        let r = check_degree_bound_after_removal(&h, VertexRef::new(0, 0), 5, &SearchBudget::default()).unwrap();
        assert_eq!(r.bound, 35);
        assert_eq!(r.degree, 20);
        assert!(r.premise && r.holds);
    }

    #[test]
    fn set_form() {
        let h = build_hk(3, 6, 5).unwrap();
        let t = LegalSet::new([VertexRef::new(0, 0), VertexRef::new(1, 0), VertexRef::new(2, 0)]).unwrap();
        let r = check_degree_bound_for_set(&h, &t, 5, &SearchBudget::default()).unwrap();
        assert!(r.premise && r.holds);
        assert!(r.min_degree <= r.bound && r.bound <= r.coarse_bound);
        let short = LegalSet::new([VertexRef::new(0, 0)]).unwrap();
        assert!(check_degree_bound_for_set(&h, &short, 5, &SearchBudget::default()).is_err());
    }
}
