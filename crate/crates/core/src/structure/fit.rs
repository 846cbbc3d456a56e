//! How far a hypergraph is from an extremal template, globally and per vertex.

use serde::Serialize;

use crate::constructions::ExtremalTemplate;
use crate::error::{Error, Result};
use crate::hypergraph::{all_tuples, KPartiteHypergraph};

#[derive(Debug, Clone, Serialize)]
pub struct ClosenessReport {
    pub template: ExtremalTemplate,
    /// |E(template) \ E(H)|.
    pub missing: u64,
    /// missing / n^k.
    pub epsilon: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GoodnessReport {
    pub alpha: f64,
    /// α·n^{k-1}; a vertex is bad when its count exceeds this.
    pub limit: f64,
    /// `missing[c][i]`: template link edges of vertex (c, i) absent from H.
    pub missing: Vec<Vec<u64>>,
    pub good: Vec<Vec<usize>>,
    pub bad: Vec<Vec<usize>>,
}

impl GoodnessReport {
    pub fn bad_count(&self) -> usize {
        self.bad.iter().map(Vec::len).sum()
    }
}

fn check_dims(h: &KPartiteHypergraph, t: &ExtremalTemplate) -> Result<()> {
    if h.class_sizes() != t.class_sizes().as_slice() {
        return Err(Error::DimensionMismatch(format!(
            "hypergraph classes {:?}, template {:?}",
            h.class_sizes(),
            t.class_sizes()
        )));
    }
    Ok(())
}

/// Per-vertex counts of missing template edges.
fn missing_per_vertex(h: &KPartiteHypergraph, t: &ExtremalTemplate) -> (u64, Vec<Vec<u64>>) {
    let mut per: Vec<Vec<u64>> = vec![vec![0; t.n]; t.k];
    let mut total = 0;
    for e in all_tuples(&t.class_sizes()) {
        if t.contains(&e) && !h.contains_edge(&e) {
            total += 1;
            for (c, &i) in e.iter().enumerate() {
                per[c][i] += 1;
            }
        }
    }
    (total, per)
}

pub fn closeness(h: &KPartiteHypergraph, template: &ExtremalTemplate) -> Result<ClosenessReport> {
    check_dims(h, template)?;
    // template edges present in H, counted from H's side
    let present = h.edges().iter().filter(|e| template.contains(e)).count() as u64;
    let missing = template.edge_count() as u64 - present;
    Ok(ClosenessReport {
        template: template.clone(),
        missing,
        epsilon: missing as f64 / (template.n as f64).powi(template.k as i32),
    })
}

pub fn classify_good_vertices(h: &KPartiteHypergraph, template: &ExtremalTemplate, alpha: f64) -> Result<GoodnessReport> {
    check_dims(h, template)?;
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::InvalidParameter(format!("alpha {alpha} is negative")));
    }
    let (_, missing) = missing_per_vertex(h, template);
    let limit = alpha * (template.n as f64).powi(template.k as i32 - 1);
    let mut good = vec![Vec::new(); template.k];
    let mut bad = vec![Vec::new(); template.k];
    for (c, row) in missing.iter().enumerate() {
        for (i, &m) in row.iter().enumerate() {
            if m as f64 > limit {
                bad[c].push(i);
            } else {
                good[c].push(i);
            }
        }
    }
    Ok(GoodnessReport {
        alpha,
        limit,
        missing,
        good,
        bad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::VertexRef;

    #[test]
    fn template_itself() {
        let t = ExtremalTemplate::hprime(6, [2, 2, 2]).unwrap();
        let h = t.build();
        let c = closeness(&h, &t).unwrap();
        assert_eq!((c.missing, c.epsilon), (0, 0.0));
        let g = classify_good_vertices(&h, &t, 0.0).unwrap();
        assert_eq!(g.bad_count(), 0);
    }

    #[test]
    fn empty_against_hprime_n_n() {
        for n in [3usize, 6, 9] {
            let d = n / 3;
            let t = ExtremalTemplate::hprime(n, [d, d, d]).unwrap();
            let h = KPartiteHypergraph::empty(&[n, n, n]).unwrap();
            let c = closeness(&h, &t).unwrap();
            assert_eq!(c.missing, 2 * (n as u64).pow(3) / 3);
            let g = classify_good_vertices(&h, &t, 0.0).unwrap();
            assert_eq!(g.bad_count(), 3 * n);
        }
    }

    #[test]
    fn one_missing_edge_and_one_bad_vertex() {
        let t = ExtremalTemplate::hprime(6, [2, 2, 2]).unwrap();
        let full = t.build();
        let gone = full.edge(0).clone();
        let h = full.filter_edges(|e| e != gone.as_slice());
        assert_eq!(closeness(&h, &t).unwrap().missing, 1);

        let v = VertexRef::new(1, 4);
        let h = full.filter_edges(|e| e[1] != 4);
        let deg = full.vertex_degree(v) as f64;
        let g = classify_good_vertices(&h, &t, (deg - 1.0) / 36.0).unwrap();
        assert_eq!(g.bad, vec![vec![], vec![4], vec![]]);
        assert_eq!(g.missing[1][4], deg as u64);
    }

    #[test]
    fn dimension_mismatch() {
        let t = ExtremalTemplate::hprime(6, [2, 2, 2]).unwrap();
        let h = KPartiteHypergraph::empty(&[5, 5, 5]).unwrap();
        assert!(closeness(&h, &t).is_err());
        assert!(classify_good_vertices(&h, &t, 0.1).is_err());
    }
}
