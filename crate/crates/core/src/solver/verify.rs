use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{build_hk, build_hstar};
use crate::engine::{max_matching_exact, SearchBudget};
use crate::error::{Error, Result};
use crate::thresholds::{delta1_hstar_formula, delta_l_formula, threshold_exact};

/// Formula identities are checked for every n up to at least this.
const IDENTITY_N: u64 = 200;

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdRow {
    pub n: usize,
    pub residue: u8,
    /// "H_3(n;n-1)" or "H*_3(n;n-1)".
    pub construction: String,
    pub threshold: u64,
    /// δ₁ of the construction, computed from its edges.
    pub delta1: usize,
    /// δ₁ of the construction from its closed form.
    pub formula_delta1: u128,
    pub max_matching: usize,
    pub oracle_optimal: bool,
    pub oracle_nodes: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdTable {
    pub version: u32,
    pub n_max: usize,
    pub rows: Vec<ThresholdRow>,
    pub identity_checked_up_to: u64,
    /// n at which the closed form of the construction's δ₁ differs from the
    /// threshold.
    pub identity_failures: Vec<u64>,
    pub all_pass: bool,
}

fn formula_for(n: u64) -> Result<u128> {
    if n % 3 == 2 {
        delta1_hstar_formula(3, n, n - 1)
    } else {
        delta_l_formula(3, 1, n, n - 1)
    }
}

fn row(n: usize) -> Result<ThresholdRow> {
    let star = n % 3 == 2;
    let h = if star { build_hstar(3, n, n - 1)? } else { build_hk(3, n, n - 1)? };
    let t = threshold_exact(n as u64);
    let delta1 = h.min_l_degree(1)?;
    let formula_delta1 = formula_for(n as u64)?;
    let r = max_matching_exact(&h, &SearchBudget::default());
    let pass = delta1 as u64 == t.value && formula_delta1 == delta1 as u128 && r.optimal && r.matching.len() < n;
    Ok(ThresholdRow {
        n,
        residue: t.residue,
        construction: if star { "H*_3(n;n-1)" } else { "H_3(n;n-1)" }.into(),
        threshold: t.value,
        delta1,
        formula_delta1,
        max_matching: r.matching.len(),
        oracle_optimal: r.optimal,
        oracle_nodes: r.nodes,
        pass,
    })
}

/// Tightness table for 3 ≤ n ≤ n_max: each construction attains the
/// threshold degree and has no perfect matching.
pub fn verify_thresholds(n_max: usize) -> Result<ThresholdTable> {
    if n_max < 3 {
        return Err(Error::InvalidParameter(format!("n_max={n_max} is below 3")));
    }
    let rows: Vec<ThresholdRow> = (3..=n_max).into_par_iter().map(row).collect::<Result<_>>()?;
    let top = IDENTITY_N.max(n_max as u64);
    let identity_failures: Vec<u64> = (3..=top)
        .filter(|&n| formula_for(n).map_or(true, |f| f != threshold_exact(n).value as u128))
        .collect();
    let all_pass = identity_failures.is_empty() && rows.iter().all(|r| r.pass);
    Ok(ThresholdTable {
        version: 1,
        n_max,
        rows,
        identity_checked_up_to: top,
        identity_failures,
        all_pass,
    })
}
