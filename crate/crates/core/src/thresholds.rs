//! Closed-form degree thresholds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum-degree threshold for a perfect matching, by residue of n mod 3.
/// Any H with δ₁(H) strictly above `value` is covered by the statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdValue {
    pub n: u64,
    pub residue: u8,
    pub value: u64,
}

pub fn threshold_exact(n: u64) -> ThresholdValue {
    let n2 = 5 * n * n;
    let residue = (n % 3) as u8;
    // numerators are non-negative for n >= 1 and divisible by 9 in every residue
    let num = match residue {
        0 => n2 - 6 * n,
        1 => n2 - 4 * n - 1,
        _ => n2 + 5 - 8 * n,
    };
    debug_assert_eq!(num % 9, 0);
    ThresholdValue {
        n,
        residue,
        value: num / 9,
    }
}

/// n^{k-l} - Π_{i=1..k-l} (n - floor((m+i-1)/k)).
pub fn delta_l_formula(k: u32, l: u32, n: u64, m: u64) -> Result<u128> {
    if l == 0 || l > k {
        return Err(Error::LevelOutOfRange {
            l: l as usize,
            max: k as usize,
        });
    }
    if m > k as u64 * n {
        return Err(Error::InvalidParameter(format!("m={m} exceeds kn")));
    }
    let n = n as u128;
    let prod: u128 = (1..=(k - l) as u64)
        .map(|i| n - ((m + i - 1) / k as u64) as u128)
        .product();
    Ok(n.pow(k - l) - prod)
}

/// δ₁ threshold forcing a matching of size 3r + s + 1.
pub fn d3_threshold(n: i64, r: i64, s: u8) -> Result<i64> {
    if r < 0 {
        return Err(Error::InvalidParameter(format!("r={r} is negative")));
    }
    let n2 = n * n;
    match s {
        1 => Ok(n2 - (n - r) * (n - r) + 1),
        2 => Ok(n2 - (n - r) * (n - r - 1)),
        3 => Ok(n2 - (n - r - 1) * (n - r - 1)),
        _ => Err(Error::InvalidParameter(format!("s={s} not in 1..=3"))),
    }
}

pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// δ₁(H*_k(n; m)): δ₁(H_k(n; m-1)) + Σ_{k/2 < i ≤ k-1} C(k-1, i)·n^{k-i-1}.
pub fn delta1_hstar_formula(k: u32, n: u64, m: u64) -> Result<u128> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let base = delta_l_formula(k, 1, n, m - 1)?;
    let extra: u128 = (1..k)
        .filter(|&i| 2 * i > k)
        .map(|i| binomial(k as u64 - 1, i as u64) * (n as u128).pow(k - i - 1))
        .sum();
    Ok(base + extra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values() {
        assert_eq!(threshold_exact(6).value, 16);
        assert_eq!(threshold_exact(7).value, 24);
        assert_eq!(threshold_exact(5).value, 10);
        assert_eq!(threshold_exact(4).value, 7);
        assert_eq!(threshold_exact(8).value, 29);
        assert_eq!(threshold_exact(1).value, 0);
        assert_eq!(threshold_exact(2).value, 1);
    }

    #[test]
    fn integrality_all_residues() {
        for n in 1..=2000u64 {
            let num = match n % 3 {
                0 => 5 * n * n - 6 * n,
                1 => 5 * n * n - 4 * n - 1,
                _ => 5 * n * n - 8 * n + 5,
            };
            assert_eq!(num % 9, 0, "n={n}");
        }
    }

    #[test]
    fn delta_l_values() {
        assert_eq!(delta_l_formula(3, 1, 6, 5).unwrap(), 16);
        assert_eq!(delta_l_formula(3, 1, 9, 0).unwrap(), 0);
        assert_eq!(delta_l_formula(3, 2, 4, 3).unwrap(), 1);
        assert_eq!(delta_l_formula(3, 3, 4, 3).unwrap(), 0);
        assert!(delta_l_formula(3, 0, 4, 3).is_err());
        assert!(delta_l_formula(3, 1, 4, 13).is_err());
    }

    #[test]
    fn d3_values() {
        assert_eq!(d3_threshold(9, 1, 1).unwrap(), 18);
        assert_eq!(d3_threshold(9, 1, 2).unwrap(), 25);
        assert_eq!(d3_threshold(9, 1, 3).unwrap(), 32);
        assert!(d3_threshold(9, 1, 4).is_err());
    }

    #[test]
    fn hstar_values() {
        assert_eq!(delta1_hstar_formula(3, 5, 4).unwrap(), 10);
        assert_eq!(delta1_hstar_formula(3, 8, 7).unwrap(), 29);
        assert_eq!(delta1_hstar_formula(3, 11, 1).unwrap(), 1);
        // k=5: i ∈ {3,4}: C(4,3)·n + C(4,4)
        assert_eq!(
            delta1_hstar_formula(5, 4, 1).unwrap(),
            4 * 4 + 1
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(7, 0), 1);
    }
}
