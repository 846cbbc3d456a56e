//! Fractional matching number by a dense tableau simplex.
//!
//! Maximise Σ x_e subject to Σ_{e ∋ v} x_e ≤ 1 and x ≥ 0. The all-slack basis
//! is feasible, so no phase one is needed.

use crate::hypergraph::KPartiteHypergraph;

const EPS: f64 = 1e-9;
/// Consecutive zero-step pivots after which pricing switches to Bland's rule.
const DEGENERATE_RUN: usize = 64;

/// Optimum of the packing LP; `None` if the iteration cap was hit.
/// `columns[j]` lists the row indices of column j (each in `0..rows`).
pub(crate) fn max_packing(rows: usize, columns: &[&[u32]]) -> Option<f64> {
    let cols = columns.len();
    if rows == 0 || cols == 0 {
        return Some(0.0);
    }
    let width = cols + rows + 1;
    let rhs = width - 1;
    let mut t = vec![0.0f64; (rows + 1) * width];
    for (j, col) in columns.iter().enumerate() {
        for &r in col.iter() {
            t[r as usize * width + j] = 1.0;
        }
    }
    for r in 0..rows {
        t[r * width + cols + r] = 1.0;
        t[r * width + rhs] = 1.0;
    }
    let obj = rows * width;
    for j in 0..cols {
        t[obj + j] = -1.0;
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    let cap = 50 * (rows + cols) + 1000;
    let mut bland = false;
    let mut zero_steps = 0usize;
    for _ in 0..cap {
        let entering = if bland {
            (0..rhs).find(|&j| t[obj + j] < -EPS)
        } else {
            let mut best = None;
            let mut best_val = -EPS;
            for j in 0..rhs {
                if t[obj + j] < best_val {
                    best_val = t[obj + j];
                    best = Some(j);
                }
            }
            best
        };
        let Some(e) = entering else {
            return Some(t[obj + rhs]);
        };
        let mut leave: Option<usize> = None;
        let mut best_ratio = f64::INFINITY;
        for r in 0..rows {
            let a = t[r * width + e];
            if a > EPS {
                let ratio = t[r * width + rhs] / a;
                let better = ratio < best_ratio - EPS
                    || (ratio < best_ratio + EPS && leave.is_some_and(|l| basis[r] < basis[l]));
                if better {
                    best_ratio = ratio;
                    leave = Some(r);
                }
            }
        }
        // bounded: every column has a positive entry in some row
        let l = leave?;
        if best_ratio < EPS {
            zero_steps += 1;
            if zero_steps >= DEGENERATE_RUN {
                bland = true;
            }
        } else {
            zero_steps = 0;
        }
        pivot(&mut t, width, rows, l, e);
        basis[l] = e;
    }
    None
}

fn pivot(t: &mut [f64], width: usize, rows: usize, l: usize, e: usize) {
    let p = t[l * width + e];
    for x in &mut t[l * width..(l + 1) * width] {
        *x /= p;
    }
    let (before, rest) = t.split_at_mut(l * width);
    let (prow, after) = rest.split_at_mut(width);
    let apply = |row: &mut [f64]| {
        let f = row[e];
        if f.abs() > EPS {
            for (x, &y) in row.iter_mut().zip(prow.iter()) {
                *x -= f * y;
            }
            row[e] = 0.0;
        }
    };
    for row in before.chunks_mut(width) {
        apply(row);
    }
    for row in after.chunks_mut(width).take(rows + 1 - l - 1) {
        apply(row);
    }
}

/// Fractional matching number ν*(H) (an upper bound on ν(H)).
pub fn fractional_matching_number(h: &KPartiteHypergraph) -> Option<f64> {
    let mut offset = Vec::with_capacity(h.k());
    let mut total = 0usize;
    for &n in h.class_sizes() {
        offset.push(total);
        total += n;
    }
    let cols: Vec<Vec<u32>> = h
        .edges()
        .iter()
        .map(|e| e.iter().enumerate().map(|(c, &i)| (offset[c] + i) as u32).collect())
        .collect();
    let refs: Vec<&[u32]> = cols.iter().map(Vec::as_slice).collect();
    max_packing(total, &refs)
}
