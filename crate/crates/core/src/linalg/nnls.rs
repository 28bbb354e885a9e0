//! Lawson-Hanson active-set solver for `min ‖A x - b‖₂` subject to `x ≥ 0`.

use super::matrix::{norm2, Matrix};
use super::qr::least_squares;
use crate::error::{Error, Result};

/// Candidate columns whose passive-set least-squares problem loses rank at this
/// relative level are skipped for the current outer step.
const PASSIVE_RANK_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct NnlsResult {
    pub x: Vec<f64>,
    pub residual_norm: f64,
    /// Indices with `x > 0`, ascending.
    pub support: Vec<usize>,
    /// Passive-set least-squares solves performed.
    pub iterations: usize,
    /// Residual norm at the start of each outer iteration.
    pub history: Vec<f64>,
}

fn residual(a: &Matrix, x: &[f64], b: &[f64]) -> Vec<f64> {
    let ax = a.mul_vec(x);
    b.iter().zip(ax).map(|(b, y)| b - y).collect()
}

/// Solves the NNLS problem; `tol` bounds the dual (gradient) components on the
/// zero set at termination. Ties in the entering-column choice go to the
/// lowest index.
///
/// The iteration cap is `10 · ncols` least-squares solves; exceeding it yields
/// [`Error::NonConvergence`] carrying the last feasible iterate.
pub fn nnls(a: &Matrix, b: &[f64], tol: f64) -> Result<NnlsResult> {
    let (m, k) = a.shape();
    if b.len() != m {
        return Err(Error::invalid(format!("rhs has length {}, expected {m}", b.len())));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("NNLS tolerance must be positive"));
    }
    let max_iter = 10 * k.max(1);
    let mut x = vec![0.0; k];
    let mut in_passive = vec![false; k];
    let mut passive: Vec<usize> = Vec::new();
    let mut iterations = 0;
    let mut history = Vec::new();

    loop {
        let r = residual(a, &x, b);
        history.push(norm2(&r));
        let w = a.tr_mul_vec(&r);

        // pick the entering column; candidates that would not enter with a
        // positive value are skipped for this step only
        let mut rejected = vec![false; k];
        let mut z = loop {
            let mut best: Option<usize> = None;
            for j in 0..k {
                if in_passive[j] || rejected[j] || !(w[j] > tol) {
                    continue;
                }
                if best.map_or(true, |b| w[j] > w[b]) {
                    best = Some(j);
                }
            }
            let Some(t) = best else {
                let support: Vec<usize> = (0..k).filter(|&j| x[j] > 0.0).collect();
                return Ok(NnlsResult {
                    residual_norm: norm2(&r),
                    x,
                    support,
                    iterations,
                    history,
                });
            };
            passive.push(t);
            iterations += 1;
            match least_squares(&a.select_cols(&passive), b, PASSIVE_RANK_TOL) {
                Some(z) if *z.last().unwrap() > 0.0 => {
                    in_passive[t] = true;
                    break z;
                }
                _ => {
                    passive.pop();
                    rejected[t] = true;
                }
            }
        };

        // inner loop: step back towards feasibility until every passive entry is positive
        loop {
            if z.iter().all(|&v| v > 0.0) {
                for (&j, &v) in passive.iter().zip(&z) {
                    x[j] = v;
                }
                break;
            }
            if iterations >= max_iter {
                return Err(Error::NonConvergence {
                    iterations,
                    residual: norm2(&residual(a, &x, b)),
                    best: x,
                });
            }
            let mut alpha = f64::INFINITY;
            let mut leaving = 0;
            for (pos, (&j, &zj)) in passive.iter().zip(&z).enumerate() {
                if zj <= 0.0 {
                    let ratio = x[j] / (x[j] - zj);
                    if ratio < alpha {
                        alpha = ratio;
                        leaving = pos;
                    }
                }
            }
            for (&j, &zj) in passive.iter().zip(&z) {
                x[j] += alpha * (zj - x[j]);
            }
            let leaving = passive[leaving];
            x[leaving] = 0.0;
            passive.retain(|&j| {
                let keep = x[j] > 0.0;
                if !keep {
                    x[j] = 0.0;
                    in_passive[j] = false;
                }
                keep
            });
            iterations += 1;
            z = match least_squares(&a.select_cols(&passive), b, PASSIVE_RANK_TOL) {
                Some(z) => z,
                None => {
                    return Err(Error::NumericalFailure(
                        "NNLS passive set became rank deficient".into(),
                    ))
                }
            };
        }
        if iterations >= max_iter {
            return Err(Error::NonConvergence {
                iterations,
                residual: norm2(&residual(a, &x, b)),
                best: x,
            });
        }
    }
}
