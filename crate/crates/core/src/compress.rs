//! Caratheodory–Tchakaloff compression: a nonnegative reweighting of at most
//! `dim P_{2n}` of the input points with the same moments up to degree `2n`.

use serde::{Deserialize, Serialize};

use crate::basis::{vandermonde, BasisDescriptor};
use crate::error::{Error, Result};
use crate::linalg::{nnls, norm2, qr};
use crate::mesh::Domain;
use crate::points::PointSet;

/// Default moment tolerance, relative to the norm of the moment vector.
pub const DEFAULT_TOL: f64 = 1e-10;

/// NNLS dual tolerance relative to the moment norm; much tighter than any
/// useful moment tolerance so the active set keeps growing while it helps.
const DUAL_REL_TOL: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct CompressedMeasure {
    /// Cardinality of the input set.
    pub parent_card: usize,
    /// Indices into the input set, ascending.
    pub indices: Vec<usize>,
    /// Selected points carrying their new weights.
    pub points: PointSet,
    pub weights: Vec<f64>,
    /// Moments are matched up to this total degree (`2n`).
    pub matched_degree: usize,
    /// `‖V_{2n}ᵀ u - V_{2n}ᵀ w‖₂`.
    pub moment_residual: f64,
    /// `‖V_{2n}ᵀ w‖₂`.
    pub moment_norm: f64,
}

impl CompressedMeasure {
    pub fn support_card(&self) -> usize {
        self.indices.len()
    }

    pub fn ratio(&self) -> f64 {
        compression_ratio(self.parent_card, self.support_card())
    }

    pub fn sidecar(&self, degree: usize) -> CompressionSidecar {
        CompressionSidecar {
            parent_card: self.parent_card,
            support_card: self.support_card(),
            ratio: self.ratio(),
            residual: self.moment_residual,
            degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionSidecar {
    pub parent_card: usize,
    pub support_card: usize,
    pub ratio: f64,
    pub residual: f64,
    pub degree: usize,
}

/// `parent_card / support_card`.
pub fn compression_ratio(parent_card: usize, support_card: usize) -> f64 {
    parent_card as f64 / support_card as f64
}

/// Compresses the discrete measure `Σ w_i δ_{x_i}` (unit weights when
/// `weights` is `None`) for projectors of degree `n`.
///
/// Sets with at most `dim P_{2n}` points are returned unchanged. Otherwise the
/// NNLS problem `min_{u ≥ 0} ‖V_{2n}ᵀ u - V_{2n}ᵀ w‖₂` is solved, with `V_{2n}`
/// the product Chebyshev Vandermonde of the domain's bounding box, and a
/// residual above `tol · ‖V_{2n}ᵀ w‖₂` is an error.
///
/// The active-set iteration runs on `Qᵀ` from `V_{2n} = QR`, which spans the
/// same row space with orthonormal columns; on the raw Vandermonde the passive
/// least-squares problems lose rank long before the support is complete. The
/// reported residual is measured back in the Chebyshev basis.
pub fn compress(
    points: &PointSet,
    weights: Option<&[f64]>,
    n: usize,
    domain: &Domain,
    tol: f64,
) -> Result<CompressedMeasure> {
    if points.is_empty() {
        return Err(Error::invalid("cannot compress an empty point set"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("compression tolerance must be positive"));
    }
    let w: Vec<f64> = match weights {
        Some(w) => {
            if w.len() != points.len() {
                return Err(Error::invalid(format!("{} weights for {} points", w.len(), points.len())));
            }
            if let Some(i) = w.iter().position(|v| !(*v >= 0.0)) {
                return Err(Error::invalid(format!("weight {i} is negative")));
            }
            w.to_vec()
        }
        None => vec![1.0; points.len()],
    };
    let basis = BasisDescriptor::for_domain(domain, 2 * n)?;
    let v = vandermonde(points, &basis)?;
    let a = v.transpose();
    let b = a.mul_vec(&w);
    let moment_norm = norm2(&b);

    if points.len() <= basis.len() {
        return Ok(CompressedMeasure {
            parent_card: points.len(),
            indices: (0..points.len()).collect(),
            points: points.clone().with_weights(w.clone())?,
            weights: w,
            matched_degree: 2 * n,
            moment_residual: 0.0,
            moment_norm,
        });
    }

    let qt = qr(&v, false).q.transpose();
    let qb = qt.mul_vec(&w);
    let sol = nnls(&qt, &qb, DUAL_REL_TOL * norm2(&qb).max(f64::MIN_POSITIVE))?;
    let diff: Vec<f64> = a.mul_vec(&sol.x).iter().zip(&b).map(|(x, y)| x - y).collect();
    let residual = norm2(&diff);
    let bound = tol * moment_norm;
    if !(residual <= bound) {
        return Err(Error::QualityFailure { residual, tol: bound });
    }
    let indices = sol.support;
    let new_w: Vec<f64> = indices.iter().map(|&i| sol.x[i]).collect();
    Ok(CompressedMeasure {
        parent_card: points.len(),
        points: points.select(&indices).with_weights(new_w.clone())?,
        indices,
        weights: new_w,
        matched_degree: 2 * n,
        moment_residual: residual,
        moment_norm,
    })
}
