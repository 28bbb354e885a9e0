use serde::{Deserialize, Serialize};

use super::Projector;

/// Two-sided bound `lower ≤ ‖L_n‖ ≤ upper = factor · lower` with the midpoint
/// estimator, whose relative error is at most `(factor - 1) / 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LebesgueEstimate {
    pub domain: String,
    pub dim: usize,
    pub degree: usize,
    pub m: f64,
    /// Projector kind: `interp` or `ls`.
    pub kind: String,
    pub pointset_label: String,
    pub mesh_card: usize,
    pub lower: f64,
    pub factor: f64,
    pub upper: f64,
    pub midpoint: f64,
    pub rel_err_bound: f64,
}

impl LebesgueEstimate {
    pub(super) fn new(p: &Projector, lower: f64, factor: f64, m: f64, mesh_card: usize) -> Self {
        Self {
            domain: p.domain().name().to_string(),
            dim: p.domain().dim(),
            degree: p.degree(),
            m,
            kind: p.kind().label().to_string(),
            pointset_label: p.label().to_string(),
            mesh_card,
            lower,
            factor,
            upper: factor * lower,
            midpoint: lower * (1.0 + factor) / 2.0,
            rel_err_bound: (factor - 1.0) / 2.0,
        }
    }

    /// Whether `value` lies in `[lower, upper]` up to a relative slack.
    pub fn brackets(&self, value: f64, rel_tol: f64) -> bool {
        value >= self.lower * (1.0 - rel_tol) && value <= self.upper * (1.0 + rel_tol)
    }
}
