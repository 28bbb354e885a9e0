//! Polynomial projectors of sampling type and their Lebesgue functions.
//!
//! A projector is stored through the thin QR factorization
//! `diag(√W) V(Ξ) = Q R` of the weighted Vandermonde at its nodes. The
//! generator functions are the rows of `v(x)ᵀ R⁻¹ Qᵀ diag(√W)`, so the
//! Lebesgue function at `x` is the 1-norm of that row. Interpolation is the
//! square case `M = N` with unit weights.

mod estimate;
mod hyper;

pub use estimate::LebesgueEstimate;
pub use hyper::{hyper_disk, hyper_square_chebyshev, radial_gauss_rule};

use rayon::prelude::*;

use crate::basis::BasisDescriptor;
use crate::error::{Error, Result};
use crate::linalg::{axpy, dot, qr, solve_triangular, solve_triangular_transposed, Matrix, Triangle};
use crate::mesh::{general_mesh_factor, Domain, Mesh};
use crate::points::PointSet;

/// Evaluation points are processed in blocks of at most this many rows.
pub const BLOCK_ROWS: usize = 4096;

/// Nodes may sit this far outside the domain, relative to its scale.
const NODE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectorKind {
    Interpolation,
    WeightedLs,
}

impl ProjectorKind {
    pub fn label(self) -> &'static str {
        match self {
            ProjectorKind::Interpolation => "interp",
            ProjectorKind::WeightedLs => "ls",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Projector {
    nodes: PointSet,
    weights: Vec<f64>,
    basis: BasisDescriptor,
    domain: Domain,
    kind: ProjectorKind,
    q: Matrix,
    r: Matrix,
    /// `R⁻¹ Qᵀ diag(√W)`, `N × M`.
    generators: Matrix,
    label: String,
}

impl Projector {
    /// Lagrange interpolation at exactly `N = dim P_n` nodes.
    pub fn interpolation(nodes: &PointSet, n: usize, domain: &Domain) -> Result<Self> {
        let basis = BasisDescriptor::for_domain(domain, n)?;
        if nodes.len() != basis.len() {
            return Err(Error::invalid(format!(
                "interpolation at degree {n} in dimension {} needs {} nodes, got {}",
                domain.dim(),
                basis.len(),
                nodes.len()
            )));
        }
        let weights = vec![1.0; nodes.len()];
        Self::build(nodes, weights, basis, domain, ProjectorKind::Interpolation)
    }

    /// Discrete least squares for the inner product `Σ w_i f(ξ_i) g(ξ_i)`.
    pub fn weighted_ls(nodes: &PointSet, weights: &[f64], n: usize, domain: &Domain) -> Result<Self> {
        let basis = BasisDescriptor::for_domain(domain, n)?;
        if weights.len() != nodes.len() {
            return Err(Error::invalid(format!(
                "{} weights for {} nodes",
                weights.len(),
                nodes.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| !(*w > 0.0) || !w.is_finite()) {
            return Err(Error::invalid(format!("weight {i} is {}, must be positive", weights[i])));
        }
        if nodes.len() < basis.len() {
            return Err(Error::NotDetermining {
                rank: nodes.len(),
                required: basis.len(),
            });
        }
        Self::build(nodes, weights.to_vec(), basis, domain, ProjectorKind::WeightedLs)
    }

    fn build(
        nodes: &PointSet,
        weights: Vec<f64>,
        basis: BasisDescriptor,
        domain: &Domain,
        kind: ProjectorKind,
    ) -> Result<Self> {
        domain.validate()?;
        if nodes.dim() != domain.dim() {
            return Err(Error::invalid(format!(
                "nodes of dimension {} on a domain of dimension {}",
                nodes.dim(),
                domain.dim()
            )));
        }
        let slack = NODE_TOL * domain.scale();
        if let Some(i) = (0..nodes.len()).find(|&i| !domain.contains(nodes.point(i), slack)) {
            return Err(Error::invalid(format!(
                "node {i} at {:?} lies outside the domain",
                nodes.point(i)
            )));
        }
        let required = basis.len();
        let sqrt_w: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();
        let mut v = crate::basis::vandermonde(nodes, &basis)?;
        v.scale_rows(&sqrt_w);
        let f = qr(&v, false);
        if let Some(pivot) = f.deficient_at {
            return Err(match kind {
                ProjectorKind::Interpolation => Error::Unisolvence {
                    pivot,
                    rank: f.rank,
                    required,
                },
                ProjectorKind::WeightedLs => Error::NotDetermining {
                    rank: f.rank,
                    required,
                },
            });
        }
        let mut qt = f.q.transpose();
        for (j, s) in sqrt_w.iter().enumerate() {
            for v in qt.col_mut(j) {
                *v *= s;
            }
        }
        let generators = solve_triangular(&f.r, &qt, Triangle::Upper)?;
        Ok(Self {
            nodes: nodes.clone(),
            weights,
            basis,
            domain: domain.clone(),
            kind,
            q: f.q,
            r: f.r,
            generators,
            label: String::new(),
        })
    }

    /// Attaches the point-family name reported in estimates.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn nodes(&self) -> &PointSet {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn degree(&self) -> usize {
        self.basis.degree()
    }

    pub fn basis(&self) -> &BasisDescriptor {
        &self.basis
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn kind(&self) -> ProjectorKind {
        self.kind
    }

    /// Orthonormal factor, `M × N`.
    pub fn factor_q(&self) -> &Matrix {
        &self.q
    }

    /// Upper triangular factor, `N × N`.
    pub fn factor_r(&self) -> &Matrix {
        &self.r
    }

    /// Coefficients of the generator functions in the basis, one column per node.
    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    fn check_eval(&self, eval: &PointSet) -> Result<()> {
        if eval.is_empty() {
            return Err(Error::invalid("empty evaluation set"));
        }
        if eval.dim() != self.basis.dim() {
            return Err(Error::invalid(format!(
                "evaluation points of dimension {} for a projector in dimension {}",
                eval.dim(),
                self.basis.dim()
            )));
        }
        Ok(())
    }

    /// `λ(x) = Σ_j |φ_j(x)|` at every evaluation point.
    pub fn lebesgue_function(&self, eval: &PointSet) -> Result<Vec<f64>> {
        self.check_eval(eval)?;
        let d = eval.dim();
        let blocks: Vec<Vec<f64>> = eval
            .coords()
            .par_chunks(BLOCK_ROWS * d)
            .map(|block| self.lebesgue_block(block))
            .collect::<Result<_>>()?;
        Ok(blocks.concat())
    }

    /// `max_x λ(x)` over the evaluation points.
    pub fn lebesgue_max(&self, eval: &PointSet) -> Result<f64> {
        self.check_eval(eval)?;
        let d = eval.dim();
        eval.coords()
            .par_chunks(BLOCK_ROWS * d)
            .map(|block| Ok(self.lebesgue_block(block)?.into_iter().fold(0.0, f64::max)))
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
    }

    fn lebesgue_block(&self, coords: &[f64]) -> Result<Vec<f64>> {
        let vb = self.basis.vandermonde_coords(coords)?;
        let rows = vb.nrows();
        let mut sums = vec![0.0; rows];
        let mut phi = vec![0.0; rows];
        for j in 0..self.generators.ncols() {
            phi.fill(0.0);
            for (k, &c) in self.generators.col(j).iter().enumerate() {
                if c != 0.0 {
                    axpy(c, vb.col(k), &mut phi);
                }
            }
            for (s, p) in sums.iter_mut().zip(&phi) {
                *s += p.abs();
            }
        }
        Ok(sums)
    }

    /// Certified two-sided estimate from a mesh built for degree `≥ n`.
    pub fn estimate(&self, mesh: &Mesh) -> Result<LebesgueEstimate> {
        if mesh.degree() < self.degree() {
            return Err(Error::invalid(format!(
                "mesh for degree {} cannot certify a degree-{} projector",
                mesh.degree(),
                self.degree()
            )));
        }
        if mesh.domain().dim() != self.domain.dim() {
            return Err(Error::invalid("mesh and projector live in different dimensions"));
        }
        let lower = self.lebesgue_max(mesh.points())?;
        Ok(LebesgueEstimate::new(self, lower, mesh.factor(), mesh.m(), mesh.len()))
    }

    /// Estimate from a user mesh assumed admissible for degree `m·n` with
    /// constant `c`, giving factor `c^(1/m)` at degree `n`.
    pub fn estimate_on_general_mesh(&self, mesh: &PointSet, c: f64, m: usize) -> Result<LebesgueEstimate> {
        let factor = general_mesh_factor(c, m)?;
        let lower = self.lebesgue_max(mesh)?;
        Ok(LebesgueEstimate::new(self, lower, factor, m as f64, mesh.len()))
    }

    /// Basis coefficients of the projection of the sampled function.
    pub fn coefficients(&self, samples: &[f64]) -> Result<Vec<f64>> {
        if samples.len() != self.nodes.len() {
            return Err(Error::invalid(format!(
                "{} samples for {} nodes",
                samples.len(),
                self.nodes.len()
            )));
        }
        Ok(self.generators.mul_vec(samples))
    }

    /// `L f(x) = Σ f(ξ_i) φ_i(x)`.
    pub fn apply(&self, samples: &[f64], eval: &PointSet) -> Result<Vec<f64>> {
        let c = self.coefficients(samples)?;
        self.check_eval(eval)?;
        let d = eval.dim();
        let blocks: Vec<Vec<f64>> = eval
            .coords()
            .par_chunks(BLOCK_ROWS * d)
            .map(|block| Ok(self.basis.vandermonde_coords(block)?.mul_vec(&c)))
            .collect::<Result<_>>()?;
        Ok(blocks.concat())
    }

    /// Reproducing kernel `K(x, y) = v(x)ᵀ R⁻¹ R⁻ᵀ v(y)` of the discrete inner product.
    pub fn kernel(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let a = self.orthonormal_values(x)?;
        let b = self.orthonormal_values(y)?;
        Ok(dot(&a, &b))
    }

    /// Values at `x` of the basis orthonormal for the discrete inner product.
    pub fn orthonormal_values(&self, x: &[f64]) -> Result<Vec<f64>> {
        let v = Matrix::from_column(&self.basis.evaluate(x)?);
        Ok(solve_triangular_transposed(&self.r, &v, Triangle::Upper)?.into_vec())
    }
}
