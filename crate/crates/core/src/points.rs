//! Flat storage for finite sets of points in `R^d`.

use crate::error::{Error, Result};

/// A list of `d`-dimensional points stored contiguously, optionally carrying one
/// positive weight per point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    weights: Option<Vec<f64>>,
}

impl PointSet {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("point dimension must be positive"));
        }
        if coords.len() % dim != 0 {
            return Err(Error::invalid(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        Ok(Self {
            dim,
            coords,
            weights: None,
        })
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim: dim.max(1),
            coords: Vec::new(),
            weights: None,
        }
    }

    pub fn from_points<P: AsRef<[f64]>>(dim: usize, points: &[P]) -> Result<Self> {
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::invalid(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            coords.extend_from_slice(p);
        }
        Self::new(dim, coords)
    }

    /// Points on the real line.
    pub fn from_scalars(values: &[f64]) -> Self {
        Self {
            dim: 1,
            coords: values.to_vec(),
            weights: None,
        }
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.len() {
            return Err(Error::invalid(format!(
                "{} weights for {} points",
                weights.len(),
                self.len()
            )));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn push(&mut self, p: &[f64]) {
        debug_assert_eq!(p.len(), self.dim);
        self.coords.extend_from_slice(p);
    }

    /// Sub-set at the given indices, in the given order. Weights follow their points.
    pub fn select(&self, indices: &[usize]) -> PointSet {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        let weights = self
            .weights
            .as_ref()
            .map(|w| indices.iter().map(|&i| w[i]).collect());
        PointSet {
            dim: self.dim,
            coords,
            weights,
        }
    }

    /// Concatenation of several sets of equal dimension. Weights are dropped
    /// unless every part carries them.
    pub fn concat(parts: &[&PointSet]) -> Result<PointSet> {
        let dim = parts.first().map_or(1, |p| p.dim);
        if parts.iter().any(|p| p.dim != dim) {
            return Err(Error::invalid("cannot concatenate point sets of different dimension"));
        }
        let coords = parts.iter().flat_map(|p| p.coords.iter().copied()).collect();
        let weights = if parts.iter().all(|p| p.weights.is_some()) {
            Some(
                parts
                    .iter()
                    .flat_map(|p| p.weights.as_ref().unwrap().iter().copied())
                    .collect(),
            )
        } else {
            None
        };
        Ok(PointSet {
            dim,
            coords,
            weights,
        })
    }

    /// Applies `f` to every point, producing points of dimension `out_dim`.
    pub fn map_points(&self, out_dim: usize, mut f: impl FnMut(&[f64], &mut [f64])) -> PointSet {
        let mut coords = vec![0.0; self.len() * out_dim];
        for (p, out) in self.iter().zip(coords.chunks_exact_mut(out_dim)) {
            f(p, out);
        }
        PointSet {
            dim: out_dim,
            coords,
            weights: self.weights.clone(),
        }
    }
}
