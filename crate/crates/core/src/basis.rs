//! Total-degree product Chebyshev basis on a box and Vandermonde assembly.
//!
//! Basis functions are `p_j(x) = ∏_s T_{k_s}(a_s x_s + b_s)` where the affine
//! map sends the box side `[lo_s, hi_s]` onto `[-1, 1]` and `T_k` is the
//! first-kind Chebyshev polynomial `cos(k arccos t)`, evaluated by its
//! three-term recurrence.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::mesh::Domain;
use crate::points::PointSet;

/// Affine images outside `[-1, 1]` by at most this much are clamped.
pub const BOX_TOL: f64 = 1e-12;

/// `C(n + d, d)`, the dimension of the total-degree polynomial space.
pub fn poly_dim(d: usize, n: usize) -> usize {
    let mut c: u128 = 1;
    for i in 1..=d as u128 {
        c = c * (n as u128 + i) / i;
    }
    c as usize
}

/// Exponent tuples of total degree `≤ n`, graded: ordered by total degree and
/// then lexicographically with the leading exponent descending, so that the
/// first `C(k + d, d)` entries span the degree-`k` space for every `k ≤ n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndexSet {
    dim: usize,
    degree: usize,
    exps: Vec<usize>,
}

impl MultiIndexSet {
    pub fn new(dim: usize, degree: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        let mut exps = Vec::with_capacity(poly_dim(dim, degree) * dim);
        let mut scratch = vec![0; dim];
        for total in 0..=degree {
            push_with_total(&mut exps, &mut scratch, 0, total);
        }
        Self { dim, degree, exps }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn get(&self, j: usize) -> &[usize] {
        &self.exps[j * self.dim..(j + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, usize> {
        self.exps.chunks_exact(self.dim)
    }
}

fn push_with_total(out: &mut Vec<usize>, scratch: &mut [usize], pos: usize, remaining: usize) {
    if pos + 1 == scratch.len() {
        scratch[pos] = remaining;
        out.extend_from_slice(scratch);
        return;
    }
    for first in (0..=remaining).rev() {
        scratch[pos] = first;
        push_with_total(out, scratch, pos + 1, remaining - first);
    }
}

/// Shorthand for [`MultiIndexSet::new`].
pub fn multi_index_set(dim: usize, degree: usize) -> MultiIndexSet {
    MultiIndexSet::new(dim, degree)
}

/// Smallest axis-aligned box containing the domain, as `(lo, hi)`.
pub fn minimal_box(domain: &Domain) -> (Vec<f64>, Vec<f64>) {
    domain.bounding_box()
}

/// Product Chebyshev basis of total degree `n` scaled to a box.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisDescriptor {
    lo: Vec<f64>,
    hi: Vec<f64>,
    indices: MultiIndexSet,
}

impl BasisDescriptor {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, degree: usize) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::invalid("box bounds must be nonempty and of equal length"));
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a < b)) {
            return Err(Error::invalid(format!("degenerate box {lo:?} x {hi:?}")));
        }
        let indices = MultiIndexSet::new(lo.len(), degree);
        Ok(Self { lo, hi, indices })
    }

    /// Basis on the minimal enclosing box of `domain`.
    pub fn for_domain(domain: &Domain, degree: usize) -> Result<Self> {
        let (lo, hi) = minimal_box(domain);
        Self::new(lo, hi, degree)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn degree(&self) -> usize {
        self.indices.degree()
    }

    /// Number of basis functions.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn indices(&self) -> &MultiIndexSet {
        &self.indices
    }

    /// Same box, different degree.
    pub fn with_degree(&self, degree: usize) -> Self {
        Self {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            indices: MultiIndexSet::new(self.dim(), degree),
        }
    }

    /// Chebyshev tables `T_0..T_n` at the scaled coordinates of one point,
    /// laid out coordinate-major in `table` (length `d·(n+1)`).
    fn fill_table(&self, x: &[f64], table: &mut [f64]) -> Result<()> {
        let n1 = self.degree() + 1;
        for (s, &xs) in x.iter().enumerate() {
            let (a, b) = (self.lo[s], self.hi[s]);
            let mut t = (2.0 * xs - (a + b)) / (b - a);
            if !(t.abs() <= 1.0) {
                if t.abs() <= 1.0 + BOX_TOL {
                    t = t.clamp(-1.0, 1.0);
                } else {
                    return Err(Error::invalid(format!(
                        "point {x:?} lies outside the basis box [{a}, {b}] in coordinate {s}"
                    )));
                }
            }
            let row = &mut table[s * n1..(s + 1) * n1];
            row[0] = 1.0;
            if n1 > 1 {
                row[1] = t;
            }
            for k in 2..n1 {
                row[k] = 2.0 * t * row[k - 1] - row[k - 2];
            }
        }
        Ok(())
    }

    /// Values of all basis functions at `x`.
    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::invalid("point dimension does not match the basis"));
        }
        let n1 = self.degree() + 1;
        let mut table = vec![0.0; self.dim() * n1];
        self.fill_table(x, &mut table)?;
        Ok(self
            .indices
            .iter()
            .map(|e| e.iter().enumerate().map(|(s, &k)| table[s * n1 + k]).product())
            .collect())
    }

    /// Vandermonde block for points given as flat coordinates.
    pub fn vandermonde_coords(&self, coords: &[f64]) -> Result<Matrix> {
        let d = self.dim();
        if coords.len() % d != 0 {
            return Err(Error::invalid("coordinate count is not a multiple of the dimension"));
        }
        let rows = coords.len() / d;
        let n1 = self.degree() + 1;
        let ncols = self.len();
        let mut data = vec![0.0; rows * ncols];
        let mut table = vec![0.0; d * n1];
        for (i, x) in coords.chunks_exact(d).enumerate() {
            self.fill_table(x, &mut table)?;
            for (j, e) in self.indices.iter().enumerate() {
                let mut v = table[e[0]];
                for s in 1..d {
                    v *= table[s * n1 + e[s]];
                }
                data[i + j * rows] = v;
            }
        }
        Ok(Matrix::from_col_major(rows, ncols, data))
    }
}

/// `V[i][j] = p_j(z_i)`.
pub fn vandermonde(points: &PointSet, basis: &BasisDescriptor) -> Result<Matrix> {
    if points.is_empty() {
        return Err(Error::invalid("Vandermonde of an empty point set"));
    }
    if points.dim() != basis.dim() {
        return Err(Error::invalid(format!(
            "points of dimension {} with a basis of dimension {}",
            points.dim(),
            basis.dim()
        )));
    }
    basis.vandermonde_coords(points.coords())
}
