//! Admissible polynomial meshes with certified norming factors.
//!
//! A mesh `X` for degree `n` on a compact set `K` satisfies
//! `‖p‖_K ≤ c ‖p‖_X` for every polynomial `p` of total degree `≤ n`. The meshes
//! here are images of product Chebyshev grids: the identity (boxes), the Duffy
//! collapse (simplices) and generalized spherical coordinates with
//! arcsine-distorted angles (balls).

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{least_squares, lu_row_pivot, norm2, Matrix};
use crate::points::PointSet;
use crate::points1d::NodeKind;

/// Slack allowed for arguments that should lie in a closed interval.
const RANGE_TOL: f64 = 1e-14;

/// Relative volume below which a simplex counts as degenerate.
const DEGENERATE_TOL: f64 = 1e-12;

/// Lobatto meshes are deduplicated at this fraction of the domain scale.
pub const DEDUPE_REL_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Domain {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// `d + 1` vertices in `R^d`.
    Simplex { vertices: Vec<Vec<f64>> },
    Ball { center: Vec<f64>, radius: f64 },
    /// Finite union of domains of equal dimension.
    Union { parts: Vec<Domain> },
}

impl Domain {
    /// `[-1, 1]^d`.
    pub fn cube(d: usize) -> Self {
        Domain::Box {
            lo: vec![-1.0; d],
            hi: vec![1.0; d],
        }
    }

    /// The simplex with vertices `0, e_1, …, e_d`.
    pub fn unit_simplex(d: usize) -> Self {
        let mut vertices = vec![vec![0.0; d]];
        for i in 0..d {
            let mut v = vec![0.0; d];
            v[i] = 1.0;
            vertices.push(v);
        }
        Domain::Simplex { vertices }
    }

    pub fn unit_ball(d: usize) -> Self {
        Domain::Ball {
            center: vec![0.0; d],
            radius: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Box { lo, .. } => lo.len(),
            Domain::Simplex { vertices } => vertices.first().map_or(0, |v| v.len()),
            Domain::Ball { center, .. } => center.len(),
            Domain::Union { parts } => parts.first().map_or(0, Domain::dim),
        }
    }

    /// Short label used in exports.
    pub fn name(&self) -> &'static str {
        match self {
            Domain::Box { lo, hi } => {
                if lo.iter().all(|&a| a == -1.0) && hi.iter().all(|&b| b == 1.0) {
                    "cube"
                } else {
                    "box"
                }
            }
            Domain::Simplex { .. } => "simplex",
            Domain::Ball { .. } => "ball",
            Domain::Union { .. } => "union",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        if d == 0 {
            return Err(Error::invalid("domain dimension must be positive"));
        }
        match self {
            Domain::Box { lo, hi } => {
                if hi.len() != d {
                    return Err(Error::invalid("box bounds differ in length"));
                }
                if lo.iter().zip(hi).any(|(a, b)| !(a < b) || !a.is_finite() || !b.is_finite()) {
                    return Err(Error::invalid(format!("box needs lo < hi, got {lo:?} and {hi:?}")));
                }
            }
            Domain::Simplex { vertices } => {
                if vertices.len() != d + 1 || vertices.iter().any(|v| v.len() != d) {
                    return Err(Error::invalid(format!("a {d}-simplex needs {} vertices in R^{d}", d + 1)));
                }
                let e = edge_matrix(vertices);
                let lu = lu_row_pivot(&e);
                let det: f64 = (0..d).map(|i| lu.u[(i, i)]).product::<f64>().abs();
                let scale: f64 = (0..d).map(|j| norm2(e.col(j))).product();
                if !(det > DEGENERATE_TOL * scale) {
                    return Err(Error::invalid("simplex vertices are affinely dependent"));
                }
            }
            Domain::Ball { radius, .. } => {
                if !(*radius > 0.0) || !radius.is_finite() {
                    return Err(Error::invalid(format!("ball radius must be positive, got {radius}")));
                }
            }
            Domain::Union { parts } => {
                if parts.is_empty() {
                    return Err(Error::invalid("empty union"));
                }
                for p in parts {
                    if p.dim() != d {
                        return Err(Error::invalid("union parts differ in dimension"));
                    }
                    p.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Componentwise bounds of the smallest enclosing box.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Domain::Box { lo, hi } => (lo.clone(), hi.clone()),
            Domain::Ball { center, radius } => (
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            ),
            Domain::Simplex { vertices } => {
                let d = self.dim();
                let mut lo = vec![f64::INFINITY; d];
                let mut hi = vec![f64::NEG_INFINITY; d];
                for v in vertices {
                    for s in 0..d {
                        lo[s] = lo[s].min(v[s]);
                        hi[s] = hi[s].max(v[s]);
                    }
                }
                (lo, hi)
            }
            Domain::Union { parts } => {
                let d = self.dim();
                let mut lo = vec![f64::INFINITY; d];
                let mut hi = vec![f64::NEG_INFINITY; d];
                for p in parts {
                    let (a, b) = p.bounding_box();
                    for s in 0..d {
                        lo[s] = lo[s].min(a[s]);
                        hi[s] = hi[s].max(b[s]);
                    }
                }
                (lo, hi)
            }
        }
    }

    /// Largest side of the bounding box.
    pub fn scale(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.iter().zip(&hi).map(|(a, b)| b - a).fold(0.0, f64::max)
    }

    /// Membership up to an absolute slack `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            Domain::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(v, (a, b))| *v >= a - tol && *v <= b + tol),
            Domain::Ball { center, radius } => {
                let diff: Vec<f64> = x.iter().zip(center).map(|(a, b)| a - b).collect();
                norm2(&diff) <= radius + tol
            }
            Domain::Simplex { vertices } => {
                let e = edge_matrix(vertices);
                let rhs: Vec<f64> = x.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect();
                let Some(lam) = least_squares(&e, &rhs, 1e-14) else {
                    return false;
                };
                let rel = tol / self.scale();
                let sum: f64 = lam.iter().sum();
                lam.iter().all(|&l| l >= -rel) && sum <= 1.0 + rel
            }
            Domain::Union { parts } => parts.iter().any(|p| p.contains(x, tol)),
        }
    }
}

/// Columns `v_i - v_0`, `i = 1..=d`.
fn edge_matrix(vertices: &[Vec<f64>]) -> Matrix {
    let d = vertices[0].len();
    Matrix::from_fn(d, d, |i, j| vertices[j + 1][i] - vertices[0][i])
}

/// Per-factor and total norming constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshConstant {
    /// `κ = 1 / cos(nπ / (2ν))`.
    pub per_factor: f64,
    /// `κ^(number of factors)`.
    pub total: f64,
}

/// `1 / cos(π / (2m))`.
pub fn chebyshev_constant(m: f64) -> f64 {
    1.0 / (PI / (2.0 * m)).cos()
}

/// Algebraic nodes per factor, `ν = ⌈mn⌉`. Products within `1e-9` of an
/// integer are taken as that integer so that e.g. `m = 2.2, n = 5` gives 11.
pub fn nodes_per_factor(n: usize, m: f64) -> usize {
    let p = m * n as f64;
    let r = p.round();
    if (p - r).abs() <= 1e-9 * p.max(1.0) {
        r as usize
    } else {
        p.ceil() as usize
    }
}

fn check_m(m: f64) -> Result<()> {
    if !(m > 1.0) || !m.is_finite() {
        return Err(Error::invalid(format!("oversampling m must exceed 1, got {m}")));
    }
    Ok(())
}

/// Norming constant of a product mesh with `factors_algebraic` Chebyshev
/// factors of `ν` nodes and `factors_trig` subperiodic angular factors of `2ν`
/// nodes, all for degree `n`.
pub fn mesh_factor(n: usize, m: f64, factors_algebraic: usize, factors_trig: usize) -> Result<MeshConstant> {
    check_m(m)?;
    if n == 0 {
        return Err(Error::invalid("mesh degree must be at least 1"));
    }
    let nu = nodes_per_factor(n, m);
    let per_factor = if (m * n as f64 - nu as f64).abs() <= 1e-9 * nu as f64 {
        chebyshev_constant(m)
    } else {
        1.0 / (n as f64 * PI / (2.0 * nu as f64)).cos()
    };
    let total = per_factor.powi((factors_algebraic + factors_trig) as i32);
    Ok(MeshConstant { per_factor, total })
}

/// `c^(1/m)`: the constant of a degree-`mn` mesh viewed as a degree-`n` mesh.
pub fn general_mesh_factor(c: f64, m: usize) -> Result<f64> {
    if !(c >= 1.0) {
        return Err(Error::invalid(format!("mesh constant must be >= 1, got {c}")));
    }
    if m == 0 {
        return Err(Error::invalid("power m must be at least 1"));
    }
    Ok(c.powf(1.0 / m as f64))
}

/// A point set together with its certified norming factor.
#[derive(Debug, Clone)]
pub struct Mesh {
    points: PointSet,
    factor: f64,
    degree: usize,
    m: f64,
    kind: NodeKind,
    domain: Domain,
}

impl Mesh {
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn into_points(self) -> PointSet {
        self.points
    }

    pub fn factor(&self) -> f64 {
        self.factor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Parameters written next to an exported mesh.
    pub fn sidecar(&self) -> MeshSidecar {
        MeshSidecar {
            domain: self.domain.name().to_string(),
            dim: self.domain.dim(),
            degree: self.degree,
            m: self.m,
            kind: self.kind,
            factor: self.factor,
            cardinality: self.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshSidecar {
    pub domain: String,
    pub dim: usize,
    pub degree: usize,
    pub m: f64,
    pub kind: NodeKind,
    pub factor: f64,
    pub cardinality: usize,
}

/// Mesh of the right type for `domain`; a 1-ball is treated as an interval.
pub fn build_mesh(domain: &Domain, n: usize, m: f64, kind: NodeKind) -> Result<Mesh> {
    match domain {
        Domain::Box { .. } => cube_mesh(domain, n, m, kind),
        Domain::Simplex { .. } => simplex_mesh(domain, n, m, kind),
        Domain::Ball { center, radius } if center.len() == 1 => {
            let interval = Domain::Box {
                lo: vec![center[0] - radius],
                hi: vec![center[0] + radius],
            };
            let mut mesh = cube_mesh(&interval, n, m, kind)?;
            mesh.domain = domain.clone();
            Ok(mesh)
        }
        Domain::Ball { .. } => ball_mesh(domain, n, m, kind),
        Domain::Union { .. } => union_mesh(domain, n, m, kind),
    }
}

/// Lexicographic product of per-coordinate node lists, last coordinate fastest.
fn product_grid(factors: &[Vec<f64>]) -> Vec<f64> {
    let d = factors.len();
    let total: usize = factors.iter().map(Vec::len).product();
    let mut coords = Vec::with_capacity(total * d);
    let mut idx = vec![0usize; d];
    for _ in 0..total {
        coords.extend(idx.iter().enumerate().map(|(s, &i)| factors[s][i]));
        for s in (0..d).rev() {
            idx[s] += 1;
            if idx[s] < factors[s].len() {
                break;
            }
            idx[s] = 0;
        }
    }
    coords
}

/// Product Chebyshev grid `(𝒞_ν)^d` mapped onto a box.
pub fn cube_mesh(domain: &Domain, n: usize, m: f64, kind: NodeKind) -> Result<Mesh> {
    domain.validate()?;
    let Domain::Box { lo, hi } = domain else {
        return Err(Error::invalid("cube_mesh needs a box domain"));
    };
    let d = lo.len();
    let constant = mesh_factor(n, m, d, 0)?;
    let base = kind.nodes(nodes_per_factor(n, m))?;
    let factors: Vec<Vec<f64>> = (0..d)
        .map(|s| {
            let (a, b) = (lo[s], hi[s]);
            base.iter().map(|&u| affine(u, a, b)).collect()
        })
        .collect();
    let points = PointSet::new(d, product_grid(&factors))?;
    Ok(Mesh {
        points,
        factor: constant.total,
        degree: n,
        m,
        kind,
        domain: domain.clone(),
    })
}

/// `[-1, 1] → [a, b]`, exact at both endpoints.
fn affine(u: f64, a: f64, b: f64) -> f64 {
    if u == -1.0 {
        a
    } else if u == 1.0 {
        b
    } else {
        (a + b) / 2.0 + (b - a) / 2.0 * u
    }
}

/// Duffy collapse `x_i = ∏_{j ≤ i} (t_j / 2 + 1/2)` of `[-1, 1]^d` onto
/// `T_d = {0 ≤ x_d ≤ … ≤ x_1 ≤ 1}`.
pub fn duffy(t: &[f64]) -> Result<Vec<f64>> {
    if t.iter().any(|v| !(v.abs() <= 1.0 + RANGE_TOL)) {
        return Err(Error::invalid(format!("Duffy argument {t:?} leaves [-1, 1]^d")));
    }
    let mut out = vec![0.0; t.len()];
    duffy_into(t, &mut out);
    Ok(out)
}

fn duffy_into(t: &[f64], out: &mut [f64]) {
    let mut acc = 1.0;
    for (o, &v) in out.iter_mut().zip(t) {
        acc *= (v.clamp(-1.0, 1.0) + 1.0) / 2.0;
        *o = acc;
    }
}

/// Image of a point of `T_d` under the affine map sending `0, e_1, e_1 + e_2, …`
/// to the given vertices, via barycentric weights `1 - x_1, x_1 - x_2, …, x_d`.
fn simplex_affine(x: &[f64], vertices: &[Vec<f64>], out: &mut [f64]) {
    let d = x.len();
    out.fill(0.0);
    for i in 0..=d {
        let lam = match i {
            0 => 1.0 - x[0],
            i if i == d => x[d - 1],
            i => x[i - 1] - x[i],
        };
        if lam != 0.0 {
            for (o, v) in out.iter_mut().zip(&vertices[i]) {
                *o += lam * v;
            }
        }
    }
}

/// Duffy image of the product Chebyshev grid, mapped onto the given simplex.
pub fn simplex_mesh(domain: &Domain, n: usize, m: f64, kind: NodeKind) -> Result<Mesh> {
    domain.validate()?;
    let Domain::Simplex { vertices } = domain else {
        return Err(Error::invalid("simplex_mesh needs a simplex domain"));
    };
    let d = domain.dim();
    let constant = mesh_factor(n, m, d, 0)?;
    let base = kind.nodes(nodes_per_factor(n, m))?;
    let grid = PointSet::new(d, product_grid(&vec![base; d]))?;
    let mut tri = vec![0.0; d];
    let mut points = grid.map_points(d, |t, out| {
        duffy_into(t, &mut tri);
        simplex_affine(&tri, vertices, out);
    });
    if kind == NodeKind::ChebyshevLobatto {
        points = dedupe(&points, DEDUPE_REL_TOL * domain.scale());
    }
    Ok(Mesh {
        points,
        factor: constant.total,
        degree: n,
        m,
        kind,
        domain: domain.clone(),
    })
}

/// `σ_{a,b}(u) = 2 arcsin(α u) + β` with `α = sin((b - a)/4)`, `β = (b + a)/2`,
/// applied to the Chebyshev family of parameter `count`.
pub fn subperiodic_angles(a: f64, b: f64, count: usize, kind: NodeKind) -> Result<Vec<f64>> {
    if !(b > a) {
        return Err(Error::invalid(format!("angular interval needs b > a, got [{a}, {b}]")));
    }
    if b - a > 2.0 * PI * (1.0 + RANGE_TOL) {
        return Err(Error::invalid(format!("angular interval [{a}, {b}] exceeds one period")));
    }
    let alpha = ((b - a) / 4.0).sin();
    let beta = (b + a) / 2.0;
    Ok(kind
        .nodes(count)?
        .into_iter()
        .map(|u| 2.0 * (alpha * u).asin() + beta)
        .collect())
}

/// Generalized spherical coordinates: `x_j = r cos θ_j ∏_{k<j} sin θ_k` for
/// `j < d` and `x_d = r sin θ_{d-1} ∏_{k<d-1} sin θ_k`.
pub fn spherical(r: f64, thetas: &[f64]) -> Result<Vec<f64>> {
    let d = thetas.len() + 1;
    if d < 2 {
        return Err(Error::invalid("spherical coordinates need at least one angle"));
    }
    if !(r >= -RANGE_TOL && r <= 1.0 + RANGE_TOL) {
        return Err(Error::invalid(format!("radius {r} outside [0, 1]")));
    }
    for (k, &t) in thetas.iter().enumerate() {
        let top = if k + 1 == thetas.len() { 2.0 * PI } else { PI };
        if !(t >= -RANGE_TOL && t <= top + RANGE_TOL) {
            return Err(Error::invalid(format!("angle {k} = {t} outside [0, {top}]")));
        }
    }
    let mut out = vec![0.0; d];
    spherical_into(r, thetas, &mut out);
    Ok(out)
}

fn spherical_into(r: f64, thetas: &[f64], out: &mut [f64]) {
    let d = out.len();
    let mut acc = r;
    for j in 0..d - 1 {
        let (s, c) = thetas[j].sin_cos();
        out[j] = acc * c;
        acc *= s;
    }
    out[d - 1] = acc;
}

/// Image of `𝒞_ν × (𝒞_{2ν})^{d-1}` under radial `u/2 + 1/2`, middle angles
/// `σ_{0,π}`, last angle `σ_{0,2π}` and spherical coordinates, scaled to the ball.
pub fn ball_mesh(domain: &Domain, n: usize, m: f64, kind: NodeKind) -> Result<Mesh> {
    domain.validate()?;
    let Domain::Ball { center, radius } = domain else {
        return Err(Error::invalid("ball_mesh needs a ball domain"));
    };
    let d = center.len();
    if d < 2 {
        return Err(Error::invalid("ball_mesh needs d >= 2; use an interval mesh for d = 1"));
    }
    let constant = mesh_factor(n, m, 1, d - 1)?;
    let nu = nodes_per_factor(n, m);
    let mut factors = Vec::with_capacity(d);
    factors.push(kind.nodes(nu)?.into_iter().map(|u| u / 2.0 + 0.5).collect());
    for _ in 0..d - 2 {
        factors.push(subperiodic_angles(0.0, PI, 2 * nu, kind)?);
    }
    factors.push(subperiodic_angles(0.0, 2.0 * PI, 2 * nu, kind)?);
    let grid = PointSet::new(d, product_grid(&factors))?;
    let mut points = grid.map_points(d, |u, out| {
        spherical_into(u[0], &u[1..], out);
        for (o, c) in out.iter_mut().zip(center) {
            *o = c + radius * *o;
        }
    });
    if kind == NodeKind::ChebyshevLobatto {
        points = dedupe(&points, DEDUPE_REL_TOL * domain.scale());
    }
    Ok(Mesh {
        points,
        factor: constant.total,
        degree: n,
        m,
        kind,
        domain: domain.clone(),
    })
}

/// Concatenation of the part meshes; the factor is the largest part factor.
fn union_mesh(domain: &Domain, n: usize, m: f64, kind: NodeKind) -> Result<Mesh> {
    domain.validate()?;
    let Domain::Union { parts } = domain else {
        return Err(Error::invalid("union_mesh needs a union domain"));
    };
    let meshes = parts
        .iter()
        .map(|p| build_mesh(p, n, m, kind))
        .collect::<Result<Vec<_>>>()?;
    let factor = meshes.iter().map(Mesh::factor).fold(1.0, f64::max);
    let mut points = PointSet::concat(&meshes.iter().map(Mesh::points).collect::<Vec<_>>())?;
    if kind == NodeKind::ChebyshevLobatto {
        points = dedupe(&points, DEDUPE_REL_TOL * domain.scale());
    }
    Ok(Mesh {
        points,
        factor,
        degree: n,
        m,
        kind,
        domain: domain.clone(),
    })
}

/// Drops every point within `tol` (max-norm) of an earlier retained point.
pub fn dedupe(points: &PointSet, tol: f64) -> PointSet {
    let d = points.dim();
    let mut keep = Vec::with_capacity(points.len());
    if tol <= 0.0 {
        let mut seen = std::collections::HashSet::new();
        for (i, p) in points.iter().enumerate() {
            // +0.0 normalizes the sign of zero
            let key: Vec<u64> = p.iter().map(|v| (v + 0.0).to_bits()).collect();
            if seen.insert(key) {
                keep.push(i);
            }
        }
        return points.select(&keep);
    }
    let cell = |v: f64| (v / tol).floor() as i64;
    let mut grid: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    let mut key = vec![0i64; d];
    for (i, p) in points.iter().enumerate() {
        let base: Vec<i64> = p.iter().map(|&v| cell(v)).collect();
        let mut clash = false;
        // visit the 3^d neighbouring cells
        'cells: for code in 0..3usize.pow(d as u32) {
            let mut c = code;
            for s in 0..d {
                key[s] = base[s] + (c % 3) as i64 - 1;
                c /= 3;
            }
            if let Some(list) = grid.get(&key) {
                for &j in list {
                    let q = points.point(j);
                    if p.iter().zip(q).all(|(a, b)| (a - b).abs() <= tol) {
                        clash = true;
                        break 'cells;
                    }
                }
            }
        }
        if !clash {
            grid.entry(base).or_default().push(i);
            keep.push(i);
        }
    }
    points.select(&keep)
}
