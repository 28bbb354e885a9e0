//! Interpolation and sampling node families: explicit constructions, greedy
//! extraction from meshes, and file ingestion.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::basis::{poly_dim, vandermonde, BasisDescriptor};
use crate::error::{Error, Result};
use crate::linalg::{greedy_column_selection, greedy_row_selection, qr, Matrix};
use crate::mesh::{build_mesh, Domain, Mesh};
use crate::points::PointSet;
use crate::points1d::{chebyshev_zeros, equispaced, gauss_legendre, gauss_legendre_lobatto, NodeKind};

/// Pivots whose magnitude relative to the first falls below this abort an extraction.
const EXTRACTION_RANK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Generated,
    Extracted,
    Loaded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPointSet {
    pub label: String,
    pub points: PointSet,
    pub degree: Option<usize>,
    pub source: Source,
}

impl LabeledPointSet {
    fn generated(label: impl Into<String>, points: PointSet, degree: Option<usize>) -> Self {
        Self {
            label: label.into(),
            points,
            degree,
            source: Source::Generated,
        }
    }
}

/// Full-rank check of the degree-`n` Vandermonde on `[-1, 1]^d` via the
/// pivoted QR diagonal.
fn assert_unisolvent(points: &PointSet, n: usize, what: &str) -> Result<()> {
    let d = points.dim();
    let basis = BasisDescriptor::new(vec![-1.0; d], vec![1.0; d], n)?;
    let f = qr(&vandermonde(points, &basis)?, true);
    if points.len() != basis.len() || !f.is_full_rank() {
        return Err(Error::NumericalFailure(format!(
            "{what} at degree {n}: {} points, Vandermonde rank {} of {}",
            points.len(),
            f.rank,
            basis.len()
        )));
    }
    Ok(())
}

/// `sin((k - 2j)π / (2k)) = cos(jπ/k)`, exactly antisymmetric in `j ↔ k - j`.
fn cos_pi_frac(j: usize, k: usize) -> f64 {
    (PI * (k as f64 - 2.0 * j as f64) / (2.0 * k as f64)).sin()
}

/// Padua points `(cos(jπ/n), cos(kπ/(n+1)))`, `0 ≤ j ≤ n`, `0 ≤ k ≤ n+1`,
/// `j + k` even, on `[-1, 1]^2`.
pub fn padua(n: usize) -> Result<LabeledPointSet> {
    if n == 0 {
        return Err(Error::invalid("Padua points need n >= 1"));
    }
    let mut coords = Vec::with_capacity((n + 1) * (n + 2));
    for j in 0..=n {
        for k in (0..=n + 1).filter(|k| (j + k) % 2 == 0) {
            coords.push(cos_pi_frac(j, n));
            coords.push(cos_pi_frac(k, n + 1));
        }
    }
    let points = PointSet::new(2, coords)?;
    debug_assert_eq!(points.len(), poly_dim(2, n));
    Ok(LabeledPointSet::generated("padua", points, Some(n)))
}

/// Morrow–Patterson points for even `n`: `x_j = cos(jπ/(n+2))`, `j = 1..=n+1`,
/// with `y = cos(2kπ/(n+3))` for odd `j` and `cos((2k-1)π/(n+3))` for even
/// `j`, `k = 1..=(n+2)/2`.
pub fn morrow_patterson(n: usize) -> Result<LabeledPointSet> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::invalid(format!("Morrow-Patterson points need even n >= 2, got {n}")));
    }
    let mut coords = Vec::new();
    for j in 1..=n + 1 {
        let x = cos_pi_frac(j, n + 2);
        for k in 1..=(n + 2) / 2 {
            let num = if j % 2 == 1 { 2 * k } else { 2 * k - 1 };
            coords.push(x);
            coords.push((num as f64 * PI / (n + 3) as f64).cos());
        }
    }
    let points = PointSet::new(2, coords)?;
    assert_unisolvent(&points, n, "Morrow-Patterson points")?;
    Ok(LabeledPointSet::generated("morrow-patterson", points, Some(n)))
}

/// The first `count` primes.
fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = 2u64;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += (i % base) as f64 * f;
        i /= base;
        f *= inv;
    }
    r
}

/// Halton points in `[0, 1]^d` with indices `1..=count` (the origin at index 0
/// is skipped).
pub fn halton(d: usize, count: usize) -> Result<LabeledPointSet> {
    if d == 0 || count == 0 {
        return Err(Error::invalid("Halton points need d >= 1 and count >= 1"));
    }
    let bases = primes(d);
    let mut coords = Vec::with_capacity(d * count);
    for i in 1..=count as u64 {
        coords.extend(bases.iter().map(|&b| radical_inverse(i, b)));
    }
    Ok(LabeledPointSet::generated(
        format!("halton:{count}"),
        PointSet::new(d, coords)?,
        None,
    ))
}

/// The first `count` Halton points, scaled to the bounding box of `domain`,
/// that fall inside the domain.
pub fn halton_in(domain: &Domain, count: usize) -> Result<LabeledPointSet> {
    domain.validate()?;
    let d = domain.dim();
    let (lo, hi) = domain.bounding_box();
    let bases = primes(d);
    let mut coords = Vec::with_capacity(d * count);
    let mut p = vec![0.0; d];
    let mut i = 1u64;
    let mut found = 0;
    while found < count {
        for s in 0..d {
            p[s] = lo[s] + (hi[s] - lo[s]) * radical_inverse(i, bases[s]);
        }
        if domain.contains(&p, 0.0) {
            coords.extend_from_slice(&p);
            found += 1;
        }
        i += 1;
        if i > 1000 * (count as u64 + 1000) {
            return Err(Error::invalid("domain too thin to place Halton points"));
        }
    }
    Ok(LabeledPointSet::generated(
        format!("halton:{count}"),
        PointSet::new(d, coords)?,
        None,
    ))
}

/// Lattice `α / n`, `|α| ≤ n`, of the unit simplex mapped onto the given
/// simplex (vertex 0 is the image of the origin, vertex `i` of `e_i`).
pub fn simplex_grid(n: usize, domain: &Domain) -> Result<LabeledPointSet> {
    domain.validate()?;
    let Domain::Simplex { vertices } = domain else {
        return Err(Error::invalid("simplex grid needs a simplex domain"));
    };
    if n == 0 {
        return Err(Error::invalid("simplex grid needs n >= 1"));
    }
    let d = domain.dim();
    let indices = crate::basis::multi_index_set(d, n);
    let mut coords = Vec::with_capacity(indices.len() * d);
    let mut p = vec![0.0; d];
    for alpha in indices.iter() {
        let lam: Vec<f64> = alpha.iter().map(|&a| a as f64 / n as f64).collect();
        let lam0 = 1.0 - lam.iter().sum::<f64>();
        for s in 0..d {
            p[s] = lam0 * vertices[0][s] + (0..d).map(|i| lam[i] * vertices[i + 1][s]).sum::<f64>();
        }
        coords.extend_from_slice(&p);
    }
    Ok(LabeledPointSet::generated("simplex-grid", PointSet::new(d, coords)?, Some(n)))
}

/// Approximate Fekete points: the first `N` column pivots of the transposed,
/// orthogonalized mesh Vandermonde.
pub fn afp_extract(mesh: &Mesh, n: usize) -> Result<LabeledPointSet> {
    let basis = BasisDescriptor::for_domain(mesh.domain(), n)?;
    let required = basis.len();
    let v = extraction_vandermonde(mesh, &basis)?;
    // V R⁻¹ = Q has orthonormal columns spanning the same space
    let f = qr(&v, false);
    if !f.is_full_rank() {
        return Err(Error::ExtractionFailure(format!(
            "mesh Vandermonde has rank {} < {required}",
            f.rank
        )));
    }
    let (sel, rel) = greedy_column_selection(f.q.transpose(), required);
    if sel.len() < required || !(rel > EXTRACTION_RANK_TOL) {
        return Err(Error::ExtractionFailure(format!(
            "AFP pivots degenerate (last/first = {rel:e})"
        )));
    }
    Ok(LabeledPointSet {
        label: "afp".into(),
        points: mesh.points().select(&sel),
        degree: Some(n),
        source: Source::Extracted,
    })
}

/// Discrete Leja points: the first `N` row pivots of Gaussian elimination with
/// partial pivoting on the mesh Vandermonde. With the graded basis order the
/// sequence is nested in `n`.
pub fn dlp_extract(mesh: &Mesh, n: usize) -> Result<LabeledPointSet> {
    let basis = BasisDescriptor::for_domain(mesh.domain(), n)?;
    let required = basis.len();
    let v = extraction_vandermonde(mesh, &basis)?;
    let (sel, singular) = greedy_row_selection(v, required);
    if sel.len() < required || singular.is_some() {
        return Err(Error::ExtractionFailure(format!(
            "elimination found a zero pivot at step {}",
            singular.unwrap_or(sel.len())
        )));
    }
    let points = mesh.points().select(&sel);
    let check = qr(&vandermonde(&points, &basis)?, true);
    if !check.is_full_rank() {
        return Err(Error::ExtractionFailure(format!(
            "DLP Vandermonde has rank {} < {required}",
            check.rank
        )));
    }
    Ok(LabeledPointSet {
        label: "dlp".into(),
        points,
        degree: Some(n),
        source: Source::Extracted,
    })
}

fn extraction_vandermonde(mesh: &Mesh, basis: &BasisDescriptor) -> Result<Matrix> {
    if mesh.len() < basis.len() {
        return Err(Error::ExtractionFailure(format!(
            "mesh of {} points cannot supply {} nodes",
            mesh.len(),
            basis.len()
        )));
    }
    vandermonde(mesh.points(), basis)
}

/// Reads a CSV point file; the dimension is the column count (minus one with
/// `weighted`) and must match `expected_dim` when given.
pub fn load_pointset(path: &Path, weighted: bool, expected_dim: Option<usize>) -> Result<LabeledPointSet> {
    let points = crate::io::read_points_csv(path, weighted)?;
    if let Some(d) = expected_dim {
        if points.dim() != d {
            return Err(Error::invalid(format!(
                "{} holds points of dimension {}, expected {d}",
                path.display(),
                points.dim()
            )));
        }
    }
    let label = path
        .file_stem()
        .map_or_else(|| "file".to_string(), |s| s.to_string_lossy().into_owned());
    Ok(LabeledPointSet {
        label,
        points,
        degree: None,
        source: Source::Loaded,
    })
}

/// A point family named on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `n + 1` Chebyshev zeros on an interval.
    Chebyshev,
    /// `n + 1` Gauss–Legendre nodes on an interval.
    Legendre,
    /// `n + 1` Gauss–Legendre–Lobatto nodes on an interval.
    Lobatto,
    /// `n + 1` equispaced nodes on an interval.
    Equispaced,
    Padua,
    MorrowPatterson,
    /// Halton points in the domain; `None` means exactly `dim P_n` points.
    Halton(Option<usize>),
    SimplexGrid,
    Afp,
    Dlp,
    File(PathBuf),
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(Family::File(PathBuf::from(path)));
        }
        if let Some(count) = s.strip_prefix("halton:") {
            let c: usize = count
                .parse()
                .map_err(|_| Error::invalid(format!("bad Halton count {count:?}")))?;
            if c == 0 {
                return Err(Error::invalid("Halton count must be positive"));
            }
            return Ok(Family::Halton(Some(c)));
        }
        Ok(match s {
            "chebyshev" => Family::Chebyshev,
            "legendre" => Family::Legendre,
            "lobatto" => Family::Lobatto,
            "equispaced" => Family::Equispaced,
            "padua" => Family::Padua,
            "morrow-patterson" => Family::MorrowPatterson,
            "halton" => Family::Halton(None),
            "simplex-grid" => Family::SimplexGrid,
            "afp" => Family::Afp,
            "dlp" => Family::Dlp,
            other => return Err(Error::invalid(format!("unknown point family {other:?}"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Chebyshev => f.write_str("chebyshev"),
            Family::Legendre => f.write_str("legendre"),
            Family::Lobatto => f.write_str("lobatto"),
            Family::Equispaced => f.write_str("equispaced"),
            Family::Padua => f.write_str("padua"),
            Family::MorrowPatterson => f.write_str("morrow-patterson"),
            Family::Halton(None) => f.write_str("halton"),
            Family::Halton(Some(c)) => write!(f, "halton:{c}"),
            Family::SimplexGrid => f.write_str("simplex-grid"),
            Family::Afp => f.write_str("afp"),
            Family::Dlp => f.write_str("dlp"),
            Family::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Affine image of `[-1, 1]^d` points in the bounding box of `domain`.
fn to_box(points: PointSet, domain: &Domain) -> PointSet {
    let (lo, hi) = domain.bounding_box();
    points.map_points(points.dim(), |p, out| {
        for s in 0..p.len() {
            out[s] = if p[s] == -1.0 {
                lo[s]
            } else if p[s] == 1.0 {
                hi[s]
            } else {
                (lo[s] + hi[s]) / 2.0 + (hi[s] - lo[s]) / 2.0 * p[s]
            };
        }
    })
}

fn require_interval(domain: &Domain, family: &Family) -> Result<()> {
    if domain.dim() != 1 || matches!(domain, Domain::Union { .. }) {
        return Err(Error::invalid(format!("{family} points are defined on an interval only")));
    }
    Ok(())
}

fn require_square(domain: &Domain, family: &Family) -> Result<()> {
    if domain.dim() != 2 || !matches!(domain, Domain::Box { .. }) {
        return Err(Error::invalid(format!("{family} points are defined on a 2-d box only")));
    }
    Ok(())
}

/// Nodes of `family` for degree `n` on `domain`. Extraction families build the
/// mesh `(n, m, kind)` of the domain and select from it.
pub fn generate(family: &Family, domain: &Domain, n: usize, m: f64, kind: NodeKind) -> Result<LabeledPointSet> {
    domain.validate()?;
    let one_d = |nodes: Vec<f64>| to_box(PointSet::from_scalars(&nodes), domain);
    let mut set = match family {
        Family::Chebyshev => {
            require_interval(domain, family)?;
            LabeledPointSet::generated("chebyshev", one_d(chebyshev_zeros(n + 1)?), Some(n))
        }
        Family::Legendre => {
            require_interval(domain, family)?;
            LabeledPointSet::generated("legendre", one_d(gauss_legendre(n + 1)?.0), Some(n))
        }
        Family::Lobatto => {
            require_interval(domain, family)?;
            let nodes = if n == 0 { vec![0.0] } else if n == 1 { vec![1.0, -1.0] } else { gauss_legendre_lobatto(n)? };
            LabeledPointSet::generated("lobatto", one_d(nodes), Some(n))
        }
        Family::Equispaced => {
            require_interval(domain, family)?;
            let nodes = if n == 0 { vec![0.0] } else { equispaced(n, -1.0, 1.0)? };
            LabeledPointSet::generated("equispaced", one_d(nodes), Some(n))
        }
        Family::Padua => {
            require_square(domain, family)?;
            let p = padua(n)?;
            LabeledPointSet { points: to_box(p.points, domain), ..p }
        }
        Family::MorrowPatterson => {
            require_square(domain, family)?;
            let p = morrow_patterson(n)?;
            LabeledPointSet { points: to_box(p.points, domain), ..p }
        }
        Family::Halton(count) => {
            let c = count.unwrap_or_else(|| poly_dim(domain.dim(), n));
            halton_in(domain, c)?
        }
        Family::SimplexGrid => simplex_grid(n, domain)?,
        Family::Afp => afp_extract(&build_mesh(domain, n, m, kind)?, n)?,
        Family::Dlp => dlp_extract(&build_mesh(domain, n, m, kind)?, n)?,
        Family::File(path) => load_pointset(path, false, Some(domain.dim()))?,
    };
    if set.degree.is_none() && !matches!(family, Family::File(_) | Family::Halton(Some(_))) {
        set.degree = Some(n);
    }
    Ok(set)
}
