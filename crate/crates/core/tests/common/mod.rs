//! Independent oracles shared by the integration tests and the acceptance
//! suite. Nothing here goes through the library's QR or projector code.
#![allow(dead_code)]

use lebesgue_mesh::basis::BasisDescriptor;
use lebesgue_mesh::mesh::Domain;
use lebesgue_mesh::points::PointSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const PRIMES: [u32; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Kronecker sequence `frac(i·√p_j)` in `[0, 1)^d`, `i = 1, 2, ...`.
pub fn kronecker(d: usize, count: usize, start: usize) -> Vec<f64> {
    assert!(d <= PRIMES.len());
    let alpha: Vec<f64> = PRIMES[..d].iter().map(|&p| (p as f64).sqrt().fract()).collect();
    let mut out = Vec::with_capacity(d * count);
    for i in start + 1..=start + count {
        for a in &alpha {
            out.push((i as f64 * a).fract());
        }
    }
    out
}

/// `count` quasi-random points of the domain (box, simplex or ball).
pub fn domain_samples(domain: &Domain, count: usize) -> PointSet {
    let d = domain.dim();
    match domain {
        Domain::Box { lo, hi } => {
            let u = kronecker(d, count, 0);
            let coords = u.iter().enumerate().map(|(k, t)| lo[k % d] + t * (hi[k % d] - lo[k % d])).collect();
            PointSet::new(d, coords).unwrap()
        }
        Domain::Simplex { vertices } => {
            // sorted cube coordinates are uniform on 1 ≥ t1 ≥ ... ≥ td ≥ 0
            let u = kronecker(d, count, 0);
            let mut coords = Vec::with_capacity(d * count);
            for chunk in u.chunks(d) {
                let mut t = chunk.to_vec();
                t.sort_by(|a, b| b.partial_cmp(a).unwrap());
                let mut lam = vec![0.0; d + 1];
                lam[0] = 1.0 - t[0];
                for i in 1..d {
                    lam[i] = t[i - 1] - t[i];
                }
                lam[d] = t[d - 1];
                for s in 0..d {
                    coords.push((0..=d).map(|i| lam[i] * vertices[i][s]).sum());
                }
            }
            PointSet::new(d, coords).unwrap()
        }
        Domain::Ball { center, radius } => {
            let mut coords = Vec::with_capacity(d * count);
            let mut start = 0;
            let mut got = 0;
            while got < count {
                for chunk in kronecker(d, 4096, start).chunks(d) {
                    let y: Vec<f64> = chunk.iter().map(|t| 2.0 * t - 1.0).collect();
                    if y.iter().map(|v| v * v).sum::<f64>() <= 1.0 && got < count {
                        coords.extend(y.iter().zip(center).map(|(v, c)| c + radius * v));
                        got += 1;
                    }
                }
                start += 4096;
            }
            PointSet::new(d, coords).unwrap()
        }
        Domain::Union { .. } => unimplemented!("no sampler for unions"),
    }
}

/// Lebesgue function of 1-D interpolation from the product form of the
/// Lagrange basis.
pub fn lagrange_lebesgue_1d(nodes: &[f64], x: f64) -> f64 {
    let mut total = 0.0;
    for (i, &xi) in nodes.iter().enumerate() {
        let mut l = 1.0;
        for (j, &xj) in nodes.iter().enumerate() {
            if j != i {
                l *= (x - xj) / (xi - xj);
            }
        }
        total += l.abs();
    }
    total
}

pub fn max_lagrange_lebesgue_1d(nodes: &[f64], xs: &[f64]) -> f64 {
    xs.par_iter().map(|&x| lagrange_lebesgue_1d(nodes, x)).reduce(|| 0.0, f64::max)
}

/// LU with partial pivoting of a square row-major matrix.
pub struct Lu {
    n: usize,
    a: Vec<f64>,
    piv: Vec<usize>,
}

impl Lu {
    pub fn new(n: usize, mut a: Vec<f64>) -> Self {
        let mut piv: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].abs().partial_cmp(&a[j * n + k].abs()).unwrap())
                .unwrap();
            assert!(a[p * n + k] != 0.0, "singular matrix");
            if p != k {
                for c in 0..n {
                    a.swap(p * n + c, k * n + c);
                }
                piv.swap(p, k);
            }
            for i in k + 1..n {
                let f = a[i * n + k] / a[k * n + k];
                a[i * n + k] = f;
                for c in k + 1..n {
                    a[i * n + c] -= f * a[k * n + c];
                }
            }
        }
        Lu { n, a, piv }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y: Vec<f64> = self.piv.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for c in 0..i {
                y[i] -= self.a[i * n + c] * y[c];
            }
        }
        for i in (0..n).rev() {
            for c in i + 1..n {
                y[i] -= self.a[i * n + c] * y[c];
            }
            y[i] /= self.a[i * n + i];
        }
        y
    }
}

/// Interpolation Lebesgue function through `Vᵀ ℓ(x) = v(x)`, solved by LU.
pub struct LagrangeOracle {
    basis: BasisDescriptor,
    lu: Lu,
}

impl LagrangeOracle {
    pub fn new(nodes: &PointSet, domain: &Domain, n: usize) -> Self {
        let basis = BasisDescriptor::for_domain(domain, n).unwrap();
        let nb = basis.len();
        assert_eq!(nodes.len(), nb, "interpolation needs N nodes");
        // row k holds p_k at every node
        let mut a = vec![0.0; nb * nb];
        for (i, x) in nodes.iter().enumerate() {
            for (k, v) in basis.evaluate(x).unwrap().into_iter().enumerate() {
                a[k * nb + i] = v;
            }
        }
        LagrangeOracle { basis, lu: Lu::new(nb, a) }
    }

    pub fn lambda(&self, x: &[f64]) -> f64 {
        self.lu.solve(&self.basis.evaluate(x).unwrap()).iter().map(|v| v.abs()).sum()
    }

    pub fn max_over(&self, pts: &PointSet) -> f64 {
        let coords = pts.coords();
        let d = pts.dim();
        coords
            .par_chunks(d * 1024)
            .map(|block| block.chunks(d).map(|x| self.lambda(x)).fold(0.0, f64::max))
            .reduce(|| 0.0, f64::max)
    }
}

/// Singular values by one-sided Jacobi (Hestenes), descending.
pub fn singular_values(rows: usize, cols: usize, col_major: &[f64]) -> Vec<f64> {
    let mut u = col_major.to_vec();
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..cols {
            for q in p + 1..cols {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..rows {
                    let (a, b) = (u[p * rows + i], u[q * rows + i]);
                    alpha += a * a;
                    beta += b * b;
                    gamma += a * b;
                }
                if gamma == 0.0 {
                    continue;
                }
                off = off.max(gamma.abs() / (alpha * beta).sqrt());
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let (a, b) = (u[p * rows + i], u[q * rows + i]);
                    u[p * rows + i] = c * a - s * b;
                    u[q * rows + i] = s * a + c * b;
                }
            }
        }
        if off < 1e-15 {
            break;
        }
    }
    let mut s: Vec<f64> = (0..cols)
        .map(|j| u[j * rows..(j + 1) * rows].iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Random coefficient vectors, uniform in [-1, 1].
pub fn random_coefficients(len: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect()
}

/// Values of `Σ c_k p_k` at every point, one vector per coefficient set.
pub fn eval_polys(basis: &BasisDescriptor, coeffs: &[Vec<f64>], pts: &PointSet) -> Vec<Vec<f64>> {
    let rows: Vec<Vec<f64>> = pts
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|x| {
            let v = basis.evaluate(x).unwrap();
            coeffs.iter().map(|c| c.iter().zip(&v).map(|(a, b)| a * b).sum()).collect()
        })
        .collect();
    (0..coeffs.len()).map(|j| rows.iter().map(|r: &Vec<f64>| r[j]).collect()).collect()
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// `∫ x^a y^b` over the unit disk.
pub fn disk_monomial_moment(a: u32, b: u32) -> f64 {
    if a % 2 == 1 || b % 2 == 1 {
        return 0.0;
    }
    let dfact = |k: i64| {
        let mut p = 1.0;
        let mut j = k;
        while j > 1 {
            p *= j as f64;
            j -= 2;
        }
        p
    };
    2.0 * std::f64::consts::PI * dfact(a as i64 - 1) * dfact(b as i64 - 1) / dfact((a + b) as i64) / (a + b + 2) as f64
}

/// Regular grid of `k^2` points of the square `[-1,1]^2`, optionally
/// restricted to the unit disk.
pub fn square_grid(k: usize, disk_only: bool) -> PointSet {
    let mut coords = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let x = -1.0 + 2.0 * i as f64 / (k - 1) as f64;
            let y = -1.0 + 2.0 * j as f64 / (k - 1) as f64;
            if !disk_only || x * x + y * y <= 1.0 {
                coords.push(x);
                coords.push(y);
            }
        }
    }
    PointSet::new(2, coords).unwrap()
}
