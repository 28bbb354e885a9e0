//! Positive quadrature rules exact on `P_{2n}`, the node sets of
//! hyperinterpolation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::points1d::chebyshev_zeros;

const ROOT_TOL: f64 = 1e-15;
const ROOT_MAX_ITER: usize = 200;

/// Product Chebyshev-zero grid with `(n + 1)^2` nodes and equal weights
/// `1 / (n + 1)^2`: the Gauss rule of the normalized product Chebyshev measure
/// on `[-1, 1]^2`.
pub fn hyper_square_chebyshev(n: usize) -> Result<(PointSet, Vec<f64>)> {
    if n == 0 {
        return Err(Error::invalid("hyperinterpolation degree must be at least 1"));
    }
    let z = chebyshev_zeros(n + 1)?;
    let mut coords = Vec::with_capacity(2 * z.len() * z.len());
    for &x in &z {
        for &y in &z {
            coords.push(x);
            coords.push(y);
        }
    }
    let k = z.len() * z.len();
    Ok((PointSet::new(2, coords)?, vec![1.0 / k as f64; k]))
}

/// Monic recurrence `p_{k+1} = (x - a_k) p_k - b_k p_{k-1}` of the Jacobi
/// weight `(1 - t)^α (1 + t)^β` on `[-1, 1]`; `b_0` is unused.
fn jacobi_recurrence(k: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let mut a = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    for j in 0..k {
        let jf = j as f64;
        let s = 2.0 * jf + alpha + beta;
        a.push(if j == 0 {
            (beta - alpha) / (alpha + beta + 2.0)
        } else {
            (beta * beta - alpha * alpha) / (s * (s + 2.0))
        });
        b.push(if j == 0 {
            0.0
        } else {
            4.0 * jf * (jf + alpha) * (jf + beta) * (jf + alpha + beta) / (s * s * (s + 1.0) * (s - 1.0))
        });
    }
    (a, b)
}

/// Orthonormal polynomial values `p̂_0..p̂_k` at `x` for the recurrence
/// `(a, b)` with total mass `mu0`; returns the values and `p̂_k'(x)`.
fn orthonormal(x: f64, k: usize, a: &[f64], b: &[f64], mu0: f64) -> (Vec<f64>, f64) {
    let mut p = Vec::with_capacity(k + 1);
    let mut prev = 0.0;
    let mut cur = 1.0 / mu0.sqrt();
    let (mut dprev, mut dcur) = (0.0, 0.0);
    p.push(cur);
    for j in 0..k {
        let sb_next = b[j + 1].sqrt();
        let sb = if j == 0 { 0.0 } else { b[j].sqrt() };
        let next = ((x - a[j]) * cur - sb * prev) / sb_next;
        let dnext = (cur + (x - a[j]) * dcur - sb * dprev) / sb_next;
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
        p.push(cur);
    }
    (p, dcur)
}

/// Gauss rule with `k` nodes for the weight `r` on `[0, 1]`, nodes decreasing.
///
/// Roots of the degree-`j` orthogonal polynomial interlace those of degree
/// `j - 1`, so each root is bracketed and found by safeguarded Newton. The
/// weights are the Christoffel numbers `1 / Σ_{j<k} p̂_j(x)^2`.
pub fn radial_gauss_rule(k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if k == 0 {
        return Err(Error::invalid("radial rule needs at least one node"));
    }
    // Jacobi(0, 1) on [-1, 1] pushed forward by t ↦ (1 + t) / 2
    let (ta, tb) = jacobi_recurrence(k + 1, 0.0, 1.0);
    let a: Vec<f64> = ta.iter().map(|v| (1.0 + v) / 2.0).collect();
    let b: Vec<f64> = tb.iter().map(|v| v / 4.0).collect();
    let mu0 = 0.5;

    let mut roots: Vec<f64> = Vec::new();
    for deg in 1..=k {
        let mut brackets = Vec::with_capacity(deg);
        let mut hi = 1.0;
        for &r in &roots {
            brackets.push((r, hi));
            hi = r;
        }
        brackets.push((0.0, hi));
        let mut next = Vec::with_capacity(deg);
        for (lo, hi) in brackets {
            next.push(bracketed_root(lo, hi, |x| {
                let (p, dp) = orthonormal(x, deg, &a, &b, mu0);
                (p[deg], dp)
            })?);
        }
        roots = next;
    }
    let weights = roots
        .iter()
        .map(|&x| {
            let (p, _) = orthonormal(x, k - 1, &a, &b, mu0);
            1.0 / p.iter().map(|v| v * v).sum::<f64>()
        })
        .collect();
    Ok((roots, weights))
}

fn bracketed_root(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> (f64, f64)) -> Result<f64> {
    let flo = f(lo).0;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..ROOT_MAX_ITER {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx > 0.0) == (flo > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let step_ok = dfx != 0.0 && newton > lo && newton < hi;
        let nx = if step_ok { newton } else { 0.5 * (lo + hi) };
        if (nx - x).abs() <= ROOT_TOL * x.abs().max(1e-300) || hi - lo <= ROOT_TOL * hi.abs() {
            return Ok(nx);
        }
        x = nx;
    }
    Err(Error::NumericalFailure(format!(
        "radial Gauss root in [{lo}, {hi}] did not converge"
    )))
}

/// Polar product rule on the unit disk exact on `P_{2n}` for area measure:
/// `2n + 1` equispaced angles times `n + 1` Gauss nodes for `r dr`.
pub fn hyper_disk(n: usize) -> Result<(PointSet, Vec<f64>)> {
    if n == 0 {
        return Err(Error::invalid("hyperinterpolation degree must be at least 1"));
    }
    let (r, wr) = radial_gauss_rule(n + 1)?;
    let na = 2 * n + 1;
    let wa = 2.0 * PI / na as f64;
    let mut coords = Vec::with_capacity(2 * na * r.len());
    let mut weights = Vec::with_capacity(na * r.len());
    for (&ri, &wi) in r.iter().zip(&wr) {
        for j in 0..na {
            let (s, c) = (2.0 * PI * j as f64 / na as f64).sin_cos();
            coords.push(ri * c);
            coords.push(ri * s);
            weights.push(wi * wa);
        }
    }
    Ok((PointSet::new(2, coords)?, weights))
}
