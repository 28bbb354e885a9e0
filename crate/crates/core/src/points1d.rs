//! Classical node families on `[-1, 1]`.
//!
//! Every family is returned in decreasing order. Chebyshev-type nodes are
//! evaluated as `sin` of a symmetric angle so that the lists are exactly
//! negation-symmetric and contain an exact `0` when the count is odd.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// Which univariate Chebyshev family a mesh factor is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    /// `k` zeros of `T_k`, strictly inside `(-1, 1)`.
    #[default]
    ChebyshevZeros,
    /// `k + 1` extrema of `T_k`, endpoints included.
    ChebyshevLobatto,
}

impl NodeKind {
    /// Nodes of the family with parameter `k`.
    pub fn nodes(self, k: usize) -> Result<Vec<f64>> {
        match self {
            NodeKind::ChebyshevZeros => chebyshev_zeros(k),
            NodeKind::ChebyshevLobatto => chebyshev_lobatto(k),
        }
    }

    /// Number of nodes for parameter `k`.
    pub fn count(self, k: usize) -> usize {
        match self {
            NodeKind::ChebyshevZeros => k,
            NodeKind::ChebyshevLobatto => k + 1,
        }
    }
}

/// `cos((2j-1)π/(2k))` for `j = 1..=k`.
pub fn chebyshev_zeros(k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::invalid("Chebyshev zeros need k >= 1"));
    }
    let kf = k as f64;
    // cos((2j-1)π/(2k)) = sin((k-2j+1)π/(2k))
    Ok((1..=k)
        .map(|j| (PI * (k as f64 - 2.0 * j as f64 + 1.0) / (2.0 * kf)).sin())
        .collect())
}

/// `cos(jπ/k)` for `j = 0..=k`.
pub fn chebyshev_lobatto(k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::invalid("Chebyshev-Lobatto points need k >= 1"));
    }
    let kf = k as f64;
    Ok((0..=k)
        .map(|j| (PI * (kf - 2.0 * j as f64) / (2.0 * kf)).sin())
        .collect())
}

/// `k + 1` equally spaced points from `a` to `b`, both included.
pub fn equispaced(k: usize, a: f64, b: f64) -> Result<Vec<f64>> {
    if !(a < b) {
        return Err(Error::invalid(format!("equispaced needs a < b, got [{a}, {b}]")));
    }
    if k == 0 {
        return Err(Error::invalid("equispaced needs k >= 1"));
    }
    let h = (b - a) / k as f64;
    let mut out: Vec<f64> = (0..=k).map(|j| a + j as f64 * h).collect();
    out[k] = b;
    Ok(out)
}

/// Legendre polynomials `P_k(x)` and `P_{k-1}(x)` by the three-term recurrence.
fn legendre_pair(k: usize, x: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (1.0, x);
    if k == 0 {
        return (1.0, 0.0);
    }
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0) * x * p - jf * p_prev) / (jf + 1.0);
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

/// Newton iteration on `f/f'` starting at `x0`.
fn newton(x0: f64, what: &str, step: impl Fn(f64) -> f64) -> Result<f64> {
    let mut x = x0;
    for _ in 0..NEWTON_MAX_ITER {
        let dx = step(x);
        x -= dx;
        if dx.abs() <= NEWTON_TOL {
            return Ok(x);
        }
    }
    Err(Error::NumericalFailure(format!(
        "{what}: Newton refinement did not converge from {x0}"
    )))
}

/// Gauss-Legendre rule with `k` nodes, exact for degree `2k - 1`.
///
/// Nodes come from Newton refinement of the Legendre recurrence started at the
/// Chebyshev zeros; only the non-negative half is computed and mirrored.
pub fn gauss_legendre(k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if k == 0 {
        return Err(Error::invalid("Gauss-Legendre needs k >= 1"));
    }
    let guesses = chebyshev_zeros(k)?;
    let kf = k as f64;
    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    for j in 0..(k + 1) / 2 {
        let x = if 2 * j + 1 == k {
            0.0
        } else {
            newton(guesses[j], "Gauss-Legendre", |x| {
                let (p, q) = legendre_pair(k, x);
                let dp = kf * (x * p - q) / (x * x - 1.0);
                p / dp
            })?
        };
        let (p, q) = legendre_pair(k, x);
        let dp = kf * (x * p - q) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[j] = x;
        nodes[k - 1 - j] = -x;
        weights[j] = w;
        weights[k - 1 - j] = w;
    }
    Ok((nodes, weights))
}

/// Gauss-Legendre-Lobatto nodes: `±1` and the `k - 1` roots of `P_k'`.
pub fn gauss_legendre_lobatto(k: usize) -> Result<Vec<f64>> {
    if k < 2 {
        return Err(Error::invalid("Gauss-Legendre-Lobatto needs k >= 2"));
    }
    let guesses = chebyshev_lobatto(k)?;
    let kf = k as f64;
    let mut nodes = vec![0.0; k + 1];
    nodes[0] = 1.0;
    nodes[k] = -1.0;
    for j in 1..=k / 2 {
        let x = if 2 * j == k {
            0.0
        } else {
            newton(guesses[j], "Gauss-Legendre-Lobatto", |x| {
                // q = P_k', q' = (2x P_k' - k(k+1) P_k) / (1 - x^2)
                let (p, pm1) = legendre_pair(k, x);
                let q = kf * (x * p - pm1) / (x * x - 1.0);
                let dq = (2.0 * x * q - kf * (kf + 1.0) * p) / (1.0 - x * x);
                q / dq
            })?
        };
        nodes[j] = x;
        nodes[k - j] = -x;
    }
    Ok(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_symmetric(v: &[f64]) {
        let n = v.len();
        for i in 0..n {
            assert!((v[i] + v[n - 1 - i]).abs() <= 1e-15, "{v:?}");
        }
    }

    fn assert_decreasing(v: &[f64]) {
        assert!(v.windows(2).all(|w| w[0] > w[1]), "{v:?}");
    }

    #[test]
    fn chebyshev_zero_examples() {
        assert_eq!(chebyshev_zeros(1).unwrap(), vec![0.0]);
        let z = chebyshev_zeros(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((z[0] - h).abs() <= 2e-16 && (z[1] + h).abs() <= 2e-16);
        let z4 = chebyshev_zeros(4).unwrap();
        assert_symmetric(&z4);
        assert!(z4[0] < 1.0);
        assert!(chebyshev_zeros(0).is_err());
    }

    #[test]
    fn chebyshev_zeros_match_cosine_formula() {
        for k in 1..40 {
            let z = chebyshev_zeros(k).unwrap();
            assert_decreasing(&z);
            assert_symmetric(&z);
            for (j, x) in z.iter().enumerate() {
                let c = ((2 * j + 1) as f64 * PI / (2 * k) as f64).cos();
                assert!((x - c).abs() < 1e-15);
                assert!(x.abs() < 1.0);
            }
        }
    }

    #[test]
    fn lobatto_examples() {
        assert_eq!(chebyshev_lobatto(1).unwrap(), vec![1.0, -1.0]);
        assert_eq!(chebyshev_lobatto(2).unwrap(), vec![1.0, 0.0, -1.0]);
        let l8 = chebyshev_lobatto(8).unwrap();
        assert!(l8.contains(&0.0));
        assert_symmetric(&l8);
        assert_decreasing(&l8);
        assert!(chebyshev_lobatto(0).is_err());
    }

    #[test]
    fn equispaced_examples() {
        assert_eq!(equispaced(2, -1.0, 1.0).unwrap(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(equispaced(1, 0.0, 1.0).unwrap(), vec![0.0, 1.0]);
        let e = equispaced(4, -1.0, 1.0).unwrap();
        assert!(e.windows(2).all(|w| w[1] - w[0] == 0.5));
        assert!(equispaced(3, 1.0, 1.0).is_err());
        assert!(equispaced(3, 2.0, 1.0).is_err());
    }

    #[test]
    fn gauss_legendre_small_rules() {
        let (x, w) = gauss_legendre(1).unwrap();
        assert_eq!((x, w), (vec![0.0], vec![2.0]));
        let (x, w) = gauss_legendre(2).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((x[0] - r).abs() < 1e-15 && (x[1] + r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-14 && (w[1] - 1.0).abs() < 1e-14);
    }

    // Moments of x^j on [-1,1] are 2/(j+1) for even j and 0 for odd j.
    fn exact_moment(j: usize) -> f64 {
        if j % 2 == 1 {
            0.0
        } else {
            2.0 / (j as f64 + 1.0)
        }
    }

    #[test]
    fn gauss_legendre_is_exact_to_degree_2k_minus_1() {
        for k in 1..=40 {
            let (x, w) = gauss_legendre(k).unwrap();
            assert_decreasing(&x);
            assert_symmetric(&x);
            assert!(w.iter().all(|&w| w > 0.0));
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for j in 0..2 * k {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(j as i32)).sum();
                let m = exact_moment(j);
                // odd moments: compare against the scale of the even ones
                let scale = if m == 0.0 { 2.0 / (j as f64 + 1.0) } else { m };
                assert!((q - m).abs() <= 1e-13 * scale, "k={k} j={j} q={q} m={m}");
            }
        }
        let (x, w) = gauss_legendre(5).unwrap();
        let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
        assert!((q - 0.4).abs() < 1e-13);
    }

    #[test]
    fn gauss_legendre_converges_at_high_order() {
        for k in [64, 100, 150, 257] {
            let (x, w) = gauss_legendre(k).unwrap();
            assert_decreasing(&x);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lobatto_legendre_examples() {
        assert_eq!(gauss_legendre_lobatto(2).unwrap(), vec![1.0, 0.0, -1.0]);
        let g = gauss_legendre_lobatto(3).unwrap();
        let r = 1.0 / 5f64.sqrt();
        assert!((g[1] - r).abs() < 1e-15 && (g[2] + r).abs() < 1e-15);
        let g10 = gauss_legendre_lobatto(10).unwrap();
        assert_eq!(g10.len(), 11);
        assert_symmetric(&g10);
        assert!(gauss_legendre_lobatto(1).is_err());
    }

    #[test]
    fn lobatto_legendre_interior_nodes_are_derivative_roots() {
        for k in 2..60 {
            let g = gauss_legendre_lobatto(k).unwrap();
            assert_decreasing(&g);
            for &x in &g[1..k] {
                let (p, q) = legendre_pair(k, x);
                let dp = k as f64 * (x * p - q) / (x * x - 1.0);
                // scale by P_k'(1) = k(k+1)/2
                assert!(dp.abs() < 1e-12 * (k * (k + 1)) as f64 / 2.0, "k={k} x={x}");
            }
        }
    }
}
