//! Householder QR, plain and with column pivoting.

use super::matrix::{axpy, dot, norm2, Matrix};

/// Diagonal entries of `R` below this fraction of the largest one count as zero.
pub const RANK_TOL: f64 = 1e-13;

/// Compact Householder factorization: reflector vectors live below the diagonal
/// of `work` (with an implicit unit head), `R` on and above it.
struct Householder {
    work: Matrix,
    tau: Vec<f64>,
    perm: Vec<usize>,
}

impl Householder {
    fn steps(&self) -> usize {
        self.tau.len()
    }

    /// Applies `H_0 ⋯ H_{k-1}` to the columns of `c` (whose rows match `work`).
    fn apply_q(&self, c: &mut Matrix) {
        for step in (0..self.steps()).rev() {
            self.apply_reflector(step, c);
        }
    }

    fn apply_reflector(&self, step: usize, c: &mut Matrix) {
        let tau = self.tau[step];
        if tau == 0.0 {
            return;
        }
        let v = &self.work.col(step)[step..];
        for j in 0..c.ncols() {
            let col = &mut c.col_mut(j)[step..];
            let s = tau * (col[0] + dot(&v[1..], &col[1..]));
            col[0] -= s;
            axpy(-s, &v[1..], &mut col[1..]);
        }
    }
}

/// Householder vector for `x`, stored over `x` with unit head implied.
/// Returns `(tau, beta)` where `beta` is the new leading entry.
fn make_reflector(x: &mut [f64]) -> (f64, f64) {
    let tail = norm2(&x[1..]);
    let alpha = x[0];
    if tail == 0.0 {
        return (0.0, alpha);
    }
    let norm = alpha.hypot(tail);
    let beta = if alpha >= 0.0 { -norm } else { norm };
    let v0 = alpha - beta;
    for v in &mut x[1..] {
        *v /= v0;
    }
    ((beta - alpha) / beta, beta)
}

/// Applies the reflector held in `v` (unit head implied) to `col`.
#[inline]
fn reflect(tau: f64, v_tail: &[f64], col: &mut [f64]) {
    let s = tau * (col[0] + dot(v_tail, &col[1..]));
    col[0] -= s;
    axpy(-s, v_tail, &mut col[1..]);
}

fn factorize(mut a: Matrix, pivot: bool, max_steps: usize) -> Householder {
    let (m, n) = a.shape();
    let k = m.min(n).min(max_steps);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut norms: Vec<f64> = Vec::new();
    let mut ref_norms: Vec<f64> = Vec::new();
    if pivot {
        norms = (0..n).map(|j| norm2(a.col(j))).collect();
        ref_norms = norms.clone();
    }
    let mut tau = Vec::with_capacity(k);
    for step in 0..k {
        if pivot {
            // largest remaining norm, lowest index on ties
            let mut best = step;
            for j in step + 1..n {
                if norms[j] > norms[best] {
                    best = j;
                }
            }
            if best != step {
                a.swap_cols(step, best);
                perm.swap(step, best);
                norms.swap(step, best);
                ref_norms.swap(step, best);
            }
        }
        let t = {
            let col = &mut a.col_mut(step)[step..];
            let (t, beta) = make_reflector(col);
            col[0] = beta;
            t
        };
        tau.push(t);
        if t != 0.0 {
            let (vcol, rest) = split_col(&mut a, step);
            let v_tail = &vcol[step + 1..];
            for (offset, col) in rest.chunks_exact_mut(m).enumerate() {
                reflect(t, v_tail, &mut col[step..]);
                if pivot {
                    let j = step + 1 + offset;
                    update_norm(&mut norms[j], &mut ref_norms[j], col[step], &col[step + 1..]);
                }
            }
        } else if pivot {
            for j in step + 1..n {
                let head = a[(step, j)];
                let tail = &a.col(j)[step + 1..];
                update_norm(&mut norms[j], &mut ref_norms[j], head, tail);
            }
        }
    }
    Householder { work: a, tau, perm }
}

/// Splits `a` into column `j` and all columns after it.
fn split_col(a: &mut Matrix, j: usize) -> (&mut [f64], &mut [f64]) {
    let m = a.nrows();
    let (head, tail) = a.as_mut_slice().split_at_mut((j + 1) * m);
    (&mut head[j * m..], tail)
}

/// Partial-norm downdate after row `step` has been eliminated, with a
/// recomputation when cancellation has eaten most of the digits.
fn update_norm(norm: &mut f64, reference: &mut f64, head: f64, tail: &[f64]) {
    if *norm == 0.0 {
        return;
    }
    let ratio = head.abs() / *norm;
    let t = (1.0 - ratio * ratio).max(0.0);
    let rel = *norm / reference.max(f64::MIN_POSITIVE);
    if t * rel * rel <= f64::EPSILON.sqrt() {
        *norm = norm2(tail);
        *reference = *norm;
    } else {
        *norm *= t.sqrt();
    }
}

/// Result of [`qr`]: `A[:, perm] = Q R` with `Q` having orthonormal columns.
#[derive(Debug, Clone)]
pub struct QrFactorization {
    pub q: Matrix,
    pub r: Matrix,
    /// `perm[j]` is the original index of the column placed at position `j`;
    /// `None` for the unpivoted factorization.
    pub perm: Option<Vec<usize>>,
    /// Number of diagonal entries of `R` above [`RANK_TOL`] relative to the largest.
    pub rank: usize,
    /// First diagonal position that falls below the rank threshold.
    pub deficient_at: Option<usize>,
}

impl QrFactorization {
    pub fn is_full_rank(&self) -> bool {
        self.deficient_at.is_none()
    }
}

/// Thin Householder QR. Without pivoting `A` must have at least as many rows
/// as columns; with pivoting any shape is accepted and `Q` is `m × min(m, n)`.
pub fn qr(a: &Matrix, pivot: bool) -> QrFactorization {
    let (m, n) = a.shape();
    assert!(pivot || m >= n, "unpivoted QR needs rows >= cols");
    let k = m.min(n);
    let h = factorize(a.clone(), pivot, k);
    let mut r = Matrix::zeros(k, n);
    for j in 0..n {
        for i in 0..=j.min(k - 1) {
            r[(i, j)] = h.work[(i, j)];
        }
    }
    let mut q = Matrix::zeros(m, k);
    for i in 0..k {
        q[(i, i)] = 1.0;
    }
    h.apply_q(&mut q);
    let (rank, deficient_at) = diagonal_rank(&r);
    QrFactorization {
        q,
        r,
        perm: pivot.then_some(h.perm),
        rank,
        deficient_at,
    }
}

fn diagonal_rank(r: &Matrix) -> (usize, Option<usize>) {
    let k = r.nrows().min(r.ncols());
    let dmax = (0..k).fold(0.0f64, |m, i| m.max(r[(i, i)].abs()));
    let small: Vec<usize> = (0..k)
        .filter(|&i| !(r[(i, i)].abs() >= RANK_TOL * dmax) || dmax == 0.0)
        .collect();
    (k - small.len(), small.first().copied())
}

/// Greedy column selection by column-pivoted QR: the first `count` pivots,
/// i.e. the columns that successively maximize the remaining norm. Only the
/// pivot order is returned; `Q` is never formed.
///
/// Returns the selection and the magnitude of the last diagonal entry relative
/// to the first, which the caller may use as a rank gate.
pub fn greedy_column_selection(a: Matrix, count: usize) -> (Vec<usize>, f64) {
    let count = count.min(a.nrows()).min(a.ncols());
    let h = factorize(a, true, count);
    let first = if count > 0 { h.work[(0, 0)].abs() } else { 0.0 };
    let last = if count > 0 {
        h.work[(count - 1, count - 1)].abs()
    } else {
        0.0
    };
    let rel = if first > 0.0 { last / first } else { 0.0 };
    (h.perm[..count].to_vec(), rel)
}

/// Least-squares solution of `A x ≈ b` for `A` with full column rank.
///
/// Returns `None` when `A` has more columns than rows or when a diagonal entry
/// of `R` falls below `rank_tol` times the largest one.
pub fn least_squares(a: &Matrix, b: &[f64], rank_tol: f64) -> Option<Vec<f64>> {
    let (m, n) = a.shape();
    assert_eq!(m, b.len());
    if n > m {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let h = factorize(a.clone(), false, n);
    let dmax = (0..n).fold(0.0f64, |acc, i| acc.max(h.work[(i, i)].abs()));
    if dmax == 0.0 || (0..n).any(|i| !(h.work[(i, i)].abs() >= rank_tol * dmax)) {
        return None;
    }
    let mut rhs = Matrix::from_column(b);
    for step in 0..n {
        h.apply_reflector(step, &mut rhs);
    }
    let mut x = rhs.col(0)[..n].to_vec();
    for i in (0..n).rev() {
        let xi = x[i] / h.work[(i, i)];
        x[i] = xi;
        let rc = h.work.col(i);
        for (v, &r) in x[..i].iter_mut().zip(&rc[..i]) {
            *v -= xi * r;
        }
    }
    Some(x)
}
