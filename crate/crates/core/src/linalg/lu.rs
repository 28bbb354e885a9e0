//! Gaussian elimination with partial (row) pivoting on tall matrices.

use super::matrix::{axpy, Matrix};

#[derive(Debug, Clone)]
pub struct LuFactorization {
    /// Unit lower trapezoidal, `m × n`.
    pub l: Matrix,
    /// Upper triangular, `n × n`.
    pub u: Matrix,
    /// `row_perm[i]` is the original row placed at position `i`; the first `n`
    /// entries are the pivot rows in selection order.
    pub row_perm: Vec<usize>,
    /// Number of nonzero pivots.
    pub rank: usize,
    /// First elimination step whose pivot was exactly zero.
    pub singular_at: Option<usize>,
}

impl LuFactorization {
    pub fn pivots(&self) -> &[usize] {
        &self.row_perm[..self.u.nrows()]
    }
}

/// In-place elimination; returns the row permutation and the first zero pivot.
fn eliminate(a: &mut Matrix, steps: usize) -> (Vec<usize>, usize, Option<usize>) {
    let (m, n) = a.shape();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut rank = 0;
    let mut singular_at = None;
    for k in 0..steps.min(n).min(m) {
        let col = a.col(k);
        let mut best = k;
        let mut best_abs = col[k].abs();
        for (i, v) in col.iter().enumerate().skip(k + 1) {
            let v = v.abs();
            // ties go to the lowest original row
            if v > best_abs || (v == best_abs && perm[i] < perm[best]) {
                best = i;
                best_abs = v;
            }
        }
        if best != k {
            a.swap_rows(k, best);
            perm.swap(k, best);
        }
        let pivot = a[(k, k)];
        if pivot == 0.0 {
            singular_at.get_or_insert(k);
            continue;
        }
        rank += 1;
        {
            let col = a.col_mut(k);
            for v in &mut col[k + 1..] {
                *v /= pivot;
            }
        }
        for j in k + 1..n {
            let (lk, cj) = a.col_pair_mut(k, j);
            let f = cj[k];
            if f != 0.0 {
                axpy(-f, &lk[k + 1..], &mut cj[k + 1..]);
            }
        }
    }
    (perm, rank, singular_at)
}

/// `P A = L U` for `A` with at least as many rows as columns. An exactly zero
/// pivot does not abort: it is reported through `rank` / `singular_at`.
pub fn lu_row_pivot(a: &Matrix) -> LuFactorization {
    let (m, n) = a.shape();
    assert!(m >= n, "row-pivoted LU needs rows >= cols");
    let mut work = a.clone();
    let (row_perm, rank, singular_at) = eliminate(&mut work, n);
    let l = Matrix::from_fn(m, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => work[(i, j)],
        std::cmp::Ordering::Equal => 1.0,
        std::cmp::Ordering::Less => 0.0,
    });
    let u = Matrix::from_fn(n, n, |i, j| if i <= j { work[(i, j)] } else { 0.0 });
    LuFactorization {
        l,
        u,
        row_perm,
        rank,
        singular_at,
    }
}

/// The pivot rows chosen in the first `count` elimination steps, without
/// forming the factors.
pub fn greedy_row_selection(a: Matrix, count: usize) -> (Vec<usize>, Option<usize>) {
    let mut a = a;
    let count = count.min(a.ncols()).min(a.nrows());
    let (perm, _, singular_at) = eliminate(&mut a, count);
    (perm[..count].to_vec(), singular_at)
}
