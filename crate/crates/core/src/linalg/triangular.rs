use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Diagonal entries below this fraction of the largest make the system singular.
pub const SINGULAR_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triangle {
    Upper,
    Lower,
}

fn check_diagonal(t: &Matrix) -> Result<()> {
    let n = t.nrows();
    let dmax = (0..n).fold(0.0f64, |m, i| m.max(t[(i, i)].abs()));
    for i in 0..n {
        let d = t[(i, i)];
        if !(d.abs() >= SINGULAR_TOL * dmax) || dmax == 0.0 {
            return Err(Error::SingularSystem { index: i, value: d });
        }
    }
    Ok(())
}

/// Solves `T X = B` for square triangular `T`. Entries of `T` outside the
/// named triangle are ignored.
pub fn solve_triangular(t: &Matrix, b: &Matrix, which: Triangle) -> Result<Matrix> {
    let n = t.nrows();
    if t.ncols() != n || b.nrows() != n {
        return Err(Error::invalid(format!(
            "triangular solve shape mismatch: {:?} with rhs {:?}",
            t.shape(),
            b.shape()
        )));
    }
    check_diagonal(t)?;
    let mut x = b.clone();
    for c in 0..x.ncols() {
        let col = x.col_mut(c);
        match which {
            Triangle::Upper => {
                for i in (0..n).rev() {
                    let xi = col[i] / t[(i, i)];
                    col[i] = xi;
                    if xi != 0.0 {
                        let tc = t.col(i);
                        for (v, &tv) in col[..i].iter_mut().zip(&tc[..i]) {
                            *v -= xi * tv;
                        }
                    }
                }
            }
            Triangle::Lower => {
                for i in 0..n {
                    let xi = col[i] / t[(i, i)];
                    col[i] = xi;
                    if xi != 0.0 {
                        let tc = t.col(i);
                        for (v, &tv) in col[i + 1..].iter_mut().zip(&tc[i + 1..]) {
                            *v -= xi * tv;
                        }
                    }
                }
            }
        }
    }
    Ok(x)
}

/// Solves `Tᵀ X = B` for square triangular `T`.
pub fn solve_triangular_transposed(t: &Matrix, b: &Matrix, which: Triangle) -> Result<Matrix> {
    let n = t.nrows();
    if t.ncols() != n || b.nrows() != n {
        return Err(Error::invalid("triangular solve shape mismatch"));
    }
    check_diagonal(t)?;
    let mut x = b.clone();
    for c in 0..x.ncols() {
        let col = x.col_mut(c);
        match which {
            // Uᵀ is lower: forward substitution using columns of U as rows of Uᵀ
            Triangle::Upper => {
                for i in 0..n {
                    let tc = t.col(i);
                    let s: f64 = tc[..i].iter().zip(&col[..i]).map(|(a, b)| a * b).sum();
                    col[i] = (col[i] - s) / tc[i];
                }
            }
            Triangle::Lower => {
                for i in (0..n).rev() {
                    let tc = t.col(i);
                    let s: f64 = tc[i + 1..].iter().zip(&col[i + 1..]).map(|(a, b)| a * b).sum();
                    col[i] = (col[i] - s) / tc[i];
                }
            }
        }
    }
    Ok(x)
}
