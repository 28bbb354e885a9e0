//! Dense kernels: Householder QR, row-pivoted LU, triangular solves and
//! Lawson-Hanson NNLS. Everything is double precision and sequential.

mod lu;
mod matrix;
mod nnls;
mod qr;
mod triangular;

pub use lu::{greedy_row_selection, lu_row_pivot, LuFactorization};
pub use matrix::{axpy, dot, max_abs_row_sum, norm2, Matrix};
pub use nnls::{nnls, NnlsResult};
pub use qr::{greedy_column_selection, least_squares, qr, QrFactorization, RANK_TOL};
pub use triangular::{solve_triangular, solve_triangular_transposed, Triangle, SINGULAR_TOL};
