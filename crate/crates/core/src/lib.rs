pub mod basis;
pub mod cli;
pub mod compress;
pub mod error;
pub mod io;
pub mod linalg;
pub mod mesh;
pub mod points;
pub mod points1d;
pub mod pointsets;
pub mod projector;

pub use error::{Error, Result};
pub use points::PointSet;
