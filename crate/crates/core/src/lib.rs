//! Computational toolkit for the generalized Bring curve: the complete
//! intersection of the diagonal hypersurfaces `x_1^k + .. + x_m^k = 0`,
//! `1 <= k <= m - 2`, in `PG(m-1)` over finite fields.

pub mod branch;
pub mod bring5;
pub mod error;
pub mod ff;
pub mod geometry;
pub mod redei;
pub mod symmetry;
pub mod variety;

pub use error::{Error, Result};
