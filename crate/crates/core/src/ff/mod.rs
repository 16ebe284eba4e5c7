//! Finite fields `F_{p^k}`, dense polynomials and truncated power series.

pub mod arith;
mod field;
pub mod linalg;
mod poly;
mod series;

pub use field::{FieldCtx, FqElem};
pub use poly::{splitting_degree, DensePoly};
pub use series::PowerSeries;
