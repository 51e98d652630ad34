//! Exact linear algebra over ℚ.

mod elimination;
mod mat;
mod scalar;

pub use elimination::{g1_inverse, is_g1_inverse, kernel_basis, rank, rref, RrefResult};
pub(crate) use elimination::resolve_g1;
pub use mat::Mat;
pub use scalar::{format_scalar, from_frac, from_int, parse_scalar, Scalar};
