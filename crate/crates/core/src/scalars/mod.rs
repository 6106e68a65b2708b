//! Numeric foundation: exact/float scalars, univariate polynomials, dense
//! linear solves and a reference root finder.

mod linalg;
mod poly;
mod roots;
mod scalar;
mod text;

pub use linalg::{solve_linear, Matrix};
pub use poly::Polynomial;
pub use roots::{polynomial_roots, polynomial_roots_with, ComplexRoot, DEFAULT_MAX_ITERATIONS};
pub use scalar::{Mode, Scalar, DEFAULT_PRECISION, MIN_PRECISION};
pub use text::{parse_scalar, print_scalar};
