//! Generalized Newton–Raphson–Simpson iterations.
//!
//! For a polynomial `f(z) = a_0 + a_1 z + ... + a_d z^d`, `NRS(m)` sums the
//! weights of all trees with negative vertex degree in order of their type
//! number. Each step solves an `m x m` linear system built from auxiliary
//! polynomials `f_{i,m}`; the partial sums approach the sum of the `m` roots
//! nearest the origin on the well-behaved inputs tested here. `NRS(1)` is
//! ordinary Newton iteration started at zero.
//!
//! Modules:
//! - [`scalars`]: exact rationals and multi-precision floats.
//! - [`genluk`]: generalized Łukasiewicz words, counting and enumeration.
//! - [`mpoly`]: sparse multivariate polynomials.
//! - [`auxfun`]: construction of the auxiliary polynomials.
//! - [`nrs`]: the iteration itself and the Newton baseline.
//! - [`hyper`]: graded truncations of the hypergeometric root series.
//! - [`xi`]: Taylor coefficients of the Riemann xi function and Jensen polynomials.

pub mod auxfun;
pub mod error;
pub mod genluk;
pub mod hyper;
pub mod mpoly;
pub mod nrs;
pub mod scalars;
pub mod xi;

pub use error::{Error, Result};
