//! Exact arithmetic for the symbolic computations: big integers,
//! multivariate integer polynomials in a fixed set of symbols, rational
//! functions in lowest terms, Laurent polynomials and truncated series.
//!
//! Symbols are `qh, th, z1..z4, w, p` (see [`mono::VAR_NAMES`]).  The
//! working conventions are `q = qh^n` and `t = th^2`.

pub mod error;
pub mod gcd;
pub mod int;
pub mod laurent;
pub mod linalg;
pub mod modp;
pub mod mono;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod series;

pub use error::ExactError;
pub use int::Int;
pub use laurent::{LaurentPoly, RationalExpr};
pub use mono::{var, Mono, NVARS, VAR_NAMES};
pub use parse::{parse_poly, parse_scalar};
pub use poly::Poly;
pub use scalar::Scalar;
pub use series::{height, points_up_to, Grade, Series};
