//! Root data, Macdonald operators, formal eigenfunctions, the rank-1
//! quantum group trace construction and a truncated affine layer.

pub mod affine;
pub mod chars;
pub mod eigen;
pub mod error;
pub mod macdonald;
pub mod ops;
pub mod roots;
pub mod symfun;
pub mod uq;

pub use error::{CoreError, Result};
