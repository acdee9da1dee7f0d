use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("series lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("series constant term is not invertible")]
    NotInvertible,
    #[error("specialization makes a denominator vanish")]
    PoleOnSpecialization,
    #[error("linear system is singular at column {0}")]
    Singular(usize),
    #[error("linear system is inconsistent")]
    Inconsistent,
}
