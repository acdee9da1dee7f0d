use mac_exact::ExactError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("not in lattice: {0}")]
    NotInLattice(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("input is not symmetric")]
    NotSymmetric,
    #[error("result is not a Laurent polynomial: {0}")]
    NotPolynomial(String),
    #[error("resonance at beta = {0:?}")]
    Resonance(Vec<i64>),
    #[error("intertwiner system singular at degree {0:?}")]
    SingularDegree(Vec<i64>),
    #[error("eigenvalue collision between {0} and {1}")]
    EigenvalueCollision(String, String),
    #[error("Weyl group enumeration of length {0} is not stable; increase the length")]
    WeylTruncation(usize),
    #[error("height window {0} is not saturated; increase the height")]
    HeightTruncation(u32),
    #[error("graded dimension mismatch at degree {degree:?}: got {got}, expected {expected}")]
    DimensionMismatch {
        degree: Vec<u32>,
        got: usize,
        expected: usize,
    },
    #[error("no consistent convention: {0}")]
    NoConvention(String),
    #[error("series is not regular at the expansion point: {0}")]
    NotRegular(String),
    #[error("linear system underdetermined ({0} free unknowns)")]
    Underdetermined(usize),
    #[error("linear system inconsistent: {0}")]
    Inconsistent(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
