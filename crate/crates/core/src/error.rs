use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot mix exact and floating-point scalars in {0}")]
    MixedVariants(&'static str),
    #[error("division by zero: {0}")]
    ZeroDenominator(String),
    #[error("singular matrix: pivot {pivot} in column {column}")]
    SingularMatrix { column: usize, pivot: String },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("cannot parse scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("invalid word at index {index}: {reason}")]
    InvalidWord { index: usize, reason: String },
    #[error("degree sequence is incomplete: sum of (k-1)*d_k is {0}, expected -1")]
    IncompleteSequence(i64),
    #[error("degree 1 is not allowed in a degree sequence")]
    DegreeOne,
    #[error("enumeration cap exceeded: {requested} > {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("f_{{m-1,m}} is only defined with zero empty subtrees (requested s = {0})")]
    SOnFinal(usize),
    #[error("singular linear system at step {step}: {detail}")]
    SingularSystem { step: usize, detail: String },
    #[error("derivative vanished at Newton iterate {step}")]
    DerivativeZero { step: usize },
    #[error("odd power u^{power} has residual {residual}")]
    OddPowerResidual { power: usize, residual: String },
}
