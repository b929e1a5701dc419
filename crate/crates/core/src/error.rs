use thiserror::Error;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator count {0} exceeds the supported maximum of 8")]
    TooManyGenerators(usize),
    #[error("generator index {index} is out of range for {n} generators")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("operands live in different Grassmann algebras ({left} vs {right} generators)")]
    MismatchedGenerators { left: usize, right: usize },
    #[error("element is not invertible: its body is zero")]
    NotInvertible,
    #[error("no square root exists in the coefficient field")]
    NoSquareRoot,
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("degenerate point: no coordinate has an invertible body")]
    DegeneratePoint,
    #[error("point does not lie in chart {0}")]
    NotInChart(u8),
    #[error("reduced points coincide")]
    CoincidentPoints,
    #[error("matrix violates the superconformal constraints: {0}")]
    ConstraintViolation(String),
    #[error("not global: {0}")]
    NotGlobal(String),
    #[error("degree bound violated: {0}")]
    DegreeBound(String),
    #[error("singular linear system")]
    Singular,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("unstable tree: {0}")]
    Unstable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
