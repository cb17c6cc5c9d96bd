use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: edge weight must be positive")]
    NonPositiveWeight { line: usize },
    #[error("line {line}: measure must be nonnegative")]
    NegativeMeasure { line: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("sets overlap")]
    OverlappingSets,
    #[error("graph has an isolated vertex {0}")]
    IsolatedVertex(usize),
    #[error("total vertex measure is zero")]
    ZeroMeasure,
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{what}: n = {n} exceeds cap {cap}")]
    TooLarge { what: &'static str, n: usize, cap: usize },
    #[error("k = {k} must lie in [1, {n}]")]
    BadK { k: usize, n: usize },
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector must be nonconstant")]
    NonconstantRequired,
    #[error("vector length {got} does not match n = {n}")]
    LengthMismatch { got: usize, n: usize },
    #[error("eigenpair has not been verified")]
    NotVerified,
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("starting vector cannot be projected onto the feasible set")]
    NotInOmega,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
