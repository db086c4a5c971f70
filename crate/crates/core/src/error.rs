use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero in the golden field")]
    DivisionByZero,
    #[error("unknown diagram name `{0}`")]
    UnknownDiagram(String),
    #[error("malformed diagram spec: {0}")]
    MalformedDiagram(String),
    #[error("diagram graph is not bipartite")]
    NotBipartite,
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("diagram is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("zero root vector cannot define a reflection")]
    ZeroRoot,
    #[error("operation requires a crystallographic diagram")]
    NonCrystallographic,
    #[error("expected an E8 root system, got {0}")]
    WrongDiagram(String),
    #[error("singular matrix")]
    Singular,
    #[error("iteration did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("orbit consistency: {0}")]
    OrbitConsistency(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
