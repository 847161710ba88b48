use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("relation is not admissible: {0}")]
    NonAdmissible(String),
    #[error("arrow ideal is not nilpotent below bound {0}")]
    NotNilpotent(usize),
    #[error("operation needs quiver provenance (vertex idempotents)")]
    MissingProvenance,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("incompatible blocks: {0}")]
    IncompatibleBlocks(String),
    #[error("maps do not share a source (or target)")]
    SourceMismatch,
    #[error("map is not a cofibration (E-monic)")]
    NotCofibration,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no generator family covers the module")]
    NoCover,
    #[error("cone functor violates its invariants: {0}")]
    ConeViolation(String),
    #[error("simplicial identity fails: {0}")]
    FaceIdentity(String),
    #[error("diagram does not commute: {0}")]
    NonCommuting(String),
    #[error("random generation gave up after {0} retries")]
    RetryExhausted(usize),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
