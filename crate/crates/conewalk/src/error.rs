use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("operation requires an integral gram matrix")]
    NotIntegralGram,
    #[error("zero vector not allowed")]
    ZeroVector,
    #[error("vector is isotropic (zero self-pairing)")]
    Isotropic,
    #[error("not a root: self-pairing must be negative, got {0}")]
    NotARoot(String),
    #[error("matrix is not an isometry of the lattice")]
    NotIsometry,
    #[error("expected signature {expected}, lattice has {got}")]
    WrongSignature { expected: String, got: String },
    #[error("vector is not in the positive cone component: {0}")]
    NotPositive(String),
    #[error("rank {0} exceeds the supported bound {1} for this operation")]
    RankBound(usize, usize),
    #[error("cone has no generator description")]
    NoGenerators,
    #[error("cone is not salient")]
    NotSalient,
    #[error("cone generator is not strictly positive: {0}")]
    NonPositiveGenerator(String),
    #[error("support gram matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("root pair has negative pairing {0}; distinct roots must pair >= 0")]
    NegativeRootPairing(String),
    #[error("bound must be positive: {0}")]
    NonPositiveBound(String),
    #[error("base point is fixed by a nontrivial group element")]
    FixedBasePoint,
    #[error("no interior point found for the chamber")]
    NoInteriorPoint,
    #[error("chamber walk did not terminate")]
    WalkStuck,
    #[error("isometry does not permute the root set up to sign")]
    RootSetNotPreserved,
    #[error("search bound {0} exhausted")]
    SearchExhausted(u64),
    #[error("rays are rational; no infinite-order ray-preserving isometry is sought")]
    RationalRays,
    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
