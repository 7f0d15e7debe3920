use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("derivative oracle failed: {0}")]
    OracleFailure(String),

    #[error("fiber map is singular (condition number {condition:.3e}); the complement is not transverse here")]
    SingularFiber { condition: f64 },

    #[error(
        "transversality fails at {witness} (smallest relative singular value {sigma_min:.3e})"
    )]
    TransversalityFail { witness: String, sigma_min: f64 },

    #[error("points closer than the merge tolerance: {0}")]
    MergeToleranceViolation(String),

    #[error("codimension mismatch: expected {expected}, got {got}")]
    CodimMismatch { expected: usize, got: usize },

    #[error("cluster at index {index} rejected by the membership oracle: {reason}")]
    ClusterOracleFail { index: usize, reason: String },

    #[error("multiplication spectrum is not real (imaginary part {imag:.3e})")]
    ComplexSpectrum { imag: f64 },

    #[error("eigenvalue clusters cannot be separated: {0}")]
    ClusterAmbiguity(String),

    #[error(
        "subspace is not transverse to the smaller transversal (rank {rank}, expected {expected})"
    )]
    NotTransverse { rank: usize, expected: usize },

    #[error("extrapolation did not settle: {0}")]
    ExtrapolationDivergence(String),

    #[error("injectivity probe found coinciding ideal points: {0}")]
    InjectivityWitnessFail(String),

    #[error("quadrature did not converge (estimated error {estimate:.3e})")]
    QuadratureNonConvergence { estimate: f64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line driver: 1 for bad input,
    /// 2 for numerical failure, 3 for failed certification.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. }
            | Error::InvalidInput(_)
            | Error::Json(_)
            | Error::MergeToleranceViolation(_) => 1,
            Error::ClusterOracleFail { .. } | Error::InjectivityWitnessFail(_) => 3,
            _ => 2,
        }
    }
}
