use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("exact division failed: {0}")]
    DivisionFailure(String),

    #[error("input is not holomorphic: {0}")]
    NotHolomorphic(String),

    #[error("input is not pluriharmonic: mixed term {0}")]
    NotPluriharmonic(String),

    #[error("expression has a pole at the sample point: {0}")]
    PoleAtPoint(String),

    #[error("unknown kernel or identity `{0}`")]
    UnknownKernel(String),

    #[error("Moebius parameter has irrational sqrt(1-|w|^2): {0}")]
    IrrationalMobius(String),

    #[error("symbol is not integrable on the ball: {0}")]
    NonIntegrable(String),

    #[error("product not representable as a quasi-homogeneous symbol: {0}")]
    UnsupportedProduct(String),

    #[error("composition needs columns beyond the built guard band: {0}")]
    GuardBandViolation(String),

    #[error("unsupported poles: {0}")]
    UnsupportedPoles(String),

    #[error("rational function is not proper: {0}")]
    ImproperFunction(String),

    #[error("target degree {degree} exceeds 2N+1 = {bound}")]
    DegreeTooLarge { degree: u32, bound: u32 },

    #[error("T_(z^beta) T_(zbar^alpha) is not a Toeplitz operator: |alpha|+|beta| = {degree} > {bound}")]
    NotRepresentable { degree: u32, bound: u32 },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
