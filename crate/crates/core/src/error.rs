use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension n = {0} is below 2")]
    DimensionTooSmall(u32),

    #[error("length mismatch: {reps} representations but {mults} multiplicities")]
    LengthMismatch { reps: usize, mults: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("radius gamma = {0} is outside (0, pi)")]
    RadiusOutOfRange(f64),

    #[error("ODE step size underflow for mode {mode} at lambda = {lambda}, t = {t}")]
    StepUnderflow { mode: u32, lambda: f64, t: f64 },

    #[error("non-finite ODE state for mode {mode} at lambda = {lambda}, t = {t}")]
    NonFinite { mode: u32, lambda: f64, t: f64 },

    #[error(
        "unresolved bracket for mode {mode}: {roots} roots in ({lo}, {hi}]; refine the lambda grid"
    )]
    UnresolvedBracket {
        mode: u32,
        lo: f64,
        hi: f64,
        roots: u32,
    },

    #[error("mode scan bound {m_scan_max} too small: mode {mode} still has an eigenvalue {lambda} <= lambda_max")]
    InsufficientModeScan {
        m_scan_max: u32,
        mode: u32,
        lambda: f64,
    },

    #[error("eigenvalue clusters near {a} and {b} are too close to separate")]
    ClusterAmbiguity { a: f64, b: f64 },

    #[error("hemisphere cross-check failed: {0}")]
    HemisphereMismatch(String),

    #[error("eigenvalue index {m0} out of range 1..={len}")]
    IndexOutOfRange { m0: usize, len: usize },

    #[error("signature violation: {0}")]
    Signature(String),

    #[error("candidate {0} is not in the signed candidate set")]
    NotACandidate(String),

    #[error("closed form not applicable: {0}")]
    ClosedFormNotApplicable(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("checker refuted a proved statement; evidence: {0}")]
    Refutation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
