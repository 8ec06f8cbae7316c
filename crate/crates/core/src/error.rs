use thiserror::Error;

/// Errors produced while building grids, evaluating surfaces, checking
/// inequalities or running the counterexample search.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported ambient dimension {0} (supported: 2, 3, 4)")]
    UnsupportedDimension(usize),

    #[error("resolution {got} is below the minimum {min}")]
    ResolutionTooLow { got: usize, min: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("surface is not strictly convex at node {node}: principal radius {radius:e}")]
    NonConvex { node: usize, radius: f64 },

    #[error("surface leaves the unit ball: max |x| = {max_norm}")]
    OutOfBall { max_norm: f64 },

    #[error("degenerate parametrization at node {node}")]
    Degenerate { node: usize },

    #[error("frame sets do not match: {left} vs {right} nodes")]
    MismatchedFrames { left: usize, right: usize },

    #[error("unknown inequality `{0}`")]
    UnknownInequality(String),

    #[error("inequality `{name}` is not defined for index {index} in dimension {n}")]
    BadParity { name: String, index: usize, n: usize },

    #[error("expected dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("time samples are not uniformly spaced")]
    NonUniformGrid,

    #[error("initial simplex has no feasible point")]
    NoFeasiblePoint,

    #[error("evaluation budget exhausted; best Q = {best_q}")]
    BudgetExhausted { best_q: f64 },

    #[error("no certified scale found up to t = {t_max}")]
    NotCertified { t_max: f64 },

    #[error("certificate failed re-verification: {0}")]
    CertificateUnstable(String),

    #[error("shape description: {0}")]
    ShapeSyntax(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
