use thiserror::Error;

/// Errors raised by the solvers and the batch runner.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid initial data: {0}")]
    InvalidInitialData(String),

    #[error("state already quenched: u = {value} at node {node}")]
    AlreadyQuenched { node: usize, value: f64 },

    #[error("mesh is not strictly increasing at node {0}")]
    MeshTangled(usize),

    #[error("zero cell width at node {0}")]
    ZeroCellWidth(usize),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("degenerate branch point: M - m = {0:e}")]
    Degenerate(f64),

    #[error("no branch point for M = {0}")]
    NoBranchPoint(f64),

    #[error("root bracketing failed: {0}")]
    Bracketing(String),

    #[error("inconsistent branch point: {0}")]
    InconsistentPoint(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("step failure at t = {t}: {reason}")]
    StepFailure { t: f64, reason: String },

    #[error("trajectory did not quench (status {0})")]
    NotQuenched(String),

    #[error("insufficient points: need {need}, have {have}")]
    InsufficientPoints { need: usize, have: usize },

    #[error("empty fit window: {0}")]
    EmptyWindow(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
