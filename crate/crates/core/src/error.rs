use thiserror::Error;

use crate::expr::ParseDiagnostic;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseDiagnostic),

    #[error("component_{index}: {diagnostic}")]
    ComponentParse {
        index: usize,
        diagnostic: ParseDiagnostic,
    },

    #[error("domain error in `{expr}` at s = {s}: {reason}")]
    Domain {
        expr: String,
        s: f64,
        reason: &'static str,
    },

    #[error("grid too short: {got} samples, need at least {need}")]
    GridTooShort { got: usize, need: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid tolerance `{name}` = {value}")]
    InvalidTolerance { name: &'static str, value: f64 },

    #[error("matrix is not symmetric (deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("non-finite state at s = {s} during integration")]
    NonFiniteState { s: f64 },

    #[error("rank-deficient least-squares design (eigenvalue ratio {ratio:e})")]
    RankDeficient { ratio: f64 },

    #[error("invalid curve spec: {0}")]
    InvalidSpec(String),

    #[error("vanishing speed at s = {s}")]
    VanishingSpeed { s: f64 },

    #[error("degenerate curve: curvature vanishes at s = {s}")]
    DegenerateCurvature { s: f64 },

    #[error("degenerate curve: derivatives up to order {order} are linearly dependent at s = {s}")]
    DegenerateFrame { order: usize, s: f64 },

    #[error("operation requires dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("closed-form harmonic curvatures are undefined at every node (nonzero, non-constant curvature ratios required)")]
    NonzeroCurvatureRequired,

    #[error("all parallel-transport curvatures vanish")]
    AllCurvaturesZero,

    #[error("curvature k{index} vanishes at s = {s}")]
    VanishingCurvature { index: usize, s: f64 },

    #[error("curve is not inclined")]
    NotInclined,

    #[error("unknown built-in curve `{0}`")]
    UnknownBuiltin(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
