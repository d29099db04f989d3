use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size {size} is not a power of two >= {min}")]
    Sizing { size: usize, min: usize },

    #[error("grid of size {grid} cannot hold a spectrum of size {spectrum} without aliasing")]
    Aliasing { spectrum: usize, grid: usize },

    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },

    #[error("non-finite value at position {0}")]
    NonFinite(usize),

    #[error("index {index} outside the coefficient range [{lo}, {hi})")]
    IndexRange { index: i64, lo: i64, hi: i64 },

    #[error("seminorm order {0} exceeds the supported maximum of 64")]
    SeminormOrder(u32),

    #[error("classification needs at least {needed} coefficients, spectrum has {got}")]
    TooFewCoefficients { needed: usize, got: usize },

    #[error("point {z} lies outside the evaluation domain ({reason})")]
    Domain { z: Complex64, reason: &'static str },

    #[error("antiderivative needs index {needed} but the grid of size {size} stops at {max}")]
    RangeGrowth { needed: i64, max: i64, size: usize },

    #[error("point {z} is {distance:.3e} from the curve; minimum admissible distance is {required:.3e}")]
    Proximity {
        z: Complex64,
        distance: f64,
        required: f64,
    },

    #[error("inconsistent input: defect {defect:.3e} exceeds {tolerance:.1e}")]
    Inconsistency { defect: f64, tolerance: f64 },

    #[error("univalence margin violated: sum k|c_k| = {sum:.6} is not below |c_1| = {lead:.6}")]
    Univalence { sum: f64, lead: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("pullback spectrum not resolved: last-octave sup {tail:.3e} exceeds {limit:.1e}")]
    Resolution { tail: f64, limit: f64 },

    #[error("topology error: {0}")]
    Topology(String),

    #[error("domain is not star-like about its center (margin {margin:.3e})")]
    NotStarlike { margin: f64 },

    #[error("invalid curve: {0}")]
    Curve(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Json(_) | Error::Format(_) | Error::Argument(_) => 2,
            Error::Inconsistency { .. } | Error::Resolution { .. } | Error::Topology(_) => 4,
            _ => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Sizing { .. } => "sizing",
            Error::Aliasing { .. } => "aliasing",
            Error::Length { .. } => "length",
            Error::NonFinite(_) => "non-finite",
            Error::IndexRange { .. } => "index-range",
            Error::SeminormOrder(_) => "seminorm-order",
            Error::TooFewCoefficients { .. } => "too-few-coefficients",
            Error::Domain { .. } => "domain",
            Error::RangeGrowth { .. } => "range-growth",
            Error::Proximity { .. } => "proximity",
            Error::Inconsistency { .. } => "inconsistency",
            Error::Univalence { .. } => "univalence",
            Error::Degenerate(_) => "degenerate",
            Error::Resolution { .. } => "resolution",
            Error::Topology(_) => "topology",
            Error::NotStarlike { .. } => "not-starlike",
            Error::Curve(_) => "curve",
            Error::Argument(_) => "argument",
            Error::Format(_) => "format",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
