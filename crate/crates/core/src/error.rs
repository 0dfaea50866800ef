use thiserror::Error;

use crate::metric::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("points {first} and {second} have identical coordinates")]
    DuplicatePoint { first: usize, second: usize },

    #[error("point {point} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        point: usize,
        expected: usize,
        found: usize,
    },

    #[error("coordinate {value} exceeds the supported magnitude 2^53")]
    CoordinateOverflow { value: String },

    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("matrix violates metric axioms: {0}")]
    InvalidMetric(ValidationReport),

    #[error("operation requires a euclidean point set")]
    NotEuclidean,

    #[error("operation requires dimension {expected}, got {found}")]
    UnsupportedDimension { expected: usize, found: usize },

    #[error("all points are collinear")]
    Collinear,

    #[error("need at least {needed} points, got {found}")]
    TooFewPoints { needed: usize, found: usize },

    #[error("invalid strategy profile: {0}")]
    InvalidProfile(String),

    #[error("network is not navigable")]
    NotNavigable,

    #[error("agent {0} is not greedy connected")]
    NotGreedyConnected(usize),

    #[error("{n} points exceed the exhaustive search cap of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable snake-case name of the variant, for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::DuplicatePoint { .. } => "duplicate_point",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::CoordinateOverflow { .. } => "coordinate_overflow",
            Error::NotSquare { .. } => "not_square",
            Error::InvalidMetric(_) => "invalid_metric",
            Error::NotEuclidean => "not_euclidean",
            Error::UnsupportedDimension { .. } => "unsupported_dimension",
            Error::Collinear => "collinear",
            Error::TooFewPoints { .. } => "too_few_points",
            Error::InvalidProfile(_) => "invalid_profile",
            Error::NotNavigable => "not_navigable",
            Error::NotGreedyConnected(_) => "not_greedy_connected",
            Error::TooLarge { .. } => "too_large",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}
