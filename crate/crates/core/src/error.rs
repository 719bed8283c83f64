use thiserror::Error;

/// Errors raised when an argument falls outside the domain of a function or
/// metric.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the admissible range {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("dimension {0} is not supported by this operation")]
    UnsupportedDimension(usize),

    #[error("points have different dimensions ({0} and {1})")]
    DimensionMismatch(usize, usize),

    #[error("point {0:?} does not lie in the domain")]
    OutsideDomain(Vec<f64>),

    /// `x = -y`, so the Euclidean midpoint of the pair is the origin.
    #[error("x = -y: the Euclidean midpoint is the origin")]
    DegenerateMidpoint,

    #[error("the two points coincide")]
    CoincidentPoints,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, range: &'static str) -> Error {
    Error::Domain { name, value, range }
}
