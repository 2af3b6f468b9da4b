use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph order {order} outside supported range {min}..={max}")]
    OrderOutOfRange {
        order: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid pair encoding: {0}")]
    PairEncoding(String),

    #[error("malformed graph6 string: {0}")]
    Graph6(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("flag type mismatch: {0}")]
    TypeMismatch(String),

    #[error("zero polynomial has no roots to isolate")]
    ZeroPolynomial,

    #[error("malformed number {0:?}")]
    Number(String),

    #[error("certificate field `{field}`: {message}")]
    Schema { field: String, message: String },

    #[error("negative multiplier in `{0}`")]
    NegativeMultiplier(String),

    #[error("denominator {0} changes sign or vanishes on the ray")]
    DenominatorSign(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{0} is not a rational constant")]
    NotConstant(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
