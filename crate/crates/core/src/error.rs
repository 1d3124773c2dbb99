use crate::series::Complex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("resolvent undefined at 0")]
    ResolventAtZero,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("requires h in X_0 (h(0) = 0), got h(0) = {0}")]
    NotInX0(Complex),
    #[error("symbol must satisfy g(0)=0")]
    NonzeroConstantTerm,
    #[error("symbol must be nonconstant")]
    ConstantSymbol,
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("operator not bounded on this space")]
    Unbounded,
    #[error("insufficient coefficient data")]
    InsufficientData,
    #[error("coefficients do not decay like those of an entire function")]
    NotEntire,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("non-finite coefficient at degree {0}")]
    NonFinite(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown format `{0}`")]
    UnknownFormat(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Malformed(err.to_string())
    }
}
