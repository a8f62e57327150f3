use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot evaluate a Laurent polynomial at q = 0")]
    ZeroEvaluation,

    #[error("rewrite budget of {budget} rule applications exceeded while normalizing `{input}`")]
    BudgetExceeded { budget: usize, input: String },

    #[error("inconsistent relation system at index pair {pair:?}: {detail}")]
    Inconsistent { pair: (usize, usize), detail: String },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown generator `{name}` at position {pos}")]
    UnknownGenerator { pos: usize, name: String },

    #[error("malformed exponent at position {pos}: {msg}")]
    MalformedExponent { pos: usize, msg: String },

    #[error("generator `{0}` is not in the alphabet of this rewrite system")]
    ForeignGenerator(String),

    #[error("rule `{lhs}` is not decreasing: replacement word `{word}` is not smaller")]
    NonDecreasingRule { lhs: String, word: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
