use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty token in permutation text")]
    EmptyToken,
    #[error("invalid token `{0}` in permutation text")]
    InvalidToken(String),
    #[error("duplicate value {0} in permutation")]
    DuplicateValue(usize),
    #[error("value {value} out of range 1..={len}")]
    ValueOutOfRange { value: usize, len: usize },
    #[error("permutation of length {0} is too long (max {max})", max = crate::perm::MAX_LEN)]
    TooLong(usize),
    #[error("position {position} out of range 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("position {0} is not an essential entry")]
    NotEssential(usize),
    #[error("permutation avoids 231; essential entries are not classified")]
    Avoids231,
    #[error("entry at position {0} is the minimum of some but not all 231 occurrences")]
    MixedEssential(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("{what} = {value} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("series division: divisor valuation {divisor} exceeds dividend valuation {dividend}")]
    Valuation { dividend: usize, divisor: usize },
    #[error("series has no square root with constant term 1")]
    NoSquareRoot,
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("malformed generating function text: {0}")]
    ParseGf(String),
    #[error("pattern of length {pattern} is longer than max_len {max_len}")]
    MaxLenBelowPattern { pattern: usize, max_len: usize },
    #[error("basis must be a nonempty antichain of nonempty patterns")]
    InvalidBasis,
    #[error("expected an integer, got {0}")]
    NotIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
