use thiserror::Error;

use crate::numeral::Nat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no binary digit string with a leading 1")]
    ZeroHasNoDigits,

    #[error("the empty word is not a valid factor")]
    EmptyWord,

    #[error("invalid letter {0:?}: words are over the alphabet {{0,1}}")]
    InvalidLetter(char),

    #[error("{0} is not a factor of the Thue-Morse word")]
    NotAFactor(String),

    #[error("{word} is not a prefix of {of}")]
    NotAPrefix { word: String, of: &'static str },

    #[error("{0} is a prefix of T or T-bar; the ending-pattern lemma does not apply")]
    PrefixFactor(String),

    #[error("no occurrences of {word} below {bound}")]
    NoOccurrences { word: String, bound: Nat },

    #[error("occurrence {position} of {word} fits neither ending shape")]
    EndingViolation { word: String, position: Nat },

    #[error("{len} terms exceeds the cap of {cap}")]
    CapExceeded { len: usize, cap: usize },

    #[error("sequence is empty")]
    EmptySequence,

    #[error("sequence terms must be positive and strictly increasing")]
    NotIncreasing,

    #[error("sequence does not have uniqueness of finite sums")]
    NotUfs,

    #[error("support lemma precondition failed: {0}")]
    SupportPrecondition(&'static str),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no {k}-term witness in cell A{cell} below {bound}; try a larger bound")]
    NoWitness { cell: usize, k: usize, bound: Nat },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for failures that would contradict a proven statement rather than
    /// reflect bad input.
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::EndingViolation { .. } | Error::InvariantViolation(_))
    }
}
