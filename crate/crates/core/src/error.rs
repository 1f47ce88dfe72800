use thiserror::Error;

use crate::word::Word;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor mismatch: `{left}` vs `{right}`")]
    DescriptorMismatch { left: String, right: String },

    #[error("`{divisor}` is not a left factor of `{dividend}`")]
    NotAPrefix { dividend: String, divisor: String },

    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(char),

    #[error("invalid alphabet `{0}`: letters must be distinct and drawn from [a-z0-9]")]
    InvalidAlphabet(String),

    #[error("invalid descriptor `{literal}`: {reason}")]
    InvalidDescriptor { literal: String, reason: String },

    #[error("invalid literal `{literal}` for `{monoid}`: {reason}")]
    InvalidLiteral {
        literal: String,
        monoid: String,
        reason: String,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid transducer: {0}")]
    InvalidTransducer(String),

    #[error("onward push did not stabilize after {0} rounds")]
    NonConvergence(usize),

    #[error("more than {bound} classes; pairwise inequivalent words: {}", words_list(.certificate))]
    IndexExceeded { bound: usize, certificate: Vec<Word> },

    #[error("v(α_{class}) M_{class} does not divide v(α_{class}{letter}) M_{target}")]
    QuotientFailure {
        class: usize,
        letter: char,
        target: usize,
    },

    #[error("no upper bound for the correction set of class {class} at word `{word}`")]
    CorrectionUndefined { class: usize, word: Word },

    #[error("prefix monotonicity fails between `{prefix}` and `{word}` in class {class}")]
    MonotonicityViolation {
        class: usize,
        prefix: Word,
        word: Word,
    },

    #[error("constructed machine disagrees with the oracle on `{0}`")]
    OracleDisagreement(Word),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

fn words_list(words: &[Word]) -> String {
    words
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
