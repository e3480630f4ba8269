use thiserror::Error;

use crate::algebra::{AlgebraId, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word `{word}` has length {len}, beyond the declared moment degree {max}")]
    DegreeOverflow { word: Word, len: usize, max: usize },
    #[error("no moment declared for word `{0}`")]
    MissingMoment(Word),
    #[error("word `{word}` does not belong to algebra {expected}")]
    AlgebraMismatch { word: Word, expected: AlgebraId },
    #[error("no state declared for algebra {0}")]
    UnknownAlgebra(AlgebraId),
    #[error("consecutive blocks {0} and {1} belong to the same algebra {2}")]
    NotAlternating(usize, usize, AlgebraId),
    #[error("expected a nonempty word")]
    EmptyWord,
    #[error("tensor position {pos} is out of range 1..={m}")]
    PositionOutOfRange { pos: usize, m: usize },
    #[error("copy index {copy} is out of range 1..={m}")]
    CopyOutOfRange { copy: u32, m: usize },
    #[error("level must be at least {min}, got {m}")]
    LevelTooLow { m: usize, min: usize },
    #[error("negative t-exponent requires Hopf mode")]
    NegativeExponent,
    #[error("the antipode is only defined in Hopf mode")]
    NotHopf,
    #[error("inconsistent state table: {0}")]
    InvalidState(String),
}

pub type Result<T> = std::result::Result<T, Error>;
