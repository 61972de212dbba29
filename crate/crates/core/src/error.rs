use thiserror::Error;

use crate::weights::Family;

/// Errors reported by the library. Every variant names the violated
/// precondition so CLI diagnostics can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("family mismatch: {left} vs {right}")]
    FamilyMismatch { left: Family, right: Family },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },

    #[error("rank {given} too small for {weight}: minimal admissible rank is {min}")]
    RankTooSmall {
        weight: String,
        given: u32,
        min: u32,
    },

    #[error("inadmissible rank: {0}")]
    InadmissibleRank(String),

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("degree bound exceeded: {degree} > {bound}")]
    BoundExceeded { degree: u32, bound: u32 },

    #[error("{weight} is not a composition factor of T^{{{p},{q}}}")]
    NotAFactor { weight: String, p: u32, q: u32 },

    #[error("profile is not semisimple: {0}")]
    NotSemisimple(String),

    #[error("direct system descriptor undefined at rank {0}")]
    DescriptorUndefined(u32),

    #[error("empty probe window")]
    EmptyWindow,

    #[error("probe disagreement across stability window: {0}")]
    UnstableProbe(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
