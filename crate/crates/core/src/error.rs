use thiserror::Error;

use crate::element_set::ElementSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Element sets are printed with 1-based
/// labels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {} is outside the ground set of size {ground_size}", element + 1)]
    OutOfRange { element: usize, ground_size: usize },

    #[error("circuit elimination fails for {first} and {second} at element {}", element + 1)]
    AxiomViolation {
        first: ElementSet,
        second: ElementSet,
        element: usize,
    },

    #[error("circuit {larger} contains circuit {smaller}")]
    ContainmentViolation {
        smaller: ElementSet,
        larger: ElementSet,
    },

    #[error("declared rank {declared} but the circuits give rank {computed}")]
    RankMismatch { declared: usize, computed: usize },

    #[error("ground sizes differ ({left} vs {right})")]
    GroundMismatch { left: usize, right: usize },

    #[error("rank {rank} exceeds ground size {ground_size}")]
    BadRank { rank: usize, ground_size: usize },

    #[error("{budget} exceeded: {needed} > {limit}")]
    TooLarge {
        budget: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("hyperplanes {first} and {second} share more than n-2 elements")]
    IntersectionTooLarge {
        first: ElementSet,
        second: ElementSet,
    },

    #[error("hyperplane {0} has fewer than n elements")]
    HyperplaneTooSmall(ElementSet),

    #[error("hyperplane {0} spans the whole ground set")]
    SpanningHyperplane(ElementSet),

    #[error("a paving matroid of rank {rank} needs at least {} elements, got {ground_size}", rank + 1)]
    GroundTooSmall { rank: usize, ground_size: usize },

    #[error("at least two hyperplanes are required, got {0}")]
    TooFewHyperplanes(usize),

    #[error("hyperplane index {0} does not exist")]
    NoSuchHyperplane(usize),

    #[error("members {}, {} and {} of the hypergraph share an element", i + 1, j + 1, r + 1)]
    TripleIntersection { i: usize, j: usize, r: usize },

    #[error("level n = {0} is below 2")]
    LevelTooSmall(usize),

    #[error("{0} is not a flat")]
    NotAFlat(ElementSet),

    #[error("matroid has rank {rank}, below the level {level}")]
    RankDeficient { rank: usize, level: usize },

    #[error("paving matroid is not tame")]
    NotTame,

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("line arrangements need at least 4 lines, got {0}")]
    TooFewLines(usize),

    #[error("unsupported range: {0}")]
    RangeUnsupported(String),

    #[error("invalid partition: {0}")]
    BadPartition(String),

    #[error("malformed input: {0}")]
    Format(String),
}
