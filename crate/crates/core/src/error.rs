use thiserror::Error;

use crate::embed::Embedding;
use crate::family::SubsetMask;

/// Errors surfaced by the library. Constructors validate eagerly, so a value
/// of a domain type that exists is always internally consistent.
#[derive(Debug, Error)]
pub enum Error {
    #[error("poset must have at least one element")]
    EmptyPoset,

    #[error("element index {index} out of range for {size} elements")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("cover relation contains a cycle through elements {0:?}")]
    CycleDetected(Vec<usize>),

    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("unknown catalog poset `{0}`")]
    UnknownPoset(String),

    #[error("catalog poset `{name}` does not accept arity {k}")]
    InvalidArity { name: String, k: u32 },

    #[error("catalog poset `{0}` requires an arity (use `{0}-k` or --k)")]
    MissingArity(String),

    #[error("expected {expected} labels, got {got}")]
    LabelCountMismatch { expected: usize, got: usize },

    #[error("ground set size {n} out of range (1 ..= {max})", max = crate::family::MAX_GROUND)]
    GroundSetOutOfRange { n: u32 },

    #[error("element {element} out of range for ground set [{n}]")]
    ElementOutOfRange { element: u32, n: u32 },

    #[error("malformed set list: {0}")]
    MalformedSetList(String),

    #[error("{what} size {actual} exceeds the supported limit {limit}")]
    InstanceTooLarge {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("family already contains a copy of the target: {0:?}")]
    NotFree(Embedding),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("biclique sides must be disjoint and non-empty")]
    DegenerateBiclique,

    #[error("biclique cover does not match the graph: {0}")]
    InvalidCover(String),

    #[error("pair ({x}, {y}) is separated by {by:?}")]
    PairSeparated { x: u32, y: u32, by: SubsetMask },

    #[error("invalid construction parameters: {0}")]
    InvalidConstruction(String),

    #[error("construction `{0}` failed its saturation check")]
    VerificationFailed(String),
}
