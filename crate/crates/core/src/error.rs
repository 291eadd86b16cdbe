use alloc::string::String;

/// Errors raised by graph construction and by the space-level computations.
///
/// Names of vertices, labels and sets are rendered into the message at the
/// point of failure, so an error can be displayed without the graph at hand.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("words must be nonempty")]
    EmptyWord,
    #[error("the periodic part of an infinite word must be nonempty")]
    EmptyCycle,
    #[error("vertex set width {found} does not match graph with {expected} vertices")]
    WidthMismatch { expected: usize, found: usize },
    #[error("family too large: more than {cap} sets")]
    FamilyTooLarge { cap: usize },
    #[error("set {0} is not a member of the family")]
    NotInFamily(String),
    #[error("duplicate set {0} in family")]
    DuplicateSet(String),
    #[error("family has no nonempty member")]
    TrivialFamily,
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("space unverified: this operation needs a space that passes every standing assumption")]
    SpaceUnverified,
    #[error("input not hereditary: {0}")]
    NotHereditary(String),
    #[error("input not hereditary and saturated: {0}")]
    NotHereditarySaturated(String),
    #[error("the top family is improper and never prime")]
    TopFamily,
    #[error("set {0} lies in the hereditary family")]
    SetInFamily(String),
    #[error("start set must be nonempty")]
    EmptyStartSet,
    #[error("word not realizable from {set}: range of {prefix} is empty")]
    WordNotRealizable { set: String, prefix: String },
    #[error("{what} exceeds budget: {actual} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("{count} tails is too many for exhaustive mode (limit {limit}); use sampled mode")]
    UseSampledMode { count: usize, limit: usize },
    #[error("index {index} out of range ({len} entries)")]
    IndexOutOfRange { index: usize, len: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
