use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("block length must be at least 1, found {value} at byte {position}")]
    BlockLength { position: usize, value: i64 },

    #[error("empty sequence")]
    Empty,

    #[error("entry {value} at position {position} is below 2")]
    EntryTooSmall { position: usize, value: i64 },

    #[error("singular block starting at position {position} overruns the available 2s")]
    Inconsistent { position: usize },

    #[error(
        "b2 = {b2} exceeds the configured bound {max} (raise it with --max-b2 or KATO_MAX_B2)"
    )]
    TooLarge { b2: usize, max: usize },

    #[error(
        "node {node} carries a self-loop (nodal curve); only the double-cover route supports it"
    )]
    SelfLoopUnsupported { node: usize },

    #[error("adjunction system is singular: {reason}")]
    SingularSystem { reason: String },

    #[error("sequence {sequence} is not simple intermediate ({class})")]
    NotSimple { sequence: String, class: String },

    #[error("malformed dual graph: {0}")]
    MalformedGraph(String),

    #[error("multilinear form needs at least one argument")]
    EmptyArguments,

    #[error("expected {expected} germ parameters (a_0..a_(l-1), a_(l+K)), got {found}")]
    ParameterCount { expected: usize, found: usize },

    #[error("exponent {0} does not fit a machine integer")]
    ExponentOverflow(String),

    #[error("index is {index}, not 1 (u = {u} is not an integer)")]
    IndexNotOne { index: String, u: String },

    #[error("a0 must be nonzero")]
    ZeroParameter,

    #[error("epsilon = 1 requires index 1, but the index is {index}")]
    EpsilonInconsistent { index: String },

    #[error("epsilon must be 0 or 1, got {0}")]
    InvalidEpsilon(u8),
}
