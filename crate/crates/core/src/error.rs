use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid group order {0}")]
    InvalidOrder(usize),
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("table is not a Latin square: {detail}")]
    NotLatinSquare { detail: String },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("table is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("serialized order, identity or inverse disagrees with the table")]
    InconsistentTable,
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("generator images do not extend to a homomorphism")]
    NotAHomomorphism,
    #[error("map is not bijective")]
    NotBijective,
    #[error("the given elements do not generate the group")]
    DoesNotGenerate,
    #[error("invalid action: {0}")]
    InvalidAction(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: generator '{name}' declared twice")]
    DuplicateGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("{line}:{column}: unknown generator '{name}'")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("unsupported presentation: {0}")]
    Unsupported(String),
    #[error("action of '{generator}' is invalid: {source}")]
    InvalidAction {
        generator: String,
        #[source]
        source: GroupError,
    },
    #[error("complement does not act by a homomorphism: {0}")]
    ActionNotHomomorphic(#[source] GroupError),
    #[error("word uses unknown generator id {0}")]
    UnknownGeneratorId(usize),
}
