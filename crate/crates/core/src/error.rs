use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),

    /// The generators of an order close up into a cycle; the witness lists the
    /// cycle's elements, starting and ending at the same element.
    #[error("order contains a cycle: {}", .0.join(" < "))]
    Cycle(Vec<String>),

    #[error("operation requires a nonempty poset")]
    EmptyPoset,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// Two distinct blocks are below each other in the closed quotient order.
    #[error("equivalence is not a compatible congruence: blocks `{0}` and `{1}` collapse")]
    NotCompatible(String, String),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("map is not a circuit morphism: {0}")]
    NotAMorphism(String),

    #[error("underlying order is not a lattice")]
    NotALattice,

    #[error("connectivity of the source is not contained in the target's: ({0}, {1}) is missing")]
    ConnectivityNotContained(String, String),

    #[error("connectivity of the circuit does not contain the relation: ({0}, {1}) is missing")]
    ConnectivityNotContaining(String, String),

    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),

    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("in declaration `{decl}`: {message}")]
    Semantic { decl: String, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
