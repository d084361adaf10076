use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("priority relation is cyclic: {}", .cycle.join(" > "))]
    CyclicPriority { cycle: Vec<String> },

    #[error("priority {higher} > {lower} relates facts that share no conflict")]
    PriorityOutsideConflict { higher: String, lower: String },

    #[error("duplicate assertion `{0}`")]
    DuplicateAssertion(String),

    #[error("unknown fact `{0}`")]
    UnknownFact(String),

    #[error("candidate set is not a subset of the ABox: `{0}` is unknown")]
    NotASubset(String),

    #[error("the input is inconsistent")]
    InconsistentInput,

    #[error("{what} has {size} elements, above the limit of {limit} (set ORBITS_MAX_SIZE or force to override)")]
    TooLarge { what: &'static str, size: usize, limit: usize },

    #[error("not a preorder: {0}")]
    NotAPreorder(String),

    #[error("invalid conflict hypergraph: {0}")]
    InvalidConflicts(String),

    #[error("invalid TBox: {0}")]
    InvalidTBox(String),

    #[error("invalid argumentation framework: {0}")]
    InvalidFramework(String),

    #[error("program is not stratified: negative cycle through {}", .cycle.join(", "))]
    NotStratified { cycle: Vec<String> },

    #[error("unsafe rule `{0}`: a head variable does not occur in the positive body")]
    UnsafeRule(String),

    #[error("grounding exceeded the budget of {0} ground atoms")]
    GroundingBudget(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown {what} `{value}`")]
    UnknownName { what: &'static str, value: String },

    #[error("line {line}: undeclared name `{name}`")]
    Undeclared { line: usize, name: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
