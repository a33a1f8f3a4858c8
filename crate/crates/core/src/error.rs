use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report, across parsing, reasoning, model
/// construction, abduction and the session service.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("fixpoint variable {0} is not bound by an enclosing Mu")]
    UnboundFixpointVariable(String),
    #[error("{0} is only allowed in extended (hypothesis) syntax")]
    ExtendedSyntaxInCoreContext(String),

    #[error("seed concept {0} is unsatisfiable")]
    SeedInconsistent(String),
    #[error("unknown individual {0}")]
    UnknownIndividual(String),
    #[error("tableau state is not saturated")]
    NotSaturated,
    #[error("the query's left-hand side is unsatisfiable in the ontology")]
    InconsistentInput,
    #[error("computation cancelled")]
    Cancelled,
    #[error("step budget exceeded after {steps} rule applications ({millis} ms)")]
    StepBudgetExceeded { steps: usize, millis: u128 },
    #[error("clash on individual {0}")]
    TableauClash(String),

    #[error("the subsumption is entailed")]
    IsEntailed,
    #[error("the TBox uses owl:Nothing or disjointness")]
    BottomInTBox,
    #[error("the ontology already entails {0}")]
    AlreadyEntailed(String),
    #[error("the permitted vocabulary is empty")]
    EmptySignature,
    #[error("count must be positive")]
    NonPositiveCount,

    #[error("no missing entailment specified")]
    NoQuery,
    #[error("the missing entailment list is empty")]
    EmptyQuery,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("a disjointness needs at least two class names")]
    TooFewNames,
    #[error("unknown name {0}")]
    UnknownName(String),
    #[error("the staged disjointnesses make the query's left-hand side unsatisfiable")]
    InconsistentWithDisjointness,
    #[error("nothing to apply")]
    NothingToApply,
    #[error("unknown method {0}")]
    UnknownMethod(String),
    #[error("unknown session {0}")]
    UnknownSession(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, col: usize, expected: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            col,
            expected: expected.into(),
        }
    }

    /// Stable machine-readable code, shared by the HTTP and C interfaces.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax_error",
            Error::UnboundFixpointVariable(_) => "unbound_fixpoint_variable",
            Error::ExtendedSyntaxInCoreContext(_) => "extended_syntax_in_core_context",
            Error::SeedInconsistent(_) => "seed_inconsistent",
            Error::UnknownIndividual(_) => "unknown_individual",
            Error::NotSaturated => "not_saturated",
            Error::InconsistentInput => "inconsistent_input",
            Error::Cancelled => "cancelled",
            Error::StepBudgetExceeded { .. } => "step_budget_exceeded",
            Error::TableauClash(_) => "tableau_clash",
            Error::IsEntailed => "is_entailed",
            Error::BottomInTBox => "bottom_in_tbox",
            Error::AlreadyEntailed(_) => "already_entailed",
            Error::EmptySignature => "empty_signature",
            Error::NonPositiveCount => "non_positive_count",
            Error::NoQuery => "no_query",
            Error::EmptyQuery => "empty_query",
            Error::Unsupported(_) => "unsupported",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::TooFewNames => "too_few_names",
            Error::UnknownName(_) => "unknown_name",
            Error::InconsistentWithDisjointness => "inconsistent_with_disjointness",
            Error::NothingToApply => "nothing_to_apply",
            Error::UnknownMethod(_) => "unknown_method",
            Error::UnknownSession(_) => "unknown_session",
            Error::InvalidRequest(_) => "invalid_request",
            Error::Io(_) => "io_error",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
