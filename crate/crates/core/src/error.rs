use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("multiset must contain at least one element")]
    EmptyMultiSet,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("element does not belong to this backend")]
    BackendMismatch,
    #[error("automorphism was not verified for this backend")]
    UnverifiedAutomorphism,
    #[error("`{name}` is not an automorphism: {defect}")]
    NotAnAutomorphism { name: String, defect: AutomorphismDefect },
    #[error("automorphism `{name}` needs inverse images on this backend")]
    InverseMissing { name: String },
    #[error("automorphism closure exceeded {bound} elements")]
    ClosureBudgetExceeded { bound: usize },
    #[error("exploration exceeded the node budget of {budget}")]
    BudgetExceeded { budget: usize },
    #[error("operation needs a finite backend")]
    InfiniteBackendUnsupported,
    #[error("element not reached within radius {cap}")]
    NotReachedWithinCap { cap: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("need at least {needed} rows, got {rows}")]
    InsufficientData { rows: usize, needed: usize },
    #[error("invalid backend: {0}")]
    InvalidBackend(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Why a candidate map failed verification.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomorphismDefect {
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("relator {index} does not map to the identity")]
    RelatorNotKilled { index: usize },
    #[error("inverse images do not undo the images on generator {generator}")]
    InverseMismatch { generator: usize },
    #[error("the induced map is not bijective")]
    NotBijective,
}
