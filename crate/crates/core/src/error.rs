use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("empty input")]
    EmptyInput,
    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("truth assignment does not cover atom #{0}")]
    MissingAtom(usize),
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("value {0} outside [0, 1]")]
    OutOfRange(String),
    #[error("arithmetic overflow in exact rational computation")]
    Overflow,
    #[error("clause budget of {limit} exceeded")]
    ClauseBudget { limit: usize },
    #[error("{atoms} atoms exceed the enumeration cap of {cap}")]
    EnumerationCap { atoms: usize, cap: usize },
    #[error("doctrine is unsatisfiable")]
    Unsatisfiable,
    #[error("witness assignment does not satisfy the doctrine")]
    BadWitness,
    #[error("domain mismatch: expected {expected} atoms, found {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("weights must be non-negative and sum to exactly 1 (sum is {0})")]
    WeightSum(String),
    #[error("doctrine is not in Blake canonical form")]
    NotBlake,
    #[error("doctrine is not definite Horn")]
    NotDefiniteHorn,
    #[error("doctrine is not certified unquestionable")]
    NotUnquestionable,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("fixed-point iteration exceeded its bound of {0} sweeps")]
    IterationBound(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
