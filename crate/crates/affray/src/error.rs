//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero element not allowed here")]
    ZeroElement,
    #[error("element is a unit; no disjoint shift of its ideal exists")]
    UnitElement,
    #[error("ring is a field; operation is vacuous there")]
    FieldRing,
    #[error("unsupported ring for this operation: {0}")]
    UnsupportedRing(String),
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: String, found: String },
    #[error("empty map family")]
    EmptyFamily,
    #[error("no witness found: {0}")]
    WitnessNotFound(String),
    #[error("input size {size} exceeds limit {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("block count {got} outside supported range 1..={max}")]
    BlockLimit { got: u32, max: u32 },
    #[error("pattern not supported by this operation: {0}")]
    UnsupportedPattern(String),
    #[error("shift family does not cover the probe window multiplicatively; {uncovered} uncovered, sample {sample:?}")]
    NotMultSyndeticOnWindow { uncovered: usize, sample: Vec<String> },
    #[error("modulus {got} outside supported range {range}")]
    ModulusRange { got: u64, range: String },
    #[error("search budget exceeded after {0} nodes")]
    BudgetExceeded(u64),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown construction: {0}")]
    UnknownConstruction(String),
    #[error("cannot parse {text:?} as an element of {ring}: {msg}")]
    BadElement {
        text: String,
        ring: String,
        msg: String,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("internal invariant violation: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 config/user error, 3 budget, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded(_) => 3,
            Error::Invariant(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
