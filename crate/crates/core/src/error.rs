use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text. `line` is 1-based, 0 when not tied to a line.
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: word has length {got}, expected {expected}")]
    ArityMismatch {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: symbol {symbol:?} out of range (alphabet size {limit})")]
    SymbolOutOfRange {
        line: usize,
        symbol: char,
        limit: usize,
    },
    #[error("conflicting outputs for word {0}")]
    DuplicateKey(String),
    #[error("function is constant")]
    ConstantFunction,
    #[error("function has an empty domain")]
    EmptyDomain,
    #[error("word {0} is not in the domain")]
    WordNotInDomain(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("exact CA1 needs a Boolean input alphabet (g = 2), got g = {0}")]
    NonBooleanAlphabet(usize),
    #[error("operation needs Boolean outputs (h = 2), got h = {0}")]
    NonBooleanOutput(usize),

    #[error("witness is empty")]
    EmptyWitness,
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("distribution family does not cover input {0}")]
    IncompleteFamily(String),
    #[error("not a probability distribution: {0}")]
    NotADistribution(String),
    #[error("invalid output partition: {0}")]
    InvalidPartition(String),

    #[error("arity must be even, got {0}")]
    OddArity(usize),
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("projective plane order {0} exceeds the supported maximum 13")]
    OrderTooLarge(usize),
    #[error("domain of {size} words exceeds the budget of {budget}")]
    DomainBudgetExceeded { size: u128, budget: u128 },
    #[error("enumeration of {size} items exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    /// A measure program came back in a state its construction rules out.
    #[error("solver failure: {0}")]
    Solver(String),
}
