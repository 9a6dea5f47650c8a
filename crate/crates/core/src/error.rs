use alloc::string::String;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A precondition on a public operation was violated.
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    /// Root certification did not succeed at the requested precision.
    #[error("precision too low: {0} bits do not certify the root layout")]
    PrecisionTooLow(u32),
    /// Two values from different field contexts were combined.
    #[error("context mismatch: operands belong to different fields")]
    ContextMismatch,
    /// An operation required integer coordinates (an element of Z[beta]).
    #[error("not integral: element has non-integer coordinates")]
    NotIntegral,
    /// A point lies outside the domain of the requested transformation.
    #[error("domain error: {0}")]
    Domain(&'static str),
    /// An iteration cap was exceeded; signals a bug or invalid input.
    #[error("iteration budget exceeded after {0} steps")]
    Budget(u64),
    /// The interval partition failed to close under the transformation.
    #[error("automaton construction failed: {0}")]
    Construction(String),
    /// A structural fact guaranteed for d-Bonacci numbers was violated.
    #[error("structure error: {0}")]
    Structure(String),
    /// A digit word used a symbol outside the automaton alphabet.
    #[error("alphabet mismatch: digit {0} not in alphabet")]
    AlphabetMismatch(i8),
    /// Division by the zero element of the field.
    #[error("division by zero element")]
    DivisionByZero,
    /// Textual input did not match the element grammar.
    #[error("parse error: {0}")]
    Parse(String),
}
