use thiserror::Error;

use crate::vector::IntVector;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("missing table entry for pattern {pattern:?} in state {state}")]
    MissingEntry { pattern: Vec<u32>, state: u32 },
    #[error("duplicate table entry for pattern {pattern:?} in state {state}")]
    DuplicateEntry { pattern: Vec<u32>, state: u32 },
    #[error("symbol {symbol} out of range for pattern {pattern:?} in state {state}")]
    SymbolOutOfRange {
        pattern: Vec<u32>,
        state: u32,
        symbol: u32,
    },
    #[error("state {value} out of range for pattern {pattern:?} in state {state}")]
    StateOutOfRange {
        pattern: Vec<u32>,
        state: u32,
        value: u32,
    },
    #[error("malformed rule: {0}")]
    Malformed(String),
    #[error("machines have different dimensions")]
    DimsMismatch,
    #[error("machine is not reversible{}", witness_suffix(.witness))]
    NotReversible { witness: Option<String> },
    #[error("map is not a bijection")]
    NotBijective,
    #[error("machine is not classical")]
    NotClassical,
    #[error("machine is not a reversible finite-state automaton")]
    NotRFA,
    #[error("operation requires a one-dimensional machine")]
    NotOneDimensional,
    #[error("machine is not oblivious")]
    NotOblivious,
    #[error("permutation is not a controlled 3-cycle")]
    NotAControlled3Cycle,
    #[error("odd permutation needs an ancilla when the alphabet size is even")]
    ParityObstruction,
    #[error("period {m} too small for a machine of radius {radius}")]
    PeriodTooSmall { m: usize, radius: i64 },
    #[error("machine radius {radius} exceeds the bound {bound}")]
    RadiusBound { radius: i64, bound: i64 },
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("vector {0} has the wrong dimension")]
    BadVector(IntVector),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid document: {0}")]
    Validation(Box<Error>),
}

fn witness_suffix(w: &Option<String>) -> String {
    match w {
        Some(s) => format!(": {s}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
