//! Finite first-order structures over relational signatures with constants.
//!
//! This module holds the formula language (AST, printer, recursive-descent
//! parser), Tarskian evaluation over finite structures, induced substructures
//! and the Ehrenfeucht–Fraïssé game used to approximate equality of types.

mod ef;
mod eval;
mod formula;
mod parser;
mod signature;
mod structure;

pub use formula::{Formula, Term};
pub use parser::{parse_formula, parse_formula_file};
pub use signature::{is_identifier, Signature};
pub use structure::{Assignment, FinStructure};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("relation `{name}` has arity {expected}, used with {found} arguments")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("free variable `{0}` is not assigned")]
    UnboundVariable(String),
    #[error("`{0}` is not an element of the universe")]
    UnknownElement(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("tuples have different lengths ({0} vs {1})")]
    TupleLengthMismatch(usize, usize),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<FoError>,
    },
}
