//! Exact computations with the simple vectorial Lie superalgebras
//! vect(0|n), svect(0|n), ~svect(0|n), po(0|n), h(0|n), h′(0|n) and their
//! maximal graded solvable subalgebras.
//!
//! Arithmetic is exact: over ℚ with an `i64` fast path, or over F_p for a
//! small odd prime. Structure constants of every algebra are integers in
//! the chosen bases, so a built algebra can be specialised to any field.

pub mod algebra;
pub mod catalog;
pub mod grassmann;
pub mod linalg;
pub mod liestruct;
pub mod parse;
pub mod prolong;
pub mod scalar;
pub mod suites;
pub mod tables;
pub mod vectorfields;
pub mod verify;

pub use algebra::{build_algebra, AlgebraDesc, Element, Series};
pub use grassmann::{HSplit, Monomial, SuperPoly, VarNames};
pub use liestruct::{GradedSubalgebra, Lie};
pub use scalar::{Field, FieldKind, Fp, Rational};
pub use vectorfields::VectorField;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("unsupported field: {0}")]
    Field(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("incompatible operands: {0}")]
    Mismatch(String),
    #[error("variable index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("element is not in {0}")]
    NotInAlgebra(String),
    #[error("not closed under the bracket: {0}")]
    NotClosed(String),
    #[error("not contained: {0}")]
    NotContained(String),
    #[error("inadmissible Witt shape: {0}")]
    Shape(String),
    #[error("unknown case: {0}")]
    UnknownCase(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
