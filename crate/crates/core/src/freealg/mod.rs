//! Noncommutative polynomials, presentations and their evaluation at
//! matrix tuples.

mod builders;
mod group;
mod lie;
mod parse;
mod poly;
mod presentation;
mod tuple;

use thiserror::Error;

use crate::exactmat::FieldSpec;

pub use builders::{
    direct_product_presentation, free_product_presentation, group_algebra_presentation,
    matrix_algebra_presentation, unit_index, unit_name, GroupWord,
};
pub use group::GroupPresentation;
pub use lie::{LiePoly, LieTerm};
pub use parse::{parse_group_presentation, parse_presentation};
pub use poly::{NcPoly, Word};
pub use presentation::{Flavor, Presentation, Relators};
pub use tuple::MatTuple;

/// Arity, field or size mismatch between a polynomial or presentation and a
/// matrix tuple.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("expected {expected} matrices, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("expected matrices over {expected}, got {got}")]
    Field { expected: FieldSpec, got: FieldSpec },
    #[error("expected {expected}x{expected} matrices, got {}x{}", got.0, got.1)]
    Size { expected: usize, got: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("generator {0:?} declared twice")]
    DuplicateGenerator(String),
    #[error("relator {relator} uses an undeclared generator")]
    UndeclaredGenerator { relator: usize },
    #[error("relator {relator} lives over a different field")]
    FieldMismatch { relator: usize },
    #[error("presentations over different fields: {0} and {1}")]
    FieldsDiffer(FieldSpec, FieldSpec),
    #[error("group word uses unknown generator index {0}")]
    UnknownGroupGenerator(usize),
    #[error("matrix size must be at least 1")]
    ZeroMatrixSize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("undeclared generator {0:?}")]
    UndeclaredGenerator(String),
    #[error("generator {0:?} declared twice")]
    DuplicateGenerator(String),
    #[error("Lie relators cannot have a constant term")]
    LieConstant,
    #[error("Lie relators cannot multiply generators; use brackets")]
    LieProduct,
    #[error("negative powers are only allowed in group relators")]
    NegativePower,
    #[error("group relators must be products of generators and their powers")]
    GroupWord,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an element of the field")]
    NotInField(String),
    #[error("expected a `group` presentation")]
    NotGroup,
    #[error("{0}")]
    Invalid(PresentationError),
}

/// A DSL error with the 1-based position where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line, column, kind }
    }
}
