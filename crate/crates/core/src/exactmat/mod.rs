//! Exact dense linear algebra over ℚ and prime fields.

pub(crate) mod arith;
mod elim;
mod field;
mod json;
mod mat;
mod subspace;

use thiserror::Error;

pub use elim::Rref;
pub use field::{is_prime, FieldSpec, PrimeModulus, Scalar};
pub use mat::Mat;
pub use subspace::{complete_basis, IndependentSet, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{value} is not an element of {field}")]
    NotInField { value: String, field: FieldSpec },
    #[error("invalid matrix entry {0:?}")]
    BadEntry(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("rows have different lengths")]
    Ragged,
    #[error("columns are linearly dependent")]
    Dependent,
}
