//! Stabilizers: turn approximate solutions of a presentation into exact
//! solutions nearby, and compose stabilizers along algebraic constructions.
//!
//! Every entry point verifies its output a posteriori. A returned
//! [`StabilizeOutcome`] is always verified; failures come back as
//! [`StabilizeError::NotStabilized`] carrying the unverified attempt.

mod direct;
mod findim;
mod free;
mod group;
mod matrix;
mod rounding;
mod transport;

use serde::Serialize;
use thiserror::Error;

use crate::approx::hat_distances;
use crate::exactmat::MatError;
use crate::freealg::{EvalError, MatTuple, Presentation, PresentationError};
use crate::rational::{format_rational, from_usize, Rational};

pub use direct::stabilize_direct_product;
pub use findim::{stabilize_findim, FindimSolver, DEFAULT_DEGREE_CAP};
pub use free::{compute_bezout, stabilize_free_product, FreeProductData, FreeProductSolver};
pub use group::{stabilize_group_algebra, stabilize_group_from_algebra, GroupSolver};
pub use matrix::{demote_matrix_algebra, matrix_units_presentation, stabilize_matrix_algebra, standard_units};
pub use rounding::{
    round_idempotent, round_invertible, round_matrix_units, split_idempotent_block, stabilize_zero_product,
    IdempotentSplit, InvertibleRounding, UnitFrame, UnitRounding,
};
pub use transport::transport_solution;

/// Structured log of one stabilizer run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub method: String,
    pub input_size: usize,
    pub output_size: usize,
    /// `εn`, the strict bound every distance must stay below.
    pub threshold: String,
    pub exact: bool,
    /// Dimension of the common kernel of the relators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_dim: Option<usize>,
    /// Dimension `k` of the invariant subspace that is kept.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kept_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
    /// Number of words of length at most the degree bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word_count: Option<usize>,
    /// Upper bound on `n − k` from the word count and the kernel codimension.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codim_bound: Option<usize>,
    /// Copies of the reference solution appended.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub padding_blocks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Diagnostics>,
}

impl Diagnostics {
    pub fn new(method: &str, input_size: usize) -> Diagnostics {
        Diagnostics { method: method.to_string(), input_size, ..Diagnostics::default() }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

/// An exact solution close to the input, with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizeOutcome {
    pub solution: MatTuple,
    /// Hat distance from each input matrix to its replacement.
    pub distances: Vec<usize>,
    pub verified: bool,
    pub diagnostics: Diagnostics,
}

impl StabilizeOutcome {
    pub fn max_distance(&self) -> usize {
        self.distances.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizeError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no verified solution: {}", .0.diagnostics.notes.join("; "))]
    NotStabilized(Box<StabilizeOutcome>),
    #[error("{component} solver failed: {source}")]
    Component {
        component: &'static str,
        #[source]
        source: Box<StabilizeError>,
    },
    #[error("solver broke its contract: {0}")]
    SolverContract(String),
    #[error("dimension arithmetic: {0}")]
    DimensionArithmetic(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl StabilizeError {
    fn component(component: &'static str) -> impl FnOnce(StabilizeError) -> StabilizeError {
        move |e| StabilizeError::Component { component, source: Box::new(e) }
    }

    /// Diagnostics of the failed attempt, when there is one.
    pub fn diagnostics(&self) -> Option<&Diagnostics> {
        match self {
            StabilizeError::NotStabilized(o) => Some(&o.diagnostics),
            StabilizeError::Component { source, .. } => source.diagnostics(),
            _ => None,
        }
    }
}

/// A stabilizer for some presentation: given an approximate solution and
/// `ε`, returns a verified exact solution or an error.
pub trait ExactSolver: Send + Sync {
    fn solve(&self, p: &Presentation, a: &MatTuple, eps: &Rational) -> Result<StabilizeOutcome, StabilizeError>;
}

impl<F> ExactSolver for F
where
    F: Fn(&Presentation, &MatTuple, &Rational) -> Result<StabilizeOutcome, StabilizeError> + Send + Sync,
{
    fn solve(&self, p: &Presentation, a: &MatTuple, eps: &Rational) -> Result<StabilizeOutcome, StabilizeError> {
        self(p, a, eps)
    }
}

/// Runs a component solver and enforces its contract.
fn call_solver(
    component: &'static str,
    solver: &dyn ExactSolver,
    p: &Presentation,
    a: &MatTuple,
    eps: &Rational,
) -> Result<StabilizeOutcome, StabilizeError> {
    let out = solver.solve(p, a, eps).map_err(StabilizeError::component(component))?;
    if !out.verified || !p.is_solution(&out.solution)? {
        return Err(StabilizeError::SolverContract(format!("{component} solver returned an inexact solution")));
    }
    Ok(out)
}

/// Verifies `solution` against `input` and packages the outcome. `exact`
/// is computed by the caller so group relators can be checked too.
fn conclude_with(
    exact: bool,
    input: &MatTuple,
    solution: MatTuple,
    eps: &Rational,
    mut diagnostics: Diagnostics,
) -> Result<StabilizeOutcome, StabilizeError> {
    let distances = hat_distances(input, &solution)?;
    let threshold = eps * from_usize(input.size());
    let close = distances.iter().all(|&d| from_usize(d) < threshold);
    diagnostics.output_size = solution.size();
    diagnostics.threshold = format_rational(&threshold);
    diagnostics.exact = exact;
    if !exact {
        diagnostics.note("result does not satisfy every relator");
    }
    if !close {
        diagnostics.note(format!("distances {distances:?} not all below {}", format_rational(&threshold)));
    }
    let outcome = StabilizeOutcome { solution, distances, verified: exact && close, diagnostics };
    if outcome.verified {
        Ok(outcome)
    } else {
        Err(StabilizeError::NotStabilized(Box::new(outcome)))
    }
}

fn conclude(
    p: &Presentation,
    input: &MatTuple,
    solution: MatTuple,
    eps: &Rational,
    diagnostics: Diagnostics,
) -> Result<StabilizeOutcome, StabilizeError> {
    let exact = p.is_solution(&solution)?;
    conclude_with(exact, input, solution, eps, diagnostics)
}

/// Checks a candidate `solution` against `p` and the strict `εn` bound
/// relative to `input`, packaging it as an outcome.
pub fn certify(
    p: &Presentation,
    input: &MatTuple,
    solution: MatTuple,
    eps: &Rational,
    diagnostics: Diagnostics,
) -> Result<StabilizeOutcome, StabilizeError> {
    p.check_tuple(input)?;
    p.check_tuple(&solution)?;
    conclude(p, input, solution, eps, diagnostics)
}

/// A solver that accepts its input only when it is already exact.
pub fn passthrough_solver(p: &Presentation, a: &MatTuple, eps: &Rational) -> Result<StabilizeOutcome, StabilizeError> {
    conclude(p, a, a.clone(), eps, Diagnostics::new("passthrough", a.size()))
}
