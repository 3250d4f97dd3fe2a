use crate::exactmat::{FieldSpec, Mat};

use super::builders::{group_algebra_presentation, GroupWord};
use super::presentation::Presentation;
use super::tuple::MatTuple;
use super::{EvalError, PresentationError};

/// A finitely presented group `⟨gens | words⟩` together with the field of
/// its matrix representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    field: FieldSpec,
    generators: Vec<String>,
    words: Vec<GroupWord>,
}

impl GroupPresentation {
    pub fn new(field: FieldSpec, generators: Vec<String>, words: Vec<GroupWord>) -> Result<Self, PresentationError> {
        let g = GroupPresentation { field, generators, words };
        g.algebra()?;
        Ok(g)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    pub fn words(&self) -> &[GroupWord] {
        &self.words
    }

    /// Presentation of the group algebra on `x⃗` and formal inverses `y⃗`.
    pub fn algebra(&self) -> Result<Presentation, PresentationError> {
        group_algebra_presentation(self.field, &self.generators, &self.words)
    }

    /// Every relator word evaluated at invertible matrices; `None` when some
    /// matrix is singular.
    pub fn evaluate(&self, tuple: &MatTuple) -> Result<Option<Vec<Mat>>, EvalError> {
        if tuple.arity() != self.arity() {
            return Err(EvalError::Arity { expected: self.arity(), got: tuple.arity() });
        }
        if tuple.field() != self.field {
            return Err(EvalError::Field { expected: self.field, got: tuple.field() });
        }
        let Some(inverses) = tuple.mats().iter().map(|m| m.inverse().ok()).collect::<Option<Vec<_>>>() else {
            return Ok(None);
        };
        let id = Mat::identity(self.field, tuple.size());
        let values = self
            .words
            .iter()
            .map(|w| {
                w.iter().fold(id.clone(), |acc, &(g, inv)| {
                    &acc * if inv { &inverses[g] } else { &tuple.mats()[g] }
                })
            })
            .collect();
        Ok(Some(values))
    }

    /// Whether the tuple consists of invertible matrices satisfying every
    /// relator word.
    pub fn is_solution(&self, tuple: &MatTuple) -> Result<bool, EvalError> {
        Ok(self.evaluate(tuple)?.is_some_and(|v| v.iter().all(Mat::is_identity)))
    }
}
