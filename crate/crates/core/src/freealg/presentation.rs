use std::collections::HashSet;
use std::fmt;

use crate::exactmat::{FieldSpec, Mat};

use super::lie::LiePoly;
use super::poly::NcPoly;
use super::tuple::MatTuple;
use super::{EvalError, PresentationError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Associative,
    Lie,
}

/// Relators of a presentation. Lie relators are kept as bracket
/// expressions and expanded on demand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Relators {
    Associative(Vec<NcPoly>),
    Lie(Vec<LiePoly>),
}

/// A finite presentation `F⟨x_1, …, x_d⟩ / ⟨P_1, …, P_r⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    field: FieldSpec,
    generators: Vec<String>,
    relators: Relators,
}

impl Presentation {
    pub fn associative(field: FieldSpec, generators: Vec<String>, relators: Vec<NcPoly>) -> Result<Self, PresentationError> {
        check_names(&generators)?;
        for (i, r) in relators.iter().enumerate() {
            if r.field() != field {
                return Err(PresentationError::FieldMismatch { relator: i });
            }
            if r.arity_used() > generators.len() {
                return Err(PresentationError::UndeclaredGenerator { relator: i });
            }
        }
        Ok(Presentation {
            field,
            generators,
            relators: Relators::Associative(relators),
        })
    }

    pub fn lie(field: FieldSpec, generators: Vec<String>, relators: Vec<LiePoly>) -> Result<Self, PresentationError> {
        check_names(&generators)?;
        for (i, r) in relators.iter().enumerate() {
            if r.field() != field {
                return Err(PresentationError::FieldMismatch { relator: i });
            }
            if r.arity_used() > generators.len() {
                return Err(PresentationError::UndeclaredGenerator { relator: i });
            }
        }
        Ok(Presentation {
            field,
            generators,
            relators: Relators::Lie(relators),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn flavor(&self) -> Flavor {
        match self.relators {
            Relators::Associative(_) => Flavor::Associative,
            Relators::Lie(_) => Flavor::Lie,
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &Relators {
        &self.relators
    }

    pub fn relator_count(&self) -> usize {
        match &self.relators {
            Relators::Associative(r) => r.len(),
            Relators::Lie(r) => r.len(),
        }
    }

    /// Relators as associative polynomials, expanding brackets for the Lie
    /// flavor.
    pub fn expanded_relators(&self) -> Vec<NcPoly> {
        match &self.relators {
            Relators::Associative(r) => r.clone(),
            Relators::Lie(r) => r.iter().map(LiePoly::expand).collect(),
        }
    }

    /// The presentation of the universal enveloping algebra; associative
    /// presentations are returned unchanged.
    pub fn enveloping(&self) -> Presentation {
        Presentation {
            field: self.field,
            generators: self.generators.clone(),
            relators: Relators::Associative(self.expanded_relators()),
        }
    }

    /// Largest relator degree.
    pub fn max_degree(&self) -> usize {
        self.expanded_relators().iter().map(NcPoly::max_degree).max().unwrap_or(0)
    }

    /// Largest number of monomials in a relator.
    pub fn max_monomials(&self) -> usize {
        self.expanded_relators().iter().map(NcPoly::monomial_count).max().unwrap_or(0)
    }

    /// Whether every relator has zero constant term, so the zero tuple is
    /// a solution in every size.
    pub fn zero_is_solution(&self) -> bool {
        self.expanded_relators().iter().all(|r| r.constant_term().is_zero())
    }

    /// Checks that `tuple` has the right arity and field.
    pub fn check_tuple(&self, tuple: &MatTuple) -> Result<(), EvalError> {
        if tuple.arity() != self.arity() {
            return Err(EvalError::Arity {
                expected: self.arity(),
                got: tuple.arity(),
            });
        }
        if tuple.field() != self.field {
            return Err(EvalError::Field {
                expected: self.field,
                got: tuple.field(),
            });
        }
        Ok(())
    }

    /// Every relator evaluated at `tuple`.
    pub fn evaluate(&self, tuple: &MatTuple) -> Result<Vec<Mat>, EvalError> {
        self.check_tuple(tuple)?;
        self.expanded_relators().iter().map(|r| r.eval(tuple)).collect()
    }

    /// Whether `tuple` satisfies every relator exactly.
    pub fn is_solution(&self, tuple: &MatTuple) -> Result<bool, EvalError> {
        Ok(self.evaluate(tuple)?.iter().all(Mat::is_zero))
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }
}

fn check_names(names: &[String]) -> Result<(), PresentationError> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(PresentationError::DuplicateGenerator(n.clone()));
        }
    }
    Ok(())
}

/// Renders in the DSL accepted by [`parse_presentation`](super::parse_presentation).
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kw = match self.flavor() {
            Flavor::Associative => "algebra",
            Flavor::Lie => "lie",
        };
        write!(f, "{kw} {}; gens {}; rels", self.field, self.generators.join(","))?;
        let rendered: Vec<String> = match &self.relators {
            Relators::Associative(r) => r.iter().map(|p| p.display_with(&self.generators).to_string()).collect(),
            Relators::Lie(r) => r.iter().map(|p| p.display_with(&self.generators).to_string()).collect(),
        };
        if rendered.is_empty() {
            write!(f, " ;")
        } else {
            write!(f, " {};", rendered.join(", "))
        }
    }
}
