use std::fmt;

use crate::exactmat::{FieldSpec, Scalar};

use super::poly::NcPoly;

/// A Lie monomial: a generator or a bracket of two Lie monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieTerm {
    Gen(usize),
    Bracket(Box<LieTerm>, Box<LieTerm>),
}

impl LieTerm {
    pub fn bracket(a: LieTerm, b: LieTerm) -> LieTerm {
        LieTerm::Bracket(Box::new(a), Box::new(b))
    }

    /// Associative expansion via `[a, b] = ab − ba`.
    pub fn expand(&self, field: FieldSpec) -> NcPoly {
        match self {
            LieTerm::Gen(g) => NcPoly::generator(field, *g),
            LieTerm::Bracket(a, b) => NcPoly::commutator(&a.expand(field), &b.expand(field)),
        }
    }

    fn max_generator(&self) -> usize {
        match self {
            LieTerm::Gen(g) => g + 1,
            LieTerm::Bracket(a, b) => a.max_generator().max(b.max_generator()),
        }
    }

    fn render(&self, names: &[String]) -> String {
        match self {
            LieTerm::Gen(g) => names[*g].clone(),
            LieTerm::Bracket(a, b) => format!("[{},{}]", a.render(names), b.render(names)),
        }
    }
}

/// A linear combination of Lie monomials (no constant term by
/// construction).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiePoly {
    field: FieldSpec,
    terms: Vec<(LieTerm, Scalar)>,
}

impl LiePoly {
    pub fn zero(field: FieldSpec) -> LiePoly {
        LiePoly { field, terms: Vec::new() }
    }

    pub fn term(t: LieTerm, coeff: Scalar) -> LiePoly {
        let mut p = LiePoly::zero(coeff.field());
        p.add_term(t, &coeff);
        p
    }

    pub fn generator(field: FieldSpec, g: usize) -> LiePoly {
        LiePoly::term(LieTerm::Gen(g), field.one())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &[(LieTerm, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn arity_used(&self) -> usize {
        self.terms.iter().map(|(t, _)| t.max_generator()).max().unwrap_or(0)
    }

    fn add_term(&mut self, t: LieTerm, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(u, _)| u.cmp(&t)) {
            Ok(i) => {
                let s = &self.terms[i].1 + c;
                if s.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = s;
                }
            }
            Err(i) => self.terms.insert(i, (t, c.clone())),
        }
    }

    pub fn add(&self, other: &LiePoly) -> LiePoly {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> LiePoly {
        let mut out = LiePoly::zero(self.field);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), &(c * s));
        }
        out
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&self, other: &LiePoly) -> LiePoly {
        let mut out = LiePoly::zero(self.field);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(LieTerm::bracket(a.clone(), b.clone()), &(c * d));
            }
        }
        out
    }

    /// Associative expansion of every bracket.
    pub fn expand(&self) -> NcPoly {
        let mut out = NcPoly::zero(self.field);
        for (t, c) in &self.terms {
            out = &out + &t.expand(self.field).scale(c);
        }
        out
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        LieDisplay { poly: self, names }
    }
}

struct LieDisplay<'a> {
    poly: &'a LiePoly,
    names: &'a [String],
}

impl fmt::Display for LieDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return write!(f, "0");
        }
        // brackets first, then bare generators
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by_key(|(t, _)| matches!(t, LieTerm::Gen(_)));
        for (k, (t, c)) in terms.into_iter().enumerate() {
            let negative = c.prints_negative();
            let abs = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{}", t.render(self.names))?;
            } else {
                write!(f, "{abs}*{}", t.render(self.names))?;
            }
        }
        Ok(())
    }
}
