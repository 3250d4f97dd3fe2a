use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::exactmat::{FieldSpec, Mat, Scalar};

use super::tuple::MatTuple;
use super::EvalError;

/// A word in the generators, as a sequence of generator indices. The empty
/// word is the unit.
pub type Word = Vec<usize>;

/// A noncommutative polynomial: a finite map from words to nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NcPoly {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero(field: FieldSpec) -> NcPoly {
        NcPoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(s: Scalar) -> NcPoly {
        NcPoly::monomial(Vec::new(), s)
    }

    pub fn one(field: FieldSpec) -> NcPoly {
        NcPoly::constant(field.one())
    }

    pub fn generator(field: FieldSpec, i: usize) -> NcPoly {
        NcPoly::monomial(vec![i], field.one())
    }

    /// `coeff · word`; a zero coefficient gives the zero polynomial.
    pub fn monomial(word: Word, coeff: Scalar) -> NcPoly {
        let mut p = NcPoly::zero(coeff.field());
        p.add_term(word, &coeff);
        p
    }

    /// The word `g_{w_1} ⋯ g_{w_k}` with coefficient one.
    pub fn word(field: FieldSpec, word: &[usize]) -> NcPoly {
        NcPoly::monomial(word.to_vec(), field.one())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[usize]) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&[])
    }

    /// Number of monomials with nonzero coefficient.
    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest word length; zero for constants and for the zero polynomial.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// One past the largest generator index used.
    pub fn arity_used(&self) -> usize {
        self.terms.keys().flatten().map(|&g| g + 1).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, word: Word, coeff: &Scalar) {
        assert_eq!(coeff.field(), self.field, "coefficient field mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                let s = &*c + coeff;
                if s.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(word, coeff.clone());
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> NcPoly {
        let mut out = NcPoly::zero(self.field);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &(c * s));
        }
        out
    }

    pub fn pow(&self, k: u32) -> NcPoly {
        (0..k).fold(NcPoly::one(self.field), |acc, _| &acc * self)
    }

    /// `ab − ba`.
    pub fn commutator(a: &NcPoly, b: &NcPoly) -> NcPoly {
        &(a * b) - &(b * a)
    }

    /// Renames generator `g` to `map[g]`.
    pub fn reindex(&self, map: &[usize]) -> NcPoly {
        let mut out = NcPoly::zero(self.field);
        for (w, c) in &self.terms {
            out.add_term(w.iter().map(|&g| map[g]).collect(), c);
        }
        out
    }

    /// Substitutes `images[g]` for generator `g`.
    pub fn substitute(&self, images: &[NcPoly]) -> NcPoly {
        let mut out = NcPoly::zero(self.field);
        for (w, c) in &self.terms {
            let mut t = NcPoly::constant(c.clone());
            for &g in w {
                t = &t * &images[g];
            }
            out = &out + &t;
        }
        out
    }

    /// Evaluates at a matrix tuple; the empty word maps to the identity.
    pub fn eval(&self, tuple: &MatTuple) -> Result<Mat, EvalError> {
        if self.arity_used() > tuple.arity() {
            return Err(EvalError::Arity {
                expected: self.arity_used(),
                got: tuple.arity(),
            });
        }
        if self.field != tuple.field() {
            return Err(EvalError::Field {
                expected: self.field,
                got: tuple.field(),
            });
        }
        let n = tuple.size();
        let mut acc = Mat::zeros(self.field, n, n);
        // terms are sorted, so words sharing a prefix are adjacent; cache
        // products by prefix
        let mut cache: HashMap<&[usize], Mat> = HashMap::new();
        for (w, c) in &self.terms {
            let prod = word_product(w, tuple, &mut cache);
            acc = &acc + &prod.scale(c);
        }
        Ok(acc)
    }
}

fn word_product<'w>(w: &'w [usize], tuple: &MatTuple, cache: &mut HashMap<&'w [usize], Mat>) -> Mat {
    if w.is_empty() {
        return Mat::identity(tuple.field(), tuple.size());
    }
    if let Some(m) = cache.get(w) {
        return m.clone();
    }
    let k = (1..w.len()).rev().find(|&k| cache.contains_key(&w[..k])).unwrap_or(0);
    let mut prod = if k == 0 {
        tuple.mats()[w[0]].clone()
    } else {
        cache[&w[..k]].clone()
    };
    for j in k.max(1)..w.len() {
        prod = &prod * &tuple.mats()[w[j]];
        cache.insert(&w[..=j], prod.clone());
    }
    cache.insert(w, prod.clone());
    prod
}

impl std::ops::Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl std::ops::Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&self.field.from_i64(-1))
    }
}

impl std::ops::Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }
}

impl NcPoly {
    /// Renders with the given generator names, highest degree first and
    /// lexicographic within a degree, e.g. `x*y - y*x - 1`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }

    pub(crate) fn ordered_terms(&self) -> Vec<(&Word, &Scalar)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        terms
    }
}

struct PolyDisplay<'a> {
    poly: &'a NcPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.ordered_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in terms.into_iter().enumerate() {
            let negative = c.prints_negative();
            let abs = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body = render_word(w, self.names);
            if w.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{abs}*{body}")?;
            }
        }
        Ok(())
    }
}

/// `x*x*y` is rendered as `x^2*y`.
pub(crate) fn render_word(w: &[usize], names: &[String]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = &names[w[i]];
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.arity_used()).map(|i| format!("g{i}")).collect();
        let body = self.display_with(&names).to_string();
        write!(f, "NcPoly<{}>({body})", self.field)
    }
}
