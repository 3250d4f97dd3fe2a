//! Defects of matrix tuples against presentations and approximation between
//! tuples of possibly different sizes.

use serde::Serialize;
use thiserror::Error;

use crate::exactmat::Mat;
use crate::freealg::{EvalError, MatTuple, NcPoly, Presentation};
use crate::rational::{from_usize, normalized, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorDefect {
    pub index: usize,
    pub rank: usize,
    #[serde(with = "crate::rational::serde_string")]
    pub normalized: Rational,
}

/// Normalized rank of every relator at a tuple, and their maximum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub n: usize,
    pub per_relator: Vec<RelatorDefect>,
    #[serde(with = "crate::rational::serde_string")]
    pub max_defect: Rational,
}

impl DefectReport {
    pub fn is_exact(&self) -> bool {
        self.per_relator.iter().all(|r| r.rank == 0)
    }

    /// Index of a relator attaining the maximum, if any relator is nonzero.
    pub fn worst_relator(&self) -> Option<usize> {
        self.per_relator
            .iter()
            .filter(|r| r.rank > 0)
            .max_by(|a, b| a.rank.cmp(&b.rank).then(b.index.cmp(&a.index)))
            .map(|r| r.index)
    }
}

/// Defect of `tuple` against `p`; Lie relators are expanded first.
pub fn defect(p: &Presentation, tuple: &MatTuple) -> Result<DefectReport, EvalError> {
    let n = tuple.size();
    let per_relator: Vec<RelatorDefect> = p
        .evaluate(tuple)?
        .iter()
        .enumerate()
        .map(|(index, m)| {
            let rank = m.rank();
            RelatorDefect { index, rank, normalized: normalized(rank, n) }
        })
        .collect();
    let max_rank = per_relator.iter().map(|r| r.rank).max().unwrap_or(0);
    Ok(DefectReport { n, per_relator, max_defect: normalized(max_rank, n) })
}

/// Outcome of comparing two tuples generator by generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Approximation {
    pub holds: bool,
    pub distances: Vec<usize>,
    /// `ε·n`; each distance must be strictly below it.
    #[serde(with = "crate::rational::serde_string")]
    pub threshold: Rational,
}

/// Whether `b` is an ε-approximation of `a`: every hat distance is strictly
/// below `ε·n` with `n` the size of `a`.
pub fn is_eps_approx(a: &MatTuple, b: &MatTuple, eps: &Rational) -> Result<Approximation, EvalError> {
    let distances = hat_distances(a, b)?;
    let threshold = eps * from_usize(a.size());
    let holds = distances.iter().all(|&d| from_usize(d) < threshold);
    Ok(Approximation { holds, distances, threshold })
}

/// Per-generator hat distances between two tuples of equal arity.
pub fn hat_distances(a: &MatTuple, b: &MatTuple) -> Result<Vec<usize>, EvalError> {
    if a.arity() != b.arity() {
        return Err(EvalError::Arity { expected: a.arity(), got: b.arity() });
    }
    if a.field() != b.field() {
        return Err(EvalError::Field { expected: a.field(), got: b.field() });
    }
    Ok(a.mats()
        .iter()
        .zip(b.mats())
        .map(|(x, y)| Mat::hat_dist(x, y).expect("fields checked"))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyRankError {
    #[error("generator {generator} has hat distance {distance}, not below {lambda}")]
    Precondition { generator: usize, distance: usize, lambda: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Result of checking `rank(f̂(A) − f̂(B)) < l·m·λ + |n − n'|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyRankCheck {
    /// `rank(f̂(A) − f̂(B))`.
    pub lhs: usize,
    /// `l·m·λ + |n − n'|`, with `l` and `m` taken at least one.
    pub bound: usize,
    /// `l·m·λ`, the bound that applies when `f` has zero constant term.
    pub refined_bound: usize,
    pub holds: bool,
    /// `None` when `f` has a nonzero constant term.
    pub refined_holds: Option<bool>,
}

impl PolyRankCheck {
    pub fn all_hold(&self) -> bool {
        self.holds && self.refined_holds.unwrap_or(true)
    }
}

/// Checks the polynomial rank bound for `f` at tuples `a` and `b` whose
/// generators are all within hat distance `< λ`. The number of monomials
/// `l` and the degree `m` are clamped to at least one, since the strict
/// bound cannot hold for constant or zero `f` otherwise.
pub fn check_polyrank_bound(f: &NcPoly, a: &MatTuple, b: &MatTuple, lambda: usize) -> Result<PolyRankCheck, PolyRankError> {
    let distances = hat_distances(a, b)?;
    if let Some((generator, &distance)) = distances.iter().enumerate().find(|(_, &d)| d >= lambda) {
        return Err(PolyRankError::Precondition { generator, distance, lambda });
    }
    let fa = f.eval(a)?;
    let fb = f.eval(b)?;
    let lhs = Mat::hat_dist(&fa, &fb).expect("fields checked");
    let l = f.monomial_count().max(1);
    let m = f.max_degree().max(1);
    let refined_bound = l * m * lambda;
    let bound = refined_bound + a.size().abs_diff(b.size());
    let refined_holds = f.constant_term().is_zero().then_some(lhs < refined_bound);
    Ok(PolyRankCheck { lhs, bound, refined_bound, holds: lhs < bound, refined_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::FieldSpec;
    use crate::freealg::parse_presentation;
    use crate::rational::ratio;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn weyl_two_by_two() {
        let p = parse_presentation("algebra Q; gens x,y; rels x*y - y*x - 1;").unwrap();
        let x = Mat::from_i64(q(), &[&[0, 1], &[0, 0]]);
        let y = Mat::from_i64(q(), &[&[0, 0], &[1, 0]]);
        let r = defect(&p, &MatTuple::new(q(), 2, vec![x, y]).unwrap()).unwrap();
        assert_eq!(r.max_defect, ratio(1, 2));
        assert_eq!(r.worst_relator(), Some(0));
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""max_defect":"1/2""#));
    }

    #[test]
    fn strictness_of_approximation() {
        let n = 5;
        let ids = |k| MatTuple::new(q(), k, vec![Mat::identity(q(), k)]).unwrap();
        assert!(is_eps_approx(&ids(n), &ids(n), &ratio(1, 100)).unwrap().holds);
        let a = is_eps_approx(&ids(n), &ids(n + 1), &ratio(2, n as i64)).unwrap();
        assert!(a.holds);
        assert_eq!(a.distances, vec![1]);
        let zero = MatTuple::new(q(), n, vec![Mat::zeros(q(), n, n)]).unwrap();
        assert!(!is_eps_approx(&ids(n), &zero, &ratio(1, 1)).unwrap().holds);
    }

    #[test]
    fn polyrank_distinguishes_precondition() {
        let f = NcPoly::word(q(), &[0]);
        let a = MatTuple::new(q(), 2, vec![Mat::identity(q(), 2)]).unwrap();
        let b = MatTuple::new(q(), 2, vec![Mat::zeros(q(), 2, 2)]).unwrap();
        assert!(matches!(check_polyrank_bound(&f, &a, &b, 2), Err(PolyRankError::Precondition { .. })));
        let c = check_polyrank_bound(&f, &a, &b, 3).unwrap();
        assert!(c.all_hold());
        let one = NcPoly::one(q());
        let c = check_polyrank_bound(&one, &a, &a, 1).unwrap();
        assert_eq!(c.lhs, 0);
        assert!(c.holds);
        assert_eq!(c.refined_holds, None);
    }
}
