use crate::exactmat::Mat;
use crate::freealg::{GroupPresentation, MatTuple};
use crate::rational::Rational;

use super::rounding::round_invertible;
use super::{call_solver, conclude, conclude_with, Diagnostics, ExactSolver, StabilizeError, StabilizeOutcome};

/// A stabilizer for a group: invertible approximate solutions in, invertible
/// exact solutions of the relator words out.
pub trait GroupSolver: Send + Sync {
    fn solve(&self, g: &GroupPresentation, u: &MatTuple, eps: &Rational) -> Result<StabilizeOutcome, StabilizeError>;
}

impl<F> GroupSolver for F
where
    F: Fn(&GroupPresentation, &MatTuple, &Rational) -> Result<StabilizeOutcome, StabilizeError> + Send + Sync,
{
    fn solve(&self, g: &GroupPresentation, u: &MatTuple, eps: &Rational) -> Result<StabilizeOutcome, StabilizeError> {
        self(g, u, eps)
    }
}

/// Stabilizer for the group algebra `F[G]` from a stabilizer of `G`.
///
/// `a` holds images of `x⃗` and then of the formal inverses `y⃗`. Each
/// `x_j` image is rounded to an invertible matrix, the group solver repairs
/// those, and the answer is `(V⃗, V⃗⁻¹)`.
pub fn stabilize_group_algebra(
    group: &GroupPresentation,
    solver: &dyn GroupSolver,
    a: &MatTuple,
    eps: &Rational,
) -> Result<StabilizeOutcome, StabilizeError> {
    let algebra = group.algebra()?;
    algebra.check_tuple(a)?;
    let d = group.arity();
    let field = a.field();
    let mut diag = Diagnostics::new("group-algebra", a.size());
    let mut rounded = Vec::with_capacity(d);
    for j in 0..d {
        let (x, y) = (&a.mats()[j], &a.mats()[j + d]);
        let u = round_invertible(x, y)?;
        let u2 = round_invertible(y, x)?;
        let gap = (&u2.u - &u.u.inverse()?).rank();
        diag.note(format!(
            "generator {j}: rank(xy − 1) = {}, rounding moved rank {}, rank(U' − U⁻¹) = {gap}",
            u.pair_defect, u.distance
        ));
        rounded.push(u.u);
    }
    let u = MatTuple::new(field, a.size(), rounded)?;
    let out = solver.solve(group, &u, eps).map_err(StabilizeError::component("group"))?;
    if !out.verified || !group.is_solution(&out.solution)? {
        return Err(StabilizeError::SolverContract("group solver returned a non-solution".into()));
    }
    let v = out.solution.mats().to_vec();
    diag.components.push(out.diagnostics);
    let inverses = v.iter().map(Mat::inverse).collect::<Result<Vec<_>, _>>()?;
    let solution = MatTuple::new(field, out.solution.size(), v.into_iter().chain(inverses).collect())?;
    conclude(&algebra, a, solution, eps, diag)
}

/// Stabilizer for `G` from a stabilizer of `F[G]`: pairs each invertible
/// input with its inverse, solves in the group algebra, and keeps the
/// `x⃗` part.
pub fn stabilize_group_from_algebra(
    group: &GroupPresentation,
    solver: &dyn ExactSolver,
    a: &MatTuple,
    eps: &Rational,
) -> Result<StabilizeOutcome, StabilizeError> {
    let algebra = group.algebra()?;
    let d = group.arity();
    if a.arity() != d {
        return Err(crate::freealg::EvalError::Arity { expected: d, got: a.arity() }.into());
    }
    let inverses = a
        .mats()
        .iter()
        .map(|m| m.inverse().map_err(|_| StabilizeError::Precondition("group inputs must be invertible".into())))
        .collect::<Result<Vec<_>, _>>()?;
    let lifted = MatTuple::new(a.field(), a.size(), a.mats().iter().cloned().chain(inverses).collect())?;
    let out = call_solver("group algebra", solver, &algebra, &lifted, eps)?;
    let mut diag = Diagnostics::new("group-from-algebra", a.size());
    let solution = out.solution.slice(0..d);
    diag.components.push(out.diagnostics);
    let exact = group.is_solution(&solution)?;
    conclude_with(exact, a, solution, eps, diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::FieldSpec;
    use crate::freealg::parse_group_presentation;
    use crate::rational::ratio;
    use crate::stabilize::FindimSolver;

    fn identity_group_solver(g: &GroupPresentation, u: &MatTuple, eps: &Rational) -> Result<StabilizeOutcome, StabilizeError> {
        let exact = g.is_solution(u)?;
        conclude_with(exact, u, u.clone(), eps, Diagnostics::new("identity", u.size()))
    }

    #[test]
    fn free_group_passthrough() {
        let g = parse_group_presentation("group Q; gens x; rels ;").unwrap();
        let f = FieldSpec::Rationals;
        let x = Mat::from_i64(f, &[&[2, 1], &[1, 1]]);
        let a = MatTuple::from_mats(vec![x.clone(), x.inverse().unwrap()]).unwrap();
        let out = stabilize_group_algebra(&g, &identity_group_solver, &a, &ratio(1, 4)).unwrap();
        assert_eq!(out.solution, a);
    }

    #[test]
    fn singular_bump_is_rounded() {
        let g = parse_group_presentation("group Q; gens x; rels ;").unwrap();
        let f = FieldSpec::Rationals;
        let x = Mat::diag(f, &[1, 1, 1, 1, 0, 1, 1, 1]);
        let a = MatTuple::from_mats(vec![x.clone(), Mat::identity(f, 8)]).unwrap();
        let out = stabilize_group_algebra(&g, &identity_group_solver, &a, &ratio(1, 2)).unwrap();
        assert!(g.algebra().unwrap().is_solution(&out.solution).unwrap());
        assert_eq!(out.distances, vec![1, 0]);
    }

    #[test]
    fn cyclic_group_through_its_algebra() {
        let f = FieldSpec::Rationals;
        let g = parse_group_presentation("group Q; gens a; rels a^2;").unwrap();
        let swap = Mat::permutation(f, &[1, 0]);
        let reference = MatTuple::from_mats(vec![swap.clone(), swap.clone()]).unwrap();
        let algebra_solver = FindimSolver { reference, degree: None, cap: 4 };
        let big = Mat::identity(f, 4).kronecker(&swap);
        let mut x = big.clone();
        x.set(0, 7, &f.from_i64(5));
        let a = MatTuple::from_mats(vec![x]).unwrap();
        let out = stabilize_group_from_algebra(&g, &algebra_solver, &a, &ratio(1, 2)).unwrap();
        assert!(g.is_solution(&out.solution).unwrap());
    }
}
