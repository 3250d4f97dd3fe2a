use crate::exactmat::{FieldSpec, Mat};
use crate::freealg::{matrix_algebra_presentation, MatTuple, Presentation, PresentationError};
use crate::rational::Rational;

use super::rounding::{round_in_frame, UnitFrame};
use super::{call_solver, conclude, Diagnostics, ExactSolver, FindimSolver, StabilizeError, StabilizeOutcome};

/// The `m × m` matrix units in row-major order.
pub fn standard_units(field: FieldSpec, m: usize) -> Vec<Mat> {
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut e = Mat::zeros(field, m, m);
            e.set(i, j, &field.one());
            out.push(e);
        }
    }
    out
}

/// Presentation of `M_m(F)` on the units alone.
pub fn matrix_units_presentation(field: FieldSpec, m: usize) -> Result<Presentation, PresentationError> {
    matrix_algebra_presentation(&Presentation::associative(field, vec![], vec![])?, m)
}

/// Stabilizer for `M_m(A)` from a stabilizer of `A`.
///
/// The unit images are stabilized as a finite-dimensional algebra, each
/// base generator is rounded to a block-scalar matrix in the resulting unit
/// frame, the `(1,1)` blocks go to `solver`, and the answer is tensored back
/// with the units. When the base solution is smaller than the block it is
/// padded with zeros (if zero solves the base relators) or with copies of
/// `base_reference`.
pub fn stabilize_matrix_algebra(
    base: &Presentation,
    solver: &dyn ExactSolver,
    base_reference: Option<&MatTuple>,
    m: usize,
    t: &MatTuple,
    eps: &Rational,
) -> Result<StabilizeOutcome, StabilizeError> {
    let full = matrix_algebra_presentation(base, m)?;
    full.check_tuple(t)?;
    let field = t.field();
    let n = t.size();
    let d = base.arity();
    let mut diag = Diagnostics::new("matrix-algebra", n);

    let units_pres = matrix_units_presentation(field, m)?;
    let reference = MatTuple::new(field, m, standard_units(field, m))?;
    let unit_out = call_solver("units", &FindimSolver::new(reference), &units_pres, &t.slice(d..d + m * m), eps)?;
    let units = unit_out.solution.mats().to_vec();
    diag.components.push(unit_out.diagnostics);
    let frame = UnitFrame::new(&units)?;
    let q = frame.q;
    let mut blocks = Vec::with_capacity(d);
    for x in &t.mats()[..d] {
        let r = round_in_frame(frame.clone(), &units, x)?;
        diag.note(format!("rounded generator: distance {} within bound {}", r.distance, r.bound));
        blocks.push(r.block);
    }
    let blocks = MatTuple::new(field, q, blocks)?;
    let base_out = call_solver("base", solver, base, &blocks, eps)?;
    diag.components.push(base_out.diagnostics);
    let mut sol = base_out.solution;
    if sol.size() < q {
        sol = pad_solution(base, base_reference, sol, q)?;
        diag.note(format!("base solution padded to size {}", sol.size()));
    }
    let q2 = sol.size();
    diag.kept_dim = Some(q);

    let cols: Vec<usize> = (0..m).flat_map(|b| b * q2..b * q2 + q).chain((0..m).flat_map(|b| b * q2 + q..(b + 1) * q2)).collect();
    let perm = Mat::permutation(field, &cols);
    let id_pad = Mat::identity(field, m * (q2 - q));
    let whole = &frame.p.direct_sum(&id_pad) * &perm.transpose();
    let whole_inv = &perm * &frame.p_inv.direct_sum(&id_pad);
    let id_m = Mat::identity(field, m);
    let id_q2 = Mat::identity(field, q2);
    let mut mats: Vec<Mat> = sol.mats().iter().map(|x| id_m.kronecker(x)).collect();
    mats.extend(standard_units(field, m).iter().map(|e| e.kronecker(&id_q2)));
    let mats = mats.iter().map(|x| x.conjugate(&whole, &whole_inv)).collect();
    let solution = MatTuple::new(field, m * q2, mats)?;
    conclude(&full, t, solution, eps, diag)
}

fn pad_solution(
    base: &Presentation,
    reference: Option<&MatTuple>,
    sol: MatTuple,
    target: usize,
) -> Result<MatTuple, StabilizeError> {
    if base.zero_is_solution() {
        return Ok(sol.resized(target));
    }
    let Some(r) = reference.filter(|r| r.size() > 0) else {
        return Err(StabilizeError::DimensionArithmetic(format!(
            "base solution of size {} is below {target} and no reference solution is available for padding",
            sol.size()
        )));
    };
    if !base.is_solution(r)? {
        return Err(StabilizeError::Precondition("base reference is not an exact solution".into()));
    }
    let copies = (target - sol.size()).div_ceil(r.size());
    let mut out = sol;
    for _ in 0..copies {
        out = out.direct_sum(r);
    }
    Ok(out)
}

/// Stabilizer for `A` from a stabilizer of `M_m(A)`: tensors the input up,
/// solves there, and reads the base solution off the commutant of the
/// returned units.
pub fn demote_matrix_algebra(
    base: &Presentation,
    solver: &dyn ExactSolver,
    m: usize,
    a: &MatTuple,
    eps: &Rational,
) -> Result<StabilizeOutcome, StabilizeError> {
    let full = matrix_algebra_presentation(base, m)?;
    base.check_tuple(a)?;
    let field = a.field();
    let n = a.size();
    let d = base.arity();
    let id_m = Mat::identity(field, m);
    let id_n = Mat::identity(field, n);
    let mut mats: Vec<Mat> = a.mats().iter().map(|x| id_m.kronecker(x)).collect();
    mats.extend(standard_units(field, m).iter().map(|e| e.kronecker(&id_n)));
    let lifted = MatTuple::new(field, m * n, mats)?;
    let out = call_solver("matrix algebra", solver, &full, &lifted, eps)?;
    let mut diag = Diagnostics::new("demote-matrix-algebra", n);
    let frame = UnitFrame::new(&out.solution.mats()[d..])?;
    diag.components.push(out.diagnostics);
    let mut blocks = Vec::with_capacity(d);
    for c in &out.solution.mats()[..d] {
        let framed = frame.to_frame(c);
        let block = framed.leading_block(frame.q);
        if framed != id_m.kronecker(&block) {
            return Err(StabilizeError::Internal("generator commuting with the units is not block scalar".into()));
        }
        blocks.push(block);
    }
    let solution = MatTuple::new(field, frame.q, blocks)?;
    conclude(base, a, solution, eps, diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_presentation;
    use crate::rational::ratio;
    use crate::stabilize::passthrough_solver;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn base() -> (Presentation, FindimSolver) {
        let p = parse_presentation("algebra Q; gens x; rels x*x;").unwrap();
        let jordan = MatTuple::new(q(), 2, vec![Mat::from_i64(q(), &[&[0, 1], &[0, 0]])]).unwrap();
        (p, FindimSolver::new(jordan))
    }

    fn lifted(m: usize, x: &MatTuple) -> MatTuple {
        let f = x.field();
        let mut mats: Vec<Mat> = x.mats().iter().map(|a| Mat::identity(f, m).kronecker(a)).collect();
        mats.extend(standard_units(f, m).iter().map(|e| e.kronecker(&Mat::identity(f, x.size()))));
        MatTuple::from_mats(mats).unwrap()
    }

    #[test]
    fn m_equal_one_is_a_wrapper() {
        let (p, solver) = base();
        let a = solver.reference.amplify(3);
        let t = lifted(1, &a);
        let out = stabilize_matrix_algebra(&p, &solver, None, 1, &t, &ratio(1, 4)).unwrap();
        assert_eq!(out.max_distance(), 0);
        let back = demote_matrix_algebra(&p, &passthrough_solver, 1, &a, &ratio(1, 4)).unwrap();
        assert_eq!(back.solution, a);
    }

    #[test]
    fn forward_repairs_unit_bump() {
        let (p, solver) = base();
        let a = solver.reference.amplify(4);
        let mut t = lifted(2, &a).into_mats();
        t[2].set(0, 15, &q().one());
        let t = MatTuple::from_mats(t).unwrap();
        let out = stabilize_matrix_algebra(&p, &solver, None, 2, &t, &ratio(1, 2)).unwrap();
        assert!(out.verified);
        assert!(matrix_algebra_presentation(&p, 2).unwrap().is_solution(&out.solution).unwrap());
    }

    #[test]
    fn converse_on_exact_input() {
        let (p, solver) = base();
        let a = solver.reference.amplify(2);
        let out = demote_matrix_algebra(&p, &passthrough_solver, 2, &a, &ratio(1, 4)).unwrap();
        assert_eq!(out.max_distance(), 0);
        assert_eq!(out.solution, a);
    }
}
