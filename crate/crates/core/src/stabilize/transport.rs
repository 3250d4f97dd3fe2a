use crate::freealg::{MatTuple, NcPoly, Presentation};
use crate::rational::Rational;

use super::{call_solver, conclude, Diagnostics, ExactSolver, StabilizeError, StabilizeOutcome};

/// Moves a stabilizer across an isomorphism of presentations.
///
/// `to_src[i]` expresses source generator `i` in destination generators and
/// `to_dst[j]` expresses destination generator `j` in source generators.
/// The isomorphism is not checked; the transported result is verified.
pub fn transport_solution(
    src: &Presentation,
    dst: &Presentation,
    to_src: &[NcPoly],
    to_dst: &[NcPoly],
    solver: &dyn ExactSolver,
    a: &MatTuple,
    eps: &Rational,
) -> Result<StabilizeOutcome, StabilizeError> {
    dst.check_tuple(a)?;
    if to_src.len() != src.arity() || to_dst.len() != dst.arity() {
        return Err(StabilizeError::Precondition(format!(
            "need {} source and {} destination images, got {} and {}",
            src.arity(),
            dst.arity(),
            to_src.len(),
            to_dst.len()
        )));
    }
    let field = a.field();
    let pulled = to_src.iter().map(|f| f.eval(a)).collect::<Result<Vec<_>, _>>()?;
    let pulled = MatTuple::new(field, a.size(), pulled)?;
    let out = call_solver("source", solver, src, &pulled, eps)?;
    let back = to_dst.iter().map(|f| f.eval(&out.solution)).collect::<Result<Vec<_>, _>>()?;
    let back = MatTuple::new(field, out.solution.size(), back)?;
    let mut diag = Diagnostics::new("transport", a.size());
    let spread = to_dst.iter().map(|f| f.monomial_count() * f.max_degree()).max().unwrap_or(0);
    diag.note(format!(
        "polynomial rank bound: {spread}·{} + {} = {}",
        out.max_distance(),
        a.size().abs_diff(back.size()),
        spread * out.max_distance() + a.size().abs_diff(back.size())
    ));
    diag.components.push(out.diagnostics);
    conclude(dst, a, back, eps, diag)
}
