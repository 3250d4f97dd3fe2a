use crate::approx::defect;
use crate::exactmat::{Mat, Subspace};
use crate::freealg::{MatTuple, Presentation};
use crate::rational::Rational;

use super::{conclude, Diagnostics, ExactSolver, StabilizeError, StabilizeOutcome};

/// Largest degree bound [`FindimSolver`] tries by default.
pub const DEFAULT_DEGREE_CAP: usize = 6;

/// Stabilizer for a finite-dimensional algebra whose generators span it.
///
/// Keeps the largest subspace `W` on which every word of length at most
/// `degree` maps into the common kernel of the relators, compresses the
/// generators to `W`, and pads with copies of the exact `reference`
/// solution so the size becomes the least `n' ≥ n` with
/// `n' ≡ dim W (mod s)`.
pub fn stabilize_findim(
    p: &Presentation,
    degree: usize,
    reference: &MatTuple,
    a: &MatTuple,
    eps: &Rational,
) -> Result<StabilizeOutcome, StabilizeError> {
    p.check_tuple(a)?;
    p.check_tuple(reference)?;
    if reference.size() == 0 {
        return Err(StabilizeError::Precondition("reference solution has size 0".into()));
    }
    if !p.is_solution(reference)? {
        return Err(StabilizeError::Precondition("reference tuple is not an exact solution".into()));
    }
    let field = a.field();
    let n = a.size();
    let s = reference.size();
    let d = a.arity();
    let mut diag = Diagnostics::new("findim", n);
    diag.degree_bound = Some(degree);

    let values = p.evaluate(a)?;
    let stacked = values.iter().fold(Mat::zeros(field, 0, n), |acc, v| acc.vstack(v));
    let kernel = Subspace::kernel_of(&stacked);
    let mut layer = kernel.clone();
    let mut kept = kernel.clone();
    for _ in 0..degree {
        let ann = layer.annihilator_rows();
        let pulled = a.mats().iter().fold(Mat::zeros(field, 0, n), |acc, ai| acc.vstack(&(&ann * ai)));
        let next = Subspace::kernel_of(&pulled);
        if next == layer {
            break;
        }
        kept = kept.intersect(&next)?;
        layer = next;
    }
    let k = kept.dim();
    let word_count: usize = (0..=degree).map(|l| d.pow(l as u32)).sum();
    let worst = defect(p, a)?.per_relator.iter().map(|r| r.rank).max().unwrap_or(0);
    let codim_bound = word_count * p.relator_count() * worst;
    diag.kernel_dim = Some(kernel.dim());
    diag.kept_dim = Some(k);
    diag.word_count = Some(word_count);
    diag.codim_bound = Some(codim_bound);
    if n - k > word_count * kernel.codim() {
        return Err(StabilizeError::Internal(format!(
            "kept subspace has codimension {} above {word_count}·{}",
            n - k,
            kernel.codim()
        )));
    }
    if !a.mats().iter().all(|ai| kept.is_invariant(ai)) {
        diag.note(format!(
            "kept subspace is not invariant under the generators; increase m (the degree bound) to {}",
            degree + 1
        ));
    }

    let e = kept.complete_basis();
    let e_inv = e.inverse()?;
    let pad = (k as i64 - n as i64).rem_euclid(s as i64) as usize;
    let n_prime = n + pad;
    let copies = (n_prime - k) / s;
    diag.padding_blocks = Some(copies);
    let id_pad = Mat::identity(field, pad);
    let frame = e.direct_sum(&id_pad);
    let frame_inv = e_inv.direct_sum(&id_pad);
    let solution = a
        .mats()
        .iter()
        .zip(reference.mats())
        .map(|(ai, ci)| {
            let compressed = ai.conjugate(&e_inv, &e).leading_block(k);
            let padded = Mat::direct_sum_all(field, std::iter::once(&compressed).chain(std::iter::repeat_n(ci, copies)));
            padded.conjugate(&frame, &frame_inv)
        })
        .collect();
    let solution = MatTuple::new(field, n_prime, solution)?;
    conclude(p, a, solution, eps, diag)
}

/// [`stabilize_findim`] as an [`ExactSolver`], raising the degree bound
/// while the kept subspace fails to be invariant.
#[derive(Clone, Debug)]
pub struct FindimSolver {
    pub reference: MatTuple,
    /// Starting degree bound; the relator degree when `None`.
    pub degree: Option<usize>,
    pub cap: usize,
}

impl FindimSolver {
    pub fn new(reference: MatTuple) -> FindimSolver {
        FindimSolver { reference, degree: None, cap: DEFAULT_DEGREE_CAP }
    }
}

impl ExactSolver for FindimSolver {
    fn solve(&self, p: &Presentation, a: &MatTuple, eps: &Rational) -> Result<StabilizeOutcome, StabilizeError> {
        let start = self.degree.unwrap_or_else(|| p.max_degree());
        let mut degree = start;
        loop {
            match stabilize_findim(p, degree, &self.reference, a, eps) {
                Err(StabilizeError::NotStabilized(mut o)) if !o.diagnostics.exact => {
                    if degree >= self.cap {
                        o.diagnostics.note(format!("gave up after degree bounds {start}..={degree}"));
                        return Err(StabilizeError::NotStabilized(o));
                    }
                    degree += 1;
                }
                other => return other,
            }
        }
    }
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

    fn square_zero() -> (Presentation, MatTuple) {
        let p = parse_presentation("algebra Q; gens x; rels x*x;").unwrap();
        let jordan = MatTuple::new(q(), 2, vec![Mat::from_i64(q(), &[&[0, 1], &[0, 0]])]).unwrap();
        (p, jordan)
    }

    #[test]
    fn exact_input_is_returned() {
        let (p, c) = square_zero();
        let a = c.amplify(3);
        let out = stabilize_findim(&p, 2, &c, &a, &ratio(1, 4)).unwrap();
        assert_eq!(out.solution, a);
        assert_eq!(out.distances, vec![0]);
        assert_eq!(out.diagnostics.kept_dim, Some(6));
        assert_eq!(out.diagnostics.padding_blocks, Some(0));
    }

    #[test]
    fn repairs_rank_one_noise() {
        let (p, c) = square_zero();
        let mut x = c.amplify(6).into_mats().remove(0);
        x.set(11, 0, &q().one());
        let a = MatTuple::new(q(), 12, vec![x]).unwrap();
        let out = stabilize_findim(&p, 2, &c, &a, &ratio(1, 2)).unwrap();
        assert!(out.verified);
        assert!(p.is_solution(&out.solution).unwrap());
        let k = out.diagnostics.kept_dim.unwrap();
        assert!(out.max_distance() <= 12 - k + 2);
    }

    #[test]
    fn rejects_bad_reference() {
        let (p, c) = square_zero();
        let bad = MatTuple::new(q(), 1, vec![Mat::identity(q(), 1)]).unwrap();
        assert!(matches!(stabilize_findim(&p, 2, &bad, &c, &ratio(1, 2)), Err(StabilizeError::Precondition(_))));
        assert!(stabilize_findim(&p, 0, &c, &c, &ratio(1, 2)).unwrap().verified);
    }

    #[test]
    fn far_input_is_not_stabilized() {
        let (p, c) = square_zero();
        let a = MatTuple::new(q(), 4, vec![Mat::identity(q(), 4)]).unwrap();
        let err = stabilize_findim(&p, 2, &c, &a, &ratio(1, 2)).unwrap_err();
        let StabilizeError::NotStabilized(o) = err else { panic!("expected NotStabilized") };
        assert!(!o.verified);
        assert_eq!(o.diagnostics.kept_dim, Some(0));
        let solver = FindimSolver::new(c);
        assert!(solver.solve(&p, &a, &ratio(1, 2)).is_err());
    }
}
