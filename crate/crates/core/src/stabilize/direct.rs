use num_traits::One;

use crate::exactmat::Mat;
use crate::freealg::{direct_product_presentation, MatTuple, Presentation};
use crate::rational::{from_usize, Rational};

use super::rounding::{idempotent_frame, round_idempotent};
use super::{call_solver, conclude, Diagnostics, ExactSolver, StabilizeError, StabilizeOutcome};

/// Stabilizer for `A × A'` from stabilizers of the factors.
///
/// `t` lists images of `x⃗, y⃗, e_1, e_2` as in
/// [`direct_product_presentation`]. The `e_1` image is rounded to an
/// idempotent of rank `k`; when `k ≤ εn/2` only the right factor is solved,
/// when `k ≥ (1 − ε/2)n` only the left one, and otherwise both blocks are
/// solved and reassembled. Component solvers receive the same `ε`.
pub fn stabilize_direct_product(
    left: &Presentation,
    left_solver: &dyn ExactSolver,
    right: &Presentation,
    right_solver: &dyn ExactSolver,
    t: &MatTuple,
    eps: &Rational,
) -> Result<StabilizeOutcome, StabilizeError> {
    let product = direct_product_presentation(left, right)?;
    product.check_tuple(t)?;
    let field = t.field();
    let n = t.size();
    let (d, s) = (left.arity(), right.arity());
    let mut diag = Diagnostics::new("direct-product", n);
    let e1 = round_idempotent(&t.mats()[d + s]);
    let (p_inv, p, k) = idempotent_frame(&e1);
    diag.kept_dim = Some(k);
    let half = eps / Rational::from_integer(2.into());
    let size = from_usize(n);
    let kk = from_usize(k);

    let solution = if kk <= &half * &size {
        diag.case = Some("left-empty".into());
        let out = call_solver("right", right_solver, right, &t.slice(d..d + s), eps)?;
        let m = out.solution.size();
        diag.components.push(out.diagnostics);
        let mut mats = vec![Mat::zeros(field, m, m); d];
        mats.extend(out.solution.into_mats());
        mats.push(Mat::zeros(field, m, m));
        mats.push(Mat::identity(field, m));
        MatTuple::new(field, m, mats)?
    } else if kk >= (Rational::one() - &half) * &size {
        diag.case = Some("right-empty".into());
        let out = call_solver("left", left_solver, left, &t.slice(0..d), eps)?;
        let m = out.solution.size();
        diag.components.push(out.diagnostics);
        let mut mats = out.solution.into_mats();
        mats.extend(vec![Mat::zeros(field, m, m); s]);
        mats.push(Mat::identity(field, m));
        mats.push(Mat::zeros(field, m, m));
        MatTuple::new(field, m, mats)?
    } else {
        diag.case = Some("split".into());
        let framed = t.conjugate(&p_inv, &p);
        let a_block = MatTuple::new(field, k, framed.mats()[..d].iter().map(|x| x.leading_block(k)).collect())?;
        let b_block =
            MatTuple::new(field, n - k, framed.mats()[d..d + s].iter().map(|x| x.submatrix(k..n, k..n)).collect())?;
        let out_a = call_solver("left", left_solver, left, &a_block, eps)?;
        let out_b = call_solver("right", right_solver, right, &b_block, eps)?;
        let k1 = out_a.solution.size().max(k);
        let k2 = out_b.solution.size().max(n - k);
        for (pres, out, name) in [(left, &out_a, "left"), (right, &out_b, "right")] {
            let want = if name == "left" { k } else { n - k };
            if out.solution.size() < want && !pres.zero_is_solution() {
                return Err(StabilizeError::DimensionArithmetic(format!(
                    "{name} solution has size {} below the block size {want} and zero padding breaks its relators",
                    out.solution.size()
                )));
            }
        }
        let a_sol = out_a.solution.resized(k1);
        let b_sol = out_b.solution.resized(k2);
        diag.components.push(out_a.diagnostics);
        diag.components.push(out_b.diagnostics);
        let n_prime = k1 + k2;
        // cols[j] is the block coordinate placed at frame position j: the
        // first k left and n − k right coordinates line up with the split
        let cols: Vec<usize> = (0..k).chain(k1..k1 + n - k).chain(k..k1).chain(k1 + n - k..n_prime).collect();
        let perm = Mat::permutation(field, &cols);
        let id_pad = Mat::identity(field, n_prime - n);
        let frame = &p.direct_sum(&id_pad) * &perm.transpose();
        let frame_inv = &perm * &p_inv.direct_sum(&id_pad);
        let zero1 = Mat::zeros(field, k1, k1);
        let zero2 = Mat::zeros(field, k2, k2);
        let mut mats: Vec<Mat> = a_sol.mats().iter().map(|x| x.direct_sum(&zero2)).collect();
        mats.extend(b_sol.mats().iter().map(|x| zero1.direct_sum(x)));
        mats.push(Mat::identity(field, k1).direct_sum(&zero2));
        mats.push(zero1.direct_sum(&Mat::identity(field, k2)));
        let mats = mats.iter().map(|x| x.conjugate(&frame, &frame_inv)).collect();
        MatTuple::new(field, n_prime, mats)?
    };
    conclude(&product, t, solution, eps, diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::FieldSpec;
    use crate::freealg::parse_presentation;
    use crate::rational::ratio;
    use crate::stabilize::FindimSolver;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn setup() -> (Presentation, FindimSolver, Presentation, FindimSolver) {
        let left = parse_presentation("algebra Q; gens x; rels x*x;").unwrap();
        let right = parse_presentation("algebra Q; gens y; rels y*y - y;").unwrap();
        let jordan = MatTuple::new(q(), 2, vec![Mat::from_i64(q(), &[&[0, 1], &[0, 0]])]).unwrap();
        let proj = MatTuple::new(q(), 1, vec![Mat::identity(q(), 1)]).unwrap();
        (left, FindimSolver::new(jordan), right, FindimSolver::new(proj))
    }

    fn assemble(x: &Mat, y: &Mat) -> MatTuple {
        let (a, b) = (x.nrows(), y.nrows());
        let f = x.field();
        MatTuple::from_mats(vec![
            x.direct_sum(&Mat::zeros(f, b, b)),
            Mat::zeros(f, a, a).direct_sum(y),
            Mat::identity(f, a).direct_sum(&Mat::zeros(f, b, b)),
            Mat::zeros(f, a, a).direct_sum(&Mat::identity(f, b)),
        ])
        .unwrap()
    }

    #[test]
    fn exact_input_passes_through() {
        let (l, ls, r, rs) = setup();
        let x = Mat::identity(q(), 2).kronecker(&Mat::from_i64(q(), &[&[0, 1], &[0, 0]]));
        let y = Mat::diag(q(), &[1, 0, 1]);
        let t = assemble(&x, &y);
        let out = stabilize_direct_product(&l, &ls, &r, &rs, &t, &ratio(1, 4)).unwrap();
        assert_eq!(out.diagnostics.case.as_deref(), Some("split"));
        assert_eq!(out.max_distance(), 0);
    }

    #[test]
    fn perturbed_idempotent_is_rounded() {
        let (l, ls, r, rs) = setup();
        let x = Mat::identity(q(), 4).kronecker(&Mat::from_i64(q(), &[&[0, 1], &[0, 0]]));
        let y = Mat::diag(q(), &[1, 0, 1, 1, 0, 1, 0, 1]);
        let mut t = assemble(&x, &y).into_mats();
        t[2].set(0, 15, &q().from_i64(3));
        let t = MatTuple::from_mats(t).unwrap();
        let out = stabilize_direct_product(&l, &ls, &r, &rs, &t, &ratio(1, 2)).unwrap();
        assert!(out.verified);
        assert_eq!(out.diagnostics.case.as_deref(), Some("split"));
    }

    #[test]
    fn tiny_left_block_is_dropped() {
        let (l, ls, r, rs) = setup();
        let y = Mat::diag(q(), &[1, 0, 1, 1, 0, 1, 0, 1, 1, 1]);
        let mut t = assemble(&Mat::zeros(q(), 0, 0), &y).into_mats();
        t[2].set(3, 3, &q().one());
        let t = MatTuple::from_mats(t).unwrap();
        let out = stabilize_direct_product(&l, &ls, &r, &rs, &t, &ratio(1, 2)).unwrap();
        assert_eq!(out.diagnostics.case.as_deref(), Some("left-empty"));
        assert!(out.solution.mats()[0].is_zero());
    }
}
