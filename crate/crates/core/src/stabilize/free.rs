use num_integer::Integer;

use crate::exactmat::Mat;
use crate::freealg::{free_product_presentation, MatTuple, Presentation};
use crate::rational::Rational;

use super::{call_solver, conclude, Diagnostics, ExactSolver, StabilizeError, StabilizeOutcome};

/// The least `k ≥ 0` (and its partner `k'`) with `k·g − k'·g' = gcd(g, g')`
/// and `k' ≥ 0`. `None` when either step is zero.
pub fn compute_bezout(g: usize, g2: usize) -> Option<(usize, usize)> {
    if g == 0 || g2 == 0 {
        return None;
    }
    let c = g.gcd(&g2);
    (0..=g2 / c).map(|k| k * g).find(|&kg| kg >= c && (kg - c).is_multiple_of(g2)).map(|kg| (kg / g, (kg - c) / g2))
}

/// Fixed data for gluing solutions of two factors into a solution of
/// their free product: exact representations of sizes `k·g` and `k'·g'`
/// with `k·g − k'·g' = gcd(g, g')`.
#[derive(Clone, Debug)]
pub struct FreeProductData {
    pub left: Presentation,
    pub right: Presentation,
    pub left_rep: MatTuple,
    pub right_rep: MatTuple,
    /// `g`: sizes of left solutions must be multiples of it.
    pub left_step: usize,
    pub right_step: usize,
    /// `k`, with `left_rep` of size `k·g`.
    pub left_count: usize,
    pub right_count: usize,
}

impl FreeProductData {
    fn check(&self) -> Result<usize, StabilizeError> {
        let (g, g2, k, k2) = (self.left_step, self.right_step, self.left_count, self.right_count);
        if g == 0 || g2 == 0 {
            return Err(StabilizeError::DimensionArithmetic("steps g and g' must be positive".into()));
        }
        if self.left_rep.size() != k * g || self.right_rep.size() != k2 * g2 {
            return Err(StabilizeError::DimensionArithmetic(format!(
                "representation sizes {} and {} differ from k·g = {} and k'·g' = {}",
                self.left_rep.size(),
                self.right_rep.size(),
                k * g,
                k2 * g2
            )));
        }
        let c = g.gcd(&g2);
        if k * g != k2 * g2 + c {
            return Err(StabilizeError::DimensionArithmetic(format!("k·g − k'·g' = {k}·{g} − {k2}·{g2} is not gcd = {c}")));
        }
        if !self.left.is_solution(&self.left_rep)? || !self.right.is_solution(&self.right_rep)? {
            return Err(StabilizeError::Precondition("representations must be exact solutions".into()));
        }
        Ok(c)
    }
}

/// Glues exact solutions of sizes `m ≤ m'` by appending `ρ ⊗ Id_q` and
/// `ρ' ⊗ Id_q` with `q = (m' − m)/gcd(g, g')`, then verifies against the
/// free-product presentation and the approximate `input`.
pub fn stabilize_free_product(
    data: &FreeProductData,
    left_solution: &MatTuple,
    right_solution: &MatTuple,
    input: &MatTuple,
    eps: &Rational,
) -> Result<StabilizeOutcome, StabilizeError> {
    let c = data.check()?;
    let pres = free_product_presentation(&data.left, &data.right)?;
    pres.check_tuple(input)?;
    let (m, m2) = (left_solution.size(), right_solution.size());
    if m % data.left_step != 0 {
        return Err(StabilizeError::DimensionArithmetic(format!("m = {m} is not ≡ 0 (mod g = {})", data.left_step)));
    }
    if m2 % data.right_step != 0 {
        return Err(StabilizeError::DimensionArithmetic(format!("m' = {m2} is not ≡ 0 (mod g' = {})", data.right_step)));
    }
    if m > m2 {
        return Err(StabilizeError::DimensionArithmetic(format!("m = {m} exceeds m' = {m2}")));
    }
    if (m2 - m) % c != 0 {
        return Err(StabilizeError::DimensionArithmetic(format!("gcd(g, g') = {c} does not divide m' − m = {}", m2 - m)));
    }
    let q = (m2 - m) / c;
    let mut diag = Diagnostics::new("free-product", input.size());
    diag.padding_blocks = Some(q);
    let field = input.field();
    let id_q = Mat::identity(field, q);
    let glue = |sol: &MatTuple, rep: &MatTuple| -> Vec<Mat> {
        sol.mats().iter().zip(rep.mats()).map(|(b, r)| b.direct_sum(&r.kronecker(&id_q))).collect()
    };
    let mut mats = glue(left_solution, &data.left_rep);
    mats.extend(glue(right_solution, &data.right_rep));
    let solution = MatTuple::new(field, m + q * data.left_rep.size(), mats)?;
    conclude(&pres, input, solution, eps, diag)
}

/// Free-product stabilizer from stabilizers of the factors. When the right
/// solution comes out smaller it is first padded with copies of the right
/// representation.
pub struct FreeProductSolver {
    pub data: FreeProductData,
    pub left_solver: Box<dyn ExactSolver>,
    pub right_solver: Box<dyn ExactSolver>,
}

impl ExactSolver for FreeProductSolver {
    fn solve(&self, p: &Presentation, a: &MatTuple, eps: &Rational) -> Result<StabilizeOutcome, StabilizeError> {
        p.check_tuple(a)?;
        let d = self.data.left.arity();
        let left = call_solver("left", self.left_solver.as_ref(), &self.data.left, &a.slice(0..d), eps)?;
        let right = call_solver("right", self.right_solver.as_ref(), &self.data.right, &a.slice(d..a.arity()), eps)?;
        let mut right_sol = right.solution;
        while right_sol.size() < left.solution.size() {
            if self.data.right_rep.size() == 0 {
                return Err(StabilizeError::DimensionArithmetic("right representation is empty".into()));
            }
            right_sol = right_sol.direct_sum(&self.data.right_rep);
        }
        let mut out = stabilize_free_product(&self.data, &left.solution, &right_sol, a, eps)?;
        out.diagnostics.components.push(left.diagnostics);
        out.diagnostics.components.push(right.diagnostics);
        Ok(out)
    }
}
