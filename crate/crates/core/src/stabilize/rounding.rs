//! Rounding of nearly-structured matrices to exactly structured ones.

use crate::exactmat::{complete_basis, Mat, MatError, Subspace};

use super::StabilizeError;

/// Replaces `a1` by `a1 + D` with `(a1 + D)·a2 = 0` and
/// `rank D ≤ rank(a1·a2)`; `a2` is returned unchanged.
pub fn stabilize_zero_product(a1: &Mat, a2: &Mat) -> Result<(Mat, Mat), MatError> {
    let product = a1.try_mul(a2)?;
    if !a1.is_square() || a1.nrows() != a2.nrows() {
        return Err(MatError::Shape { op: "zero product", left: (a1.nrows(), a1.ncols()), right: (a2.nrows(), a2.ncols()) });
    }
    if product.is_zero() {
        return Ok((a1.clone(), a2.clone()));
    }
    // a2·v_i for the pivot columns v_i form a basis of the image of a2
    let pivots = a2.rref().pivots;
    let r = pivots.len();
    let images = a2.select_columns(&pivots);
    let targets = -&product.select_columns(&pivots);
    let basis = complete_basis(&images)?;
    let coords = basis.inverse()?.submatrix(0..r, 0..a2.nrows());
    let correction = &targets * &coords;
    Ok((a1 + &correction, a2.clone()))
}

/// An idempotent `E` with `rank(E − c) ≤ rank(c² − c)`: the projection onto
/// the 1-eigenspace of `c` along its kernel and a complement.
pub fn round_idempotent(c: &Mat) -> Mat {
    assert!(c.is_square(), "round_idempotent needs a square matrix");
    let n = c.nrows();
    let field = c.field();
    let fixed = (c - &Mat::identity(field, n)).kernel();
    let killed = c.kernel();
    let r = fixed.dim();
    let d = complete_basis(&fixed.basis().hstack(killed.basis())).expect("eigenspaces are independent");
    let d_inv = d.inverse().expect("completed basis is invertible");
    let proj = Mat::identity(field, r).direct_sum(&Mat::zeros(field, n - r, n - r));
    proj.conjugate(&d, &d_inv)
}

/// Block decomposition of a matrix along an idempotent.
#[derive(Clone, Debug)]
pub struct IdempotentSplit {
    /// `D` with `D E D⁻¹ = Id_r ⊕ 0`.
    pub d: Mat,
    pub d_inv: Mat,
    pub rank: usize,
    /// Leading `r × r` block of `D M D⁻¹`.
    pub block: Mat,
    /// `D⁻¹ (block ⊕ 0) D`.
    pub approx: Mat,
    /// `rank(M − approx)`.
    pub distance: usize,
    /// `rank(ME − M) + rank(EM − M)`.
    pub bound: usize,
}

/// `D` with `D E D⁻¹ = Id_r ⊕ 0`, built from bases of the image and kernel.
pub(crate) fn idempotent_frame(e: &Mat) -> (Mat, Mat, usize) {
    let image = e.image();
    let r = image.dim();
    let p = image.basis().hstack(e.kernel().basis());
    let p_inv = p.inverse().expect("image and kernel of an idempotent are complementary");
    (p_inv, p, r)
}

/// Splits `m` along the idempotent `e`, keeping the block on the image.
pub fn split_idempotent_block(e: &Mat, m: &Mat) -> Result<IdempotentSplit, StabilizeError> {
    let e2 = e.try_mul(e)?;
    if e2 != *e {
        return Err(StabilizeError::Precondition("matrix is not idempotent".into()));
    }
    let me = m.try_mul(e)?;
    let em = e.try_mul(m)?;
    let (d, d_inv, r) = idempotent_frame(e);
    let n = e.nrows();
    let block = m.conjugate(&d, &d_inv).leading_block(r);
    let field = e.field();
    let approx = block.direct_sum(&Mat::zeros(field, n - r, n - r)).conjugate(&d_inv, &d);
    Ok(IdempotentSplit {
        distance: (m - &approx).rank(),
        bound: (&me - m).rank() + (&em - m).rank(),
        d,
        d_inv,
        rank: r,
        block,
        approx,
    })
}

/// An invertible replacement of `a` with its quality figures.
#[derive(Clone, Debug)]
pub struct InvertibleRounding {
    pub u: Mat,
    /// `rank(U − A)`, at most `n − rank A`.
    pub distance: usize,
    /// `rank(AB − Id)` for the partner matrix `B`.
    pub pair_defect: usize,
}

/// Extends the action of `a` on a complement of its kernel to an
/// isomorphism, sending a kernel basis onto a complement of the image.
pub fn round_invertible(a: &Mat, b: &Mat) -> Result<InvertibleRounding, MatError> {
    let n = a.nrows();
    let pair = a.try_mul(b)?;
    if !pair.is_square() || !a.is_square() {
        return Err(MatError::NotSquare(a.nrows(), a.ncols()));
    }
    let pair_defect = (&pair - &Mat::identity(a.field(), n)).rank();
    let kernel = a.kernel();
    let k = kernel.dim();
    let source = complete_basis(kernel.basis())?;
    let rest = source.submatrix(0..n, k..n);
    let moved = a * &rest;
    let target = complete_basis(&moved)?;
    let extra = target.submatrix(0..n, n - k..n);
    let u = &extra.hstack(&moved) * &source.inverse()?;
    Ok(InvertibleRounding { distance: (&u - a).rank(), u, pair_defect })
}

/// A frame `P` with `P⁻¹ E_ij P = e_ij ⊗ Id_q` for an exact system of
/// `m × m` matrix units. Coordinate `(i, t)` of the frame is `i·q + t`.
#[derive(Clone, Debug)]
pub struct UnitFrame {
    pub m: usize,
    pub q: usize,
    pub p: Mat,
    pub p_inv: Mat,
}

impl UnitFrame {
    /// Checks the unit relations exactly and builds the frame from a basis
    /// of the image of `E_11` pushed forward by each `E_i1`.
    pub fn new(units: &[Mat]) -> Result<UnitFrame, StabilizeError> {
        let m = (0..=units.len()).find(|m| m * m >= units.len()).unwrap_or(0);
        if m == 0 || m * m != units.len() {
            return Err(StabilizeError::Precondition(format!("{} matrices is not a square number of units", units.len())));
        }
        let field = units[0].field();
        let n = units[0].nrows();
        let e = |i: usize, j: usize| &units[i * m + j];
        let mut trace = Mat::zeros(field, n, n);
        for i in 0..m {
            trace = trace.try_add(e(i, i))?;
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let prod = e(i, j).try_mul(e(k, l))?;
                        let ok = if j == k { prod == *e(i, l) } else { prod.is_zero() };
                        if !ok {
                            return Err(StabilizeError::Precondition(format!(
                                "unit relation e{}{}·e{}{} fails",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1
                            )));
                        }
                    }
                }
            }
        }
        if !trace.is_identity() {
            return Err(StabilizeError::Precondition("diagonal units do not sum to the identity".into()));
        }
        let seed = Subspace::span(e(0, 0));
        let q = seed.dim();
        if m * q != n {
            return Err(StabilizeError::Internal(format!("unit system of size {n} has rank-{q} diagonal units")));
        }
        let cols: Vec<Mat> = (0..m).map(|i| e(i, 0) * seed.basis()).collect();
        let p = cols.iter().fold(Mat::zeros(field, n, 0), |acc, c| acc.hstack(c));
        let p_inv = p.inverse().map_err(|_| StabilizeError::Internal("unit frame is singular".into()))?;
        Ok(UnitFrame { m, q, p, p_inv })
    }

    pub fn size(&self) -> usize {
        self.m * self.q
    }

    /// `P⁻¹ X P`.
    pub fn to_frame(&self, x: &Mat) -> Mat {
        x.conjugate(&self.p_inv, &self.p)
    }

    /// `P X P⁻¹`.
    pub fn from_frame(&self, x: &Mat) -> Mat {
        x.conjugate(&self.p, &self.p_inv)
    }
}

/// Result of [`round_matrix_units`].
#[derive(Clone, Debug)]
pub struct UnitRounding {
    pub frame: UnitFrame,
    /// `(1,1)` block of `A` resized to the unit size, read in the frame.
    pub block: Mat,
    /// `P (Id_m ⊗ block) P⁻¹`.
    pub approx: Mat,
    /// Largest hat rank of a commutator `[A, E_ij]`.
    pub lambda: usize,
    /// `|n' − n|`.
    pub size_gap: usize,
    /// Hat distance from `A` to `approx`.
    pub distance: usize,
    /// `m²(λ + 2N)`.
    pub bound: usize,
}

/// Rounds `a` to a matrix commuting with an exact unit system.
pub fn round_matrix_units(units: &[Mat], a: &Mat) -> Result<UnitRounding, StabilizeError> {
    let frame = UnitFrame::new(units)?;
    round_in_frame(frame, units, a)
}

pub(crate) fn round_in_frame(frame: UnitFrame, units: &[Mat], a: &Mat) -> Result<UnitRounding, StabilizeError> {
    let n_prime = frame.size();
    let n = a.nrows();
    let big = n.max(n_prime);
    let wide = a.resized(big);
    let lambda = units
        .iter()
        .map(|u| {
            let u = u.resized(big);
            (&(&wide * &u) - &(&u * &wide)).rank()
        })
        .max()
        .unwrap_or(0);
    let block = frame.to_frame(&a.resized(n_prime)).leading_block(frame.q);
    let field = a.field();
    let approx = frame.from_frame(&Mat::identity(field, frame.m).kronecker(&block));
    let distance = Mat::hat_dist(a, &approx)?;
    let size_gap = n.abs_diff(n_prime);
    let bound = frame.m * frame.m * (lambda + 2 * size_gap);
    Ok(UnitRounding { frame, block, approx, lambda, size_gap, distance, bound })
}
