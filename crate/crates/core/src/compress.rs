//! Compression of an exact solution of one size onto an approximate solution
//! of another, keeping the relators satisfied.

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::approx::{defect, hat_distances, is_eps_approx};
use crate::exactmat::{IndependentSet, Mat};
use crate::freealg::{EvalError, MatTuple, Presentation};
use crate::rational::{floor_usize, format_rational, from_usize, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompressError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("target size {n_prime} does not exceed (1+εd)n = {limit}")]
    NotOversized { n_prime: usize, limit: String },
    #[error("generator {generator} is at hat distance {distance}, not below εn = {threshold}")]
    TooFar { generator: usize, distance: usize, threshold: String },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Result of [`compress_align`].
#[derive(Clone, Debug)]
pub struct Alignment {
    /// Change of basis `E` of size `n'`.
    pub e: Mat,
    pub e_inv: Mat,
    /// Leading `⌊(1+εd)n⌋` block of every `E⁻¹B_iE`.
    pub compressed: MatTuple,
    /// Number of vectors added for each generator.
    pub added: Vec<usize>,
    /// Number of leading basis vectors outside the common kernel.
    pub used: usize,
}

/// `⌊(1+εd)n⌋`.
pub fn kept_size(eps: &Rational, d: usize, n: usize) -> usize {
    floor_usize(&band_high(eps, d, n))
}

fn band_high(eps: &Rational, d: usize, n: usize) -> Rational {
    (Rational::one() + eps * from_usize(d)) * from_usize(n)
}

/// Finds `E` fixing the hat of every `A_i` under conjugation and such that the
/// trailing `n' − ⌊(1+εd)n⌋` columns of each `E⁻¹B_iE` vanish.
///
/// Requires `n' > (1+εd)n` and every `hat_dist(A_i, B_i) < εn`.
pub fn compress_align(a: &MatTuple, b: &MatTuple, eps: &Rational) -> Result<Alignment, CompressError> {
    let distances = hat_distances(a, b)?;
    let (n, n_prime, d) = (a.size(), b.size(), a.arity());
    let high = band_high(eps, d, n);
    if from_usize(n_prime) <= high {
        return Err(CompressError::NotOversized { n_prime, limit: format_rational(&high) });
    }
    let threshold = eps * from_usize(n);
    if let Some((generator, &distance)) = distances.iter().enumerate().find(|(_, &x)| from_usize(x) >= threshold) {
        return Err(CompressError::TooFar { generator, distance, threshold: format_rational(&threshold) });
    }
    let field = a.field();
    let id = Mat::identity(field, n_prime);
    let mut basis = IndependentSet::new(field, n_prime);
    let mut columns: Vec<Mat> = Vec::new();
    for j in 0..n {
        basis.insert_column(&id, j);
        columns.push(id.column(j));
    }
    // columns of `common` span the intersection of W with the kernels seen so far
    let mut common = id.submatrix(0..n_prime, n..n_prime);
    let mut added = Vec::with_capacity(d);
    for bi in b.mats() {
        let image = bi * &common;
        let r = image.rref();
        if from_usize(r.rank()) > threshold {
            return Err(CompressError::Internal(format!(
                "image of size {} exceeds εn = {}",
                r.rank(),
                format_rational(&threshold)
            )));
        }
        added.push(r.rank());
        for &p in &r.pivots {
            if basis.insert_column(&common, p) {
                columns.push(common.column(p));
            }
        }
        common = &common * &image.kernel().basis().clone();
    }
    let used = columns.len();
    for j in 0..common.ncols() {
        if basis.insert_column(&common, j) {
            columns.push(common.column(j));
        }
    }
    if columns.len() != n_prime {
        return Err(CompressError::Internal(format!(
            "completion reached {} of {n_prime} basis vectors",
            columns.len()
        )));
    }
    let e = columns.iter().skip(1).fold(columns[0].clone(), |acc, c| acc.hstack(c));
    let e_inv = e.inverse().map_err(|_| CompressError::Internal("basis is singular".into()))?;
    let kept = floor_usize(&high);
    let conj: Vec<Mat> = b.mats().iter().map(|m| m.conjugate(&e_inv, &e)).collect();
    for (i, c) in conj.iter().enumerate() {
        if !c.submatrix(0..n_prime, kept..n_prime).is_zero() {
            return Err(CompressError::Internal(format!("trailing columns of generator {i} are nonzero")));
        }
        let ai = a.mats()[i].resized(n_prime);
        if ai.conjugate(&e_inv, &e) != ai {
            return Err(CompressError::Internal(format!("conjugation moves generator {i}")));
        }
    }
    let compressed = MatTuple::new(field, kept, conj.iter().map(|c| c.leading_block(kept)).collect())?;
    Ok(Alignment { e, e_inv, compressed, added, used })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResizeCase {
    /// Size already within the band.
    PassThrough,
    /// Oversized solution compressed by [`compress_align`].
    Compressed,
    /// Undersized solution padded with zeros.
    ZeroPadded,
}

#[derive(Clone, Debug)]
pub struct Resized {
    pub solution: MatTuple,
    pub case: ResizeCase,
    pub distances: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResizeError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("defect {defect} is not below δ = {delta}")]
    DefectTooLarge { defect: String, delta: String },
    #[error("the given solution does not satisfy every relator")]
    NotExact,
    #[error("the given solution is not an ε-approximation (distances {0:?})")]
    NotApproximation(Vec<usize>),
    #[error("size {n_prime} is below the band and relator {relator} has a nonzero constant term; the inputs are inconsistent")]
    ImpossibleInput { n_prime: usize, relator: usize },
    #[error(transparent)]
    Compress(#[from] CompressError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Turns an exact solution `b` that ε-approximates `a` (whose defect is
/// below `delta`) into one whose size `m` lies in
/// `[(1−δ)n/(1+εd), (1+εd)n]`.
pub fn resize_solution(
    p: &Presentation,
    a: &MatTuple,
    delta: &Rational,
    b: &MatTuple,
    eps: &Rational,
) -> Result<Resized, ResizeError> {
    let report = defect(p, a)?;
    if &report.max_defect >= delta {
        return Err(ResizeError::DefectTooLarge {
            defect: format_rational(&report.max_defect),
            delta: format_rational(delta),
        });
    }
    if !p.is_solution(b)? {
        return Err(ResizeError::NotExact);
    }
    let approx = is_eps_approx(a, b, eps)?;
    if !approx.holds {
        return Err(ResizeError::NotApproximation(approx.distances));
    }
    let (n, n_prime, d) = (a.size(), b.size(), a.arity());
    let high = band_high(eps, d, n);
    let low = (Rational::one() - delta) / (Rational::one() + eps * from_usize(d)) * from_usize(n);
    let size = from_usize(n_prime);
    let (solution, case) = if low <= size && size <= high {
        (b.clone(), ResizeCase::PassThrough)
    } else if size > high {
        (compress_align(a, b, eps)?.compressed, ResizeCase::Compressed)
    } else if let Some(relator) = p.expanded_relators().iter().position(|r| !r.constant_term().is_zero()) {
        return Err(ResizeError::ImpossibleInput { n_prime, relator });
    } else {
        (b.resized(n), ResizeCase::ZeroPadded)
    };
    let m = from_usize(solution.size());
    if m < low || m > high {
        return Err(ResizeError::Internal(format!("size {} left the band", solution.size())));
    }
    let ed = eps * from_usize(d);
    if delta < &(&ed * &ed) && m < (Rational::one() - &ed) * from_usize(n) {
        return Err(ResizeError::Internal(format!("size {} below (1−εd)n", solution.size())));
    }
    if !p.is_solution(&solution)? {
        return Err(ResizeError::Internal("resized tuple is not a solution".into()));
    }
    let check = is_eps_approx(a, &solution, eps)?;
    if !check.holds {
        return Err(ResizeError::Internal(format!("resized tuple is too far: {:?}", check.distances)));
    }
    Ok(Resized { solution, case, distances: check.distances })
}
