//! Seeded random matrices and perturbations for tests and experiments.

use rand::Rng;

use crate::exactmat::{FieldSpec, Mat, Scalar};
use crate::freealg::MatTuple;

/// Random entry: uniform in `-3..=3` over ℚ, uniform residue over 𝔽_p.
pub fn random_scalar<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field {
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-3..=3)),
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p.get()) as i64),
    }
}

pub fn random_mat<R: Rng + ?Sized>(field: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Mat {
    Mat::from_fn(field, rows, cols, |_, _| random_scalar(field, rng))
}

/// `u vᵀ` with `u, v` random and nonzero; the empty matrix when `n = 0`.
pub fn random_rank_one<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Mat {
    if n == 0 {
        return Mat::zeros(field, 0, 0);
    }
    let nonzero = |rng: &mut R| loop {
        let v = random_mat(field, n, 1, rng);
        if !v.is_zero() {
            break v;
        }
    };
    let u = nonzero(rng);
    let v = nonzero(rng);
    &u * &v.transpose()
}

/// A sum of `r` random rank-one matrices, so of rank at most `r`.
pub fn random_low_rank<R: Rng + ?Sized>(field: FieldSpec, n: usize, r: usize, rng: &mut R) -> Mat {
    (0..r).fold(Mat::zeros(field, n, n), |acc, _| &acc + &random_rank_one(field, n, rng))
}

/// Product of random unit lower and unit upper triangular matrices,
/// optionally scrambled by a random permutation.
pub fn random_invertible<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Mat {
    let mut lower = Mat::identity(field, n);
    let mut upper = Mat::identity(field, n);
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(0.4) {
                lower.set(i, j, &random_scalar(field, rng));
            }
            if rng.gen_bool(0.4) {
                upper.set(j, i, &random_scalar(field, rng));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    &(&Mat::permutation(field, &perm) * &lower) * &upper
}

/// Adds `count` random rank-one updates, each to a uniformly chosen
/// generator.
pub fn perturb<R: Rng + ?Sized>(tuple: &MatTuple, count: usize, rng: &mut R) -> MatTuple {
    let mut mats = tuple.mats().to_vec();
    if mats.is_empty() {
        return tuple.clone();
    }
    for _ in 0..count {
        let g = rng.gen_range(0..mats.len());
        mats[g] = &mats[g] + &random_rank_one(tuple.field(), tuple.size(), rng);
    }
    MatTuple::new(tuple.field(), tuple.size(), mats).expect("same shape")
}
