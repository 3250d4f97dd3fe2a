//! Row reduction kernels.
//!
//! Over ℚ rows are scaled to integer vectors and eliminated fraction-free,
//! dividing each row by its content after every update; only the final
//! normalization by the pivot introduces denominators. Over 𝔽_p plain
//! Gauss–Jordan is used. Pivots are chosen leftmost column first, topmost
//! row within that column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::arith::{Arith, Entries, FpOps};
use super::field::FieldSpec;
use super::mat::Mat;
use crate::rational::Rational;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Mat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub(crate) fn rref(m: &Mat) -> Rref {
    match (&m.entries, m.field) {
        (Entries::Rational(v), _) => {
            let (rows, pivots) = rref_q(int_rows(v, m.rows, m.cols), m.cols);
            let mut out = Vec::with_capacity(m.rows * m.cols);
            for row in &rows {
                let lead = row.iter().find(|x| !x.is_zero()).cloned();
                for x in row {
                    out.push(match &lead {
                        Some(l) => Rational::new(x.clone(), l.clone()),
                        None => Rational::zero(),
                    });
                }
            }
            Rref {
                matrix: Mat::from_entries(m.field, m.rows, m.cols, Entries::Rational(out)),
                pivots,
            }
        }
        (Entries::Modular(v), FieldSpec::Prime(p)) => {
            let mut a = v.clone();
            let pivots = rref_generic(FpOps(p), &mut a, m.rows, m.cols, true);
            Rref {
                matrix: Mat::from_entries(m.field, m.rows, m.cols, Entries::Modular(a)),
                pivots,
            }
        }
        _ => unreachable!(),
    }
}

pub(crate) fn rank(m: &Mat) -> usize {
    match (&m.entries, m.field) {
        (Entries::Rational(v), _) => rank_bareiss(int_rows(v, m.rows, m.cols), m.cols),
        (Entries::Modular(v), FieldSpec::Prime(p)) => {
            let mut a = v.clone();
            rref_generic(FpOps(p), &mut a, m.rows, m.cols, false).len()
        }
        _ => unreachable!(),
    }
}

/// Inverse via reduction of `[A | I]`; `None` when singular.
pub(crate) fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.rows;
    let aug = m.hstack(&Mat::identity(m.field, n));
    let r = rref(&aug);
    if n > 0 && r.pivots[n - 1] >= n {
        return None;
    }
    Some(r.matrix.submatrix(0..n, n..2 * n))
}

/// Basis of the right kernel as the columns of an `cols × nullity` matrix,
/// one column per free variable in increasing order.
pub(crate) fn kernel_basis(m: &Mat) -> Mat {
    let r = rref(m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut k = Mat::zeros(m.field, n, free.len());
    let one = m.field.one();
    for (c, &f) in free.iter().enumerate() {
        k.set(f, c, &one);
        for (i, &p) in r.pivots.iter().enumerate() {
            let v = r.matrix.get(i, f);
            if !v.is_zero() {
                k.set(p, c, &-&v);
            }
        }
    }
    k
}

fn int_rows(v: &[Rational], rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    (0..rows)
        .map(|i| {
            let row = &v[i * cols..(i + 1) * cols];
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
            reduce_content(&mut out);
            out
        })
        .collect()
}

fn reduce_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = &*x / &g;
        }
    }
}

fn rref_q(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (prow, tail) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            eliminate_int(row, prow, c);
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// `row ← a·row − b·prow` with `a·row[c] = b·prow[c]`, then strip content.
fn eliminate_int(row: &mut [BigInt], prow: &[BigInt], c: usize) {
    if row[c].is_zero() {
        return;
    }
    let g = prow[c].gcd(&row[c]);
    let a = &prow[c] / &g;
    let b = &row[c] / &g;
    for (x, y) in row.iter_mut().zip(prow) {
        if y.is_zero() {
            if !x.is_zero() {
                *x = &*x * &a;
            }
        } else {
            *x = &*x * &a - y * &b;
        }
    }
    reduce_content(row);
}

/// Forward-only fraction-free elimination with exact division by the
/// previous pivot.
fn rank_bareiss(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            for j in c + 1..cols {
                row[j] = (&row[j] * &prow[c] - &prow[j] * &row[c]) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = prow[c].clone();
        r += 1;
    }
    r
}

/// Gauss–Jordan over a field kernel. With `full = false` only the forward
/// pass runs (enough for rank).
fn rref_generic<A: Arith>(ops: A, a: &mut [A::E], rows: usize, cols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ops.is_zero(&a[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(r * cols + j, p * cols + j);
            }
        }
        let inv = ops.inv(&a[r * cols + c]);
        for j in c..cols {
            a[r * cols + j] = ops.mul(&a[r * cols + j], &inv);
        }
        let start = if full { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c].clone();
            if ops.is_zero(&f) {
                continue;
            }
            for j in c..cols {
                let t = ops.mul(&f, &a[r * cols + j]);
                a[i * cols + j] = ops.sub(&a[i * cols + j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn rref_of_rank_two() {
        let m = Mat::from_i64(q(), &[&[2, 4, 1], &[1, 2, 1], &[3, 6, 2]]);
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.matrix, Mat::from_i64(q(), &[&[1, 2, 0], &[0, 0, 1], &[0, 0, 0]]));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_with_fractions() {
        let m = Mat::from_i64(q(), &[&[3, 1], &[1, 2]]);
        let r = m.rref();
        assert!(r.matrix.is_identity());
        let k = Mat::from_i64(q(), &[&[2, 1, 1]]);
        let r = k.rref();
        assert_eq!(r.matrix.get(0, 1).as_rational(), Some(&ratio(1, 2)));
    }

    #[test]
    fn kernel_basis_annihilates() {
        let m = Mat::from_i64(q(), &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k.ncols(), 2);
        assert!((&m * &k).is_zero());
    }

    #[test]
    fn singular_inverse_is_none() {
        let m = Mat::from_i64(q(), &[&[1, 0, 0], &[0, 0, 1], &[0, 0, 1]]);
        assert!(inverse(&m).is_none());
        let id = Mat::identity(q(), 0);
        assert_eq!(inverse(&id), Some(id));
    }
}
