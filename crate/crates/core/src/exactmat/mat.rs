use std::fmt;
use std::ops::{Add, Mul, Neg, Range, Sub};

use super::arith::{dispatch, dispatch2, zeros, Arith, Entries};
use super::elim::{self, Rref};
use super::field::{FieldSpec, Scalar};
use super::subspace::Subspace;
use super::MatError;
use crate::rational::{normalized, Rational};

/// A dense matrix over ℚ or 𝔽_p, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub(crate) field: FieldSpec,
    pub(crate) rows: usize,
    pub(crate) cols: usize,
    pub(crate) entries: Entries,
}

impl Mat {
    pub(crate) fn from_entries(field: FieldSpec, rows: usize, cols: usize, entries: Entries) -> Mat {
        debug_assert_eq!(entries.len(), rows * cols);
        Mat { field, rows, cols, entries }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat::from_entries(field, rows, cols, zeros(field, rows * cols))
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        let one = field.one();
        for i in 0..n {
            m.set(i, i, &one);
        }
        m
    }

    /// `s · Id_n`.
    pub fn scalar(n: usize, s: &Scalar) -> Mat {
        Mat::identity(s.field(), n).scale(s)
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut m = Mat::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                m.set(i, j, &v);
            }
        }
        m
    }

    /// Builds a matrix from rows of scalars; all rows must have equal length
    /// and every entry must lie in `field`.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Result<Mat, MatError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatError::Ragged);
        }
        if rows.iter().flatten().any(|s| s.field() != field) {
            return Err(MatError::FieldMismatch);
        }
        Ok(Mat::from_fn(field, rows.len(), cols, |i, j| rows[i][j].clone()))
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Mat::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn diag(field: FieldSpec, d: &[i64]) -> Mat {
        Mat::from_fn(field, d.len(), d.len(), |i, j| {
            if i == j {
                field.from_i64(d[i])
            } else {
                field.zero()
            }
        })
    }

    /// The permutation matrix sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(field: FieldSpec, perm: &[usize]) -> Mat {
        let n = perm.len();
        let mut m = Mat::zeros(field, n, n);
        let one = field.one();
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, &one);
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let k = i * self.cols + j;
        dispatch!(self, ops, v => ops.to_scalar(&v[k]))
    }

    pub fn set(&mut self, i: usize, j: usize, s: &Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let k = i * self.cols + j;
        match (&mut self.entries, self.field) {
            (Entries::Rational(v), _) => v[k] = super::arith::QOps.lift_scalar(s),
            (Entries::Modular(v), FieldSpec::Prime(p)) => v[k] = super::arith::FpOps(p).lift_scalar(s),
            _ => unreachable!(),
        }
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Mat {
        self.select_columns(&[j])
    }

    pub fn is_zero(&self) -> bool {
        dispatch!(self, ops, v => v.iter().all(|x| ops.is_zero(x)))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.field, self.rows)
    }

    fn check_shape(&self, other: &Mat, op: &'static str, ok: bool) -> Result<(), MatError> {
        if self.field != other.field {
            return Err(MatError::FieldMismatch);
        }
        if !ok {
            return Err(MatError::Shape {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat, MatError> {
        self.check_shape(other, "add", self.rows == other.rows && self.cols == other.cols)?;
        let entries = dispatch2!(self, other, ops, x, y => {
            ops.wrap(x.iter().zip(y).map(|(a, b)| ops.add(a, b)).collect())
        });
        Ok(Mat::from_entries(self.field, self.rows, self.cols, entries))
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat, MatError> {
        self.check_shape(other, "sub", self.rows == other.rows && self.cols == other.cols)?;
        let entries = dispatch2!(self, other, ops, x, y => {
            ops.wrap(x.iter().zip(y).map(|(a, b)| ops.sub(a, b)).collect())
        });
        Ok(Mat::from_entries(self.field, self.rows, self.cols, entries))
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat, MatError> {
        self.check_shape(other, "mul", self.cols == other.rows)?;
        let (r, k, c) = (self.rows, self.cols, other.cols);
        let entries = dispatch2!(self, other, ops, x, y => ops.wrap(matmul(ops, x, y, r, k, c)));
        Ok(Mat::from_entries(self.field, r, c, entries))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        assert_eq!(s.field(), self.field, "scalar field mismatch");
        let entries = dispatch!(self, ops, v => {
            let s = ops.lift_scalar(s);
            ops.wrap(v.iter().map(|a| ops.mul(a, &s)).collect())
        });
        Mat::from_entries(self.field, self.rows, self.cols, entries)
    }

    pub fn transpose(&self) -> Mat {
        let (r, c) = (self.rows, self.cols);
        let entries = dispatch!(self, ops, v => {
            let mut out = Vec::with_capacity(r * c);
            for j in 0..c {
                for i in 0..r {
                    out.push(v[i * c + j].clone());
                }
            }
            ops.wrap(out)
        });
        Mat::from_entries(self.field, c, r, entries)
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Mat {
        assert!(rows.end <= self.rows && cols.end <= self.cols, "submatrix out of bounds");
        let c = self.cols;
        let entries = dispatch!(self, ops, v => {
            let mut out = Vec::with_capacity(rows.len() * cols.len());
            for i in rows.clone() {
                out.extend_from_slice(&v[i * c + cols.start..i * c + cols.end]);
            }
            ops.wrap(out)
        });
        Mat::from_entries(self.field, rows.len(), cols.len(), entries)
    }

    /// Top-left `k × k` block.
    pub fn leading_block(&self, k: usize) -> Mat {
        self.submatrix(0..k, 0..k)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let c = self.cols;
        let entries = dispatch!(self, ops, v => {
            let mut out = Vec::with_capacity(self.rows * idx.len());
            for i in 0..self.rows {
                for &j in idx {
                    assert!(j < c, "column index out of bounds");
                    out.push(v[i * c + j].clone());
                }
            }
            ops.wrap(out)
        });
        Mat::from_entries(self.field, self.rows, idx.len(), entries)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let c = self.cols;
        let entries = dispatch!(self, ops, v => {
            let mut out = Vec::with_capacity(idx.len() * c);
            for &i in idx {
                assert!(i < self.rows, "row index out of bounds");
                out.extend_from_slice(&v[i * c..(i + 1) * c]);
            }
            ops.wrap(out)
        });
        Mat::from_entries(self.field, idx.len(), c, entries)
    }

    /// Places `[self | other]` side by side.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        self.transpose().vstack(&other.transpose()).transpose()
    }

    /// Places `self` above `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let entries = dispatch2!(self, other, ops, x, y => {
            let mut out = x.clone();
            out.extend_from_slice(y);
            ops.wrap(out)
        });
        Mat::from_entries(self.field, self.rows + other.rows, self.cols, entries)
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "matrix field mismatch");
        let mut m = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Direct sum of a list of blocks; the empty sum is the 0×0 matrix.
    pub fn direct_sum_all<'a>(field: FieldSpec, blocks: impl IntoIterator<Item = &'a Mat>) -> Mat {
        blocks
            .into_iter()
            .fold(Mat::zeros(field, 0, 0), |acc, b| acc.direct_sum(b))
    }

    /// Kronecker product with block `(i, j)` equal to `a_ij · B`.
    pub fn kronecker(&self, other: &Mat) -> Mat {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let entries = dispatch2!(self, other, ops, x, y => {
            let mut out = vec![ops.zero(); r * c];
            for i in 0..self.rows {
                for j in 0..self.cols {
                    let a = &x[i * self.cols + j];
                    if ops.is_zero(a) {
                        continue;
                    }
                    for k in 0..other.rows {
                        for l in 0..other.cols {
                            let row = i * other.rows + k;
                            let col = j * other.cols + l;
                            out[row * c + col] = ops.mul(a, &y[k * other.cols + l]);
                        }
                    }
                }
            }
            ops.wrap(out)
        });
        Mat::from_entries(self.field, r, c, entries)
    }

    /// Overwrites the block starting at `(r0, c0)` with `block`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "paste out of bounds");
        assert_eq!(self.field, block.field, "matrix field mismatch");
        let cols = self.cols;
        match (&mut self.entries, &block.entries) {
            (Entries::Rational(dst), Entries::Rational(src)) => {
                for i in 0..block.rows {
                    let d = (r0 + i) * cols + c0;
                    dst[d..d + block.cols].clone_from_slice(&src[i * block.cols..(i + 1) * block.cols]);
                }
            }
            (Entries::Modular(dst), Entries::Modular(src)) => {
                for i in 0..block.rows {
                    let d = (r0 + i) * cols + c0;
                    dst[d..d + block.cols].copy_from_slice(&src[i * block.cols..(i + 1) * block.cols]);
                }
            }
            _ => unreachable!(),
        }
    }

    /// Square matrix resized to `n × n` in the top-left corner: zero padded
    /// when growing, truncated when shrinking.
    pub fn resized(&self, n: usize) -> Mat {
        assert!(self.is_square(), "resized needs a square matrix");
        let mut m = Mat::zeros(self.field, n, n);
        let k = n.min(self.rows);
        m.paste(0, 0, &self.leading_block(k));
        m
    }

    pub fn rref(&self) -> Rref {
        elim::rref(self)
    }

    pub fn rank(&self) -> usize {
        elim::rank(self)
    }

    /// `rank / n` for a square matrix.
    pub fn normalized_rank(&self) -> Rational {
        assert!(self.is_square(), "normalized rank needs a square matrix");
        normalized(self.rank(), self.rows)
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::kernel_of(self)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self)
    }

    pub fn inverse(&self) -> Result<Mat, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare(self.rows, self.cols));
        }
        elim::inverse(self).ok_or(MatError::Singular)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `p · self · p_inv`.
    pub fn conjugate(&self, p: &Mat, p_inv: &Mat) -> Mat {
        &(p * self) * p_inv
    }

    /// Rank of `Â − B̂` after padding both square matrices with zeros to the
    /// larger size.
    pub fn hat_dist(a: &Mat, b: &Mat) -> Result<usize, MatError> {
        if a.field != b.field {
            return Err(MatError::FieldMismatch);
        }
        for m in [a, b] {
            if !m.is_square() {
                return Err(MatError::NotSquare(m.rows, m.cols));
            }
        }
        let n = a.rows.max(b.rows);
        Ok((&a.resized(n) - &b.resized(n)).rank())
    }

    pub fn nonzero_count(&self) -> usize {
        dispatch!(self, ops, v => v.iter().filter(|x| !ops.is_zero(x)).count())
    }
}

fn matmul<A: Arith>(ops: A, x: &[A::E], y: &[A::E], r: usize, k: usize, c: usize) -> Vec<A::E> {
    let mut out = vec![ops.zero(); r * c];
    for i in 0..r {
        let row = &mut out[i * c..(i + 1) * c];
        for t in 0..k {
            let a = &x[i * k + t];
            if ops.is_zero(a) {
                continue;
            }
            let yrow = &y[t * c..(t + 1) * c];
            for (o, b) in row.iter_mut().zip(yrow) {
                if !ops.is_zero(b) {
                    *o = ops.add(o, &ops.mul(a, b));
                }
            }
        }
    }
    out
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(&self.field.from_i64(-1))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat<{}> {}x{} [", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
