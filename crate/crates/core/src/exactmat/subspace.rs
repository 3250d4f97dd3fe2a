use super::arith::{Arith, Entries, FpOps, QOps};
use super::elim;
use super::field::FieldSpec;
use super::mat::Mat;
use super::MatError;

/// A linear subspace of `F^n`, stored by a canonical basis: the columns of
/// the reduced column echelon form. Two subspaces are equal exactly when
/// their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    /// Column space of `m`.
    pub fn span(m: &Mat) -> Subspace {
        let r = m.transpose().rref();
        let d = r.rank();
        Subspace {
            basis: r.matrix.submatrix(0..d, 0..m.nrows()).transpose(),
        }
    }

    pub fn zero(field: FieldSpec, n: usize) -> Subspace {
        Subspace { basis: Mat::zeros(field, n, 0) }
    }

    pub fn full(field: FieldSpec, n: usize) -> Subspace {
        Subspace { basis: Mat::identity(field, n) }
    }

    /// `span{e_i : i ∈ idx}`.
    pub fn coordinate(field: FieldSpec, n: usize, idx: impl IntoIterator<Item = usize>) -> Subspace {
        let cols: Vec<usize> = idx.into_iter().collect();
        Subspace::span(&Mat::identity(field, n).select_columns(&cols))
    }

    /// Right kernel `{x : m x = 0}`.
    pub fn kernel_of(m: &Mat) -> Subspace {
        Subspace::span(&elim::kernel_basis(m))
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn codim(&self) -> usize {
        self.ambient() - self.dim()
    }

    /// Canonical basis as the columns of an `n × dim` matrix.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    fn check(&self, other: &Subspace) -> Result<(), MatError> {
        if self.field() != other.field() {
            return Err(MatError::FieldMismatch);
        }
        if self.ambient() != other.ambient() {
            return Err(MatError::Shape {
                op: "subspace",
                left: (self.ambient(), self.dim()),
                right: (other.ambient(), other.dim()),
            });
        }
        Ok(())
    }

    /// Whether every column of `vectors` lies in the subspace.
    pub fn contains(&self, vectors: &Mat) -> bool {
        assert_eq!(vectors.nrows(), self.ambient(), "vector length mismatch");
        (&self.annihilator_rows() * vectors).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.contains(other.basis())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, MatError> {
        self.check(other)?;
        Ok(Subspace::span(&self.basis.hstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, MatError> {
        self.check(other)?;
        let stacked = self.annihilator_rows().vstack(&other.annihilator_rows());
        Ok(Subspace::kernel_of(&stacked))
    }

    /// Row vectors annihilating the subspace, as the rows of a
    /// `codim × n` matrix.
    pub fn annihilator_rows(&self) -> Mat {
        elim::kernel_basis(&self.basis.transpose()).transpose()
    }

    /// `{v : vᵀu = 0 for all u}` as a subspace of `F^n`.
    pub fn annihilator(&self) -> Subspace {
        Subspace::kernel_of(&self.basis.transpose())
    }

    /// `{x : b x ∈ self}`.
    pub fn preimage(&self, b: &Mat) -> Result<Subspace, MatError> {
        if b.nrows() != self.ambient() {
            return Err(MatError::Shape {
                op: "preimage",
                left: (b.nrows(), b.ncols()),
                right: (self.ambient(), self.dim()),
            });
        }
        Ok(Subspace::kernel_of(&(&self.annihilator_rows() * b)))
    }

    /// `b(self)`.
    pub fn image_under(&self, b: &Mat) -> Subspace {
        Subspace::span(&(b * &self.basis))
    }

    /// Whether `a(self) ⊆ self`.
    pub fn is_invariant(&self, a: &Mat) -> bool {
        self.contains(&(a * &self.basis))
    }

    /// An invertible matrix whose leading columns are the canonical basis.
    pub fn complete_basis(&self) -> Mat {
        complete_basis(&self.basis).expect("canonical basis is independent")
    }
}

/// Extends linearly independent columns to an invertible matrix by
/// appending standard basis vectors first-fit: `e_j` is taken when it is
/// not in the span of the given columns and the `e_i` already taken.
pub fn complete_basis(columns: &Mat) -> Result<Mat, MatError> {
    let n = columns.nrows();
    let d = columns.ncols();
    if d > n || columns.rank() != d {
        return Err(MatError::Dependent);
    }
    // e_j is redundant exactly when the span contains a vector whose last
    // nonzero coordinate is j; those positions are the pivots of the
    // echelon form with columns read right to left.
    let reversed: Vec<usize> = (0..n).rev().collect();
    let r = columns.transpose().select_columns(&reversed).rref();
    let mut taken = vec![true; n];
    for &p in &r.pivots {
        taken[n - 1 - p] = false;
    }
    let extra: Vec<usize> = (0..n).filter(|&j| taken[j]).collect();
    let id = Mat::identity(columns.field(), n);
    Ok(columns.hstack(&id.select_columns(&extra)))
}

/// Incremental linear-independence test for vectors in `F^n`.
#[derive(Clone, Debug)]
pub struct IndependentSet {
    field: FieldSpec,
    n: usize,
    rows: Rows,
}

#[derive(Clone, Debug)]
enum Rows {
    Rational(Vec<(usize, Vec<crate::rational::Rational>)>),
    Modular(Vec<(usize, Vec<u64>)>),
}

impl IndependentSet {
    pub fn new(field: FieldSpec, n: usize) -> IndependentSet {
        let rows = match field {
            FieldSpec::Rationals => Rows::Rational(Vec::new()),
            FieldSpec::Prime(_) => Rows::Modular(Vec::new()),
        };
        IndependentSet { field, n, rows }
    }

    pub fn len(&self) -> usize {
        match &self.rows {
            Rows::Rational(r) => r.len(),
            Rows::Modular(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Adds column `j` of `m` when it is independent of the vectors seen so
    /// far; returns whether it was added.
    pub fn insert_column(&mut self, m: &Mat, j: usize) -> bool {
        assert_eq!(m.nrows(), self.n, "vector length mismatch");
        assert_eq!(m.field(), self.field, "vector field mismatch");
        let col = m.column(j);
        match (&mut self.rows, col.entries, self.field) {
            (Rows::Rational(rows), Entries::Rational(v), _) => insert(QOps, rows, v),
            (Rows::Modular(rows), Entries::Modular(v), FieldSpec::Prime(p)) => insert(FpOps(p), rows, v),
            _ => unreachable!(),
        }
    }

    /// Whether column `j` of `m` is independent, without inserting it.
    pub fn is_independent(&self, m: &Mat, j: usize) -> bool {
        self.clone().insert_column(m, j)
    }
}

fn insert<A: Arith>(ops: A, rows: &mut Vec<(usize, Vec<A::E>)>, mut v: Vec<A::E>) -> bool {
    for (p, row) in rows.iter() {
        let f = v[*p].clone();
        if ops.is_zero(&f) {
            continue;
        }
        for (x, y) in v.iter_mut().zip(row) {
            if !ops.is_zero(y) {
                *x = ops.sub(x, &ops.mul(&f, y));
            }
        }
    }
    let Some(p) = v.iter().position(|x| !ops.is_zero(x)) else {
        return false;
    };
    let inv = ops.inv(&v[p]);
    for x in v.iter_mut() {
        *x = ops.mul(x, &inv);
    }
    // keep stored rows reduced at the new pivot so later reductions stay
    // single-pass
    for (_, row) in rows.iter_mut() {
        let f = row[p].clone();
        if ops.is_zero(&f) {
            continue;
        }
        for (x, y) in row.iter_mut().zip(&v) {
            if !ops.is_zero(y) {
                *x = ops.sub(x, &ops.mul(&f, y));
            }
        }
    }
    rows.push((p, v));
    true
}
