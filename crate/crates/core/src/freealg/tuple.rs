use serde::{Deserialize, Serialize};

use crate::exactmat::{FieldSpec, Mat};

use super::EvalError;

/// An ordered tuple of square matrices of a common size over one field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TupleRepr", into = "TupleRepr")]
pub struct MatTuple {
    field: FieldSpec,
    n: usize,
    mats: Vec<Mat>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TupleRepr {
    field: FieldSpec,
    n: usize,
    mats: Vec<Mat>,
}

impl TryFrom<TupleRepr> for MatTuple {
    type Error = EvalError;
    fn try_from(r: TupleRepr) -> Result<Self, EvalError> {
        MatTuple::new(r.field, r.n, r.mats)
    }
}

impl From<MatTuple> for TupleRepr {
    fn from(t: MatTuple) -> Self {
        TupleRepr { field: t.field, n: t.n, mats: t.mats }
    }
}

impl MatTuple {
    pub fn new(field: FieldSpec, n: usize, mats: Vec<Mat>) -> Result<MatTuple, EvalError> {
        for m in &mats {
            if m.field() != field {
                return Err(EvalError::Field { expected: field, got: m.field() });
            }
            if m.nrows() != n || m.ncols() != n {
                return Err(EvalError::Size {
                    expected: n,
                    got: (m.nrows(), m.ncols()),
                });
            }
        }
        Ok(MatTuple { field, n, mats })
    }

    /// Builds from a nonempty list, taking field and size from the first
    /// matrix.
    pub fn from_mats(mats: Vec<Mat>) -> Result<MatTuple, EvalError> {
        let first = mats.first().ok_or(EvalError::Arity { expected: 1, got: 0 })?;
        let (field, n) = (first.field(), first.nrows());
        MatTuple::new(field, n, mats)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.mats.len()
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn into_mats(self) -> Vec<Mat> {
        self.mats
    }

    pub fn map(&self, f: impl FnMut(&Mat) -> Mat) -> MatTuple {
        let mats: Vec<Mat> = self.mats.iter().map(f).collect();
        let n = mats.first().map_or(self.n, Mat::nrows);
        MatTuple::new(self.field, n, mats).expect("map must preserve a common size")
    }

    /// `p · A_i · p_inv` for every component.
    pub fn conjugate(&self, p: &Mat, p_inv: &Mat) -> MatTuple {
        let mut t = self.map(|m| m.conjugate(p, p_inv));
        t.n = p.nrows();
        t
    }

    /// Componentwise zero padding or truncation to size `n`.
    pub fn resized(&self, n: usize) -> MatTuple {
        MatTuple {
            field: self.field,
            n,
            mats: self.mats.iter().map(|m| m.resized(n)).collect(),
        }
    }

    /// Componentwise direct sum.
    pub fn direct_sum(&self, other: &MatTuple) -> MatTuple {
        assert_eq!(self.arity(), other.arity(), "tuple arity mismatch");
        MatTuple {
            field: self.field,
            n: self.n + other.n,
            mats: self.mats.iter().zip(&other.mats).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    /// Componentwise `A_i ⊗ Id_k`.
    pub fn amplify(&self, k: usize) -> MatTuple {
        let id = Mat::identity(self.field, k);
        MatTuple {
            field: self.field,
            n: self.n * k,
            mats: self.mats.iter().map(|m| m.kronecker(&id)).collect(),
        }
    }

    /// Components `range` as a new tuple.
    pub fn slice(&self, range: std::ops::Range<usize>) -> MatTuple {
        MatTuple {
            field: self.field,
            n: self.n,
            mats: self.mats[range].to_vec(),
        }
    }

    /// Concatenates the components of two same-size tuples.
    pub fn concat(&self, other: &MatTuple) -> MatTuple {
        assert_eq!(self.n, other.n, "tuple size mismatch");
        let mut mats = self.mats.clone();
        mats.extend_from_slice(&other.mats);
        MatTuple { field: self.field, n: self.n, mats }
    }

    /// All-zero tuple.
    pub fn zeros(field: FieldSpec, n: usize, arity: usize) -> MatTuple {
        MatTuple {
            field,
            n,
            mats: vec![Mat::zeros(field, n, n); arity],
        }
    }
}
