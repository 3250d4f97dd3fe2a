//! Typed storage and field kernels behind [`Mat`](super::Mat).
//!
//! Matrices keep their entries unboxed (`BigRational` or `u64` residues) so
//! the inner loops of multiplication and elimination never match on a
//! per-entry tag.

use num_traits::Zero;

use super::field::{add_mod, inv_mod, mul_mod, sub_mod, FieldSpec, PrimeModulus, Scalar};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Entries {
    Rational(Vec<Rational>),
    Modular(Vec<u64>),
}

impl Entries {
    pub(crate) fn len(&self) -> usize {
        match self {
            Entries::Rational(v) => v.len(),
            Entries::Modular(v) => v.len(),
        }
    }
}

pub(crate) trait Arith: Copy + Send + Sync {
    type E: Clone + PartialEq + Send + Sync + std::fmt::Debug;

    fn zero(self) -> Self::E;
    fn is_zero(self, a: &Self::E) -> bool;
    fn add(self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Panics on zero.
    fn inv(self, a: &Self::E) -> Self::E;
    fn to_scalar(self, a: &Self::E) -> Scalar;
    fn lift_scalar(self, s: &Scalar) -> Self::E;
    fn wrap(self, v: Vec<Self::E>) -> Entries;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct QOps;

#[derive(Clone, Copy, Debug)]
pub(crate) struct FpOps(pub(crate) PrimeModulus);

impl Arith for QOps {
    type E = Rational;

    fn zero(self) -> Rational {
        Rational::zero()
    }
    fn is_zero(self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn to_scalar(self, a: &Rational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn lift_scalar(self, s: &Scalar) -> Rational {
        match s {
            Scalar::Rational(r) => r.clone(),
            Scalar::Modular { .. } => panic!("scalar field mismatch"),
        }
    }
    fn wrap(self, v: Vec<Rational>) -> Entries {
        Entries::Rational(v)
    }
}

impl Arith for FpOps {
    type E = u64;

    fn zero(self) -> u64 {
        0
    }
    fn is_zero(self, a: &u64) -> bool {
        *a == 0
    }
    fn add(self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.0.get())
    }
    fn sub(self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.0.get())
    }
    fn mul(self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0.get())
    }
    fn inv(self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        inv_mod(*a, self.0.get())
    }
    fn to_scalar(self, a: &u64) -> Scalar {
        Scalar::Modular { value: *a, modulus: self.0 }
    }
    fn lift_scalar(self, s: &Scalar) -> u64 {
        match s {
            Scalar::Modular { value, modulus } if *modulus == self.0 => *value,
            _ => panic!("scalar field mismatch"),
        }
    }
    fn wrap(self, v: Vec<u64>) -> Entries {
        Entries::Modular(v)
    }
}

pub(crate) fn zeros(field: FieldSpec, len: usize) -> Entries {
    match field {
        FieldSpec::Rationals => Entries::Rational(vec![Rational::zero(); len]),
        FieldSpec::Prime(_) => Entries::Modular(vec![0; len]),
    }
}

/// Dispatches on the storage of one matrix, binding the matching kernel.
macro_rules! dispatch {
    ($mat:expr, $ops:ident, $v:ident => $body:expr) => {
        match (&$mat.entries, $mat.field) {
            ($crate::exactmat::arith::Entries::Rational($v), _) => {
                let $ops = $crate::exactmat::arith::QOps;
                $body
            }
            ($crate::exactmat::arith::Entries::Modular($v), $crate::exactmat::FieldSpec::Prime(p)) => {
                let $ops = $crate::exactmat::arith::FpOps(p);
                #[allow(clippy::clone_on_copy)]
                let out = $body;
                out
            }
            _ => unreachable!("modular storage over the rationals"),
        }
    };
}

/// Same as `dispatch!` for two matrices over one field.
macro_rules! dispatch2 {
    ($a:expr, $b:expr, $ops:ident, $x:ident, $y:ident => $body:expr) => {{
        assert_eq!($a.field, $b.field, "matrix field mismatch");
        match (&$a.entries, &$b.entries, $a.field) {
            (
                $crate::exactmat::arith::Entries::Rational($x),
                $crate::exactmat::arith::Entries::Rational($y),
                _,
            ) => {
                let $ops = $crate::exactmat::arith::QOps;
                $body
            }
            (
                $crate::exactmat::arith::Entries::Modular($x),
                $crate::exactmat::arith::Entries::Modular($y),
                $crate::exactmat::FieldSpec::Prime(p),
            ) => {
                let $ops = $crate::exactmat::arith::FpOps(p);
                $body
            }
            _ => unreachable!("inconsistent matrix storage"),
        }
    }};
}

pub(crate) use dispatch;
pub(crate) use dispatch2;
