//! Instability witnesses: tuples whose defect tends to zero for algebras
//! that have no nearby exact solutions.

use serde::Serialize;
use thiserror::Error;

use crate::approx::defect;
use crate::exactmat::{FieldSpec, IndependentSet, Mat, MatError, Subspace};
use crate::freealg::{matrix_algebra_presentation, parse_presentation, EvalError, MatTuple, Presentation};
use crate::rational::{ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("{name} must be at least {min}, got {value}")]
    Parameter { name: &'static str, value: usize, min: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error(
        "counterexample: rank(XYZ - I) = {product_defect}/{n} < 1/4 but rank(XZY) = {swapped_rank}/{n} <= 1/4"
    )]
    Counterexample { n: usize, product_defect: usize, swapped_rank: usize },
}

fn at_least(name: &'static str, value: usize, min: usize) -> Result<(), WitnessError> {
    if value < min {
        return Err(WitnessError::Parameter { name, value, min });
    }
    Ok(())
}

/// `⟨x, y | xy − yx − 1⟩` over ℚ.
pub fn weyl_presentation() -> Presentation {
    parse_presentation("algebra Q; gens x,y; rels x*y - y*x - 1;").expect("fixed presentation parses")
}

/// `⟨x, y, t | xt − tx, yt − ty, xy − yx − t²⟩` over ℚ.
pub fn projective_weyl_presentation() -> Presentation {
    parse_presentation("algebra Q; gens x,y,t; rels x*t - t*x, y*t - t*y, x*y - y*x - t^2;")
        .expect("fixed presentation parses")
}

/// `⟨x, y, z | xyz − 1, xzy⟩` over ℚ.
pub fn vacuous_presentation() -> Presentation {
    parse_presentation("algebra Q; gens x,y,z; rels x*y*z - 1, x*z*y;").expect("fixed presentation parses")
}

/// The matrix-unit presentation of `M_k(ℚ)`.
pub fn matrix_units_presentation(k: usize) -> Result<Presentation, WitnessError> {
    at_least("k", k, 1)?;
    let bare = Presentation::associative(FieldSpec::Rationals, Vec::new(), Vec::new()).expect("empty presentation");
    Ok(matrix_algebra_presentation(&bare, k).expect("k is positive"))
}

/// `n × n` shift `X` and weighted lower shift `Y` with
/// `XY − YX = diag(1, …, 1, −(n−1))`, so the Weyl relator has rank one.
pub fn weyl_witness(n: usize) -> Result<MatTuple, WitnessError> {
    at_least("n", n, 2)?;
    let f = FieldSpec::Rationals;
    let x = Mat::from_fn(f, n, n, |i, j| if j == i + 1 { f.one() } else { f.zero() });
    let y = Mat::from_fn(f, n, n, |i, j| if i == j + 1 { f.from_i64(i as i64) } else { f.zero() });
    Ok(MatTuple::from_mats(vec![x, y])?)
}

/// `E_ij = (e_ij ⊗ Id_n) ⊕ Id_1` for `i, j < k`, in row-major order.
pub fn matrix_size_witness(k: usize, n: usize) -> Result<MatTuple, WitnessError> {
    at_least("k", k, 2)?;
    at_least("n", n, 1)?;
    let f = FieldSpec::Rationals;
    let id_n = Mat::identity(f, n);
    let id_1 = Mat::identity(f, 1);
    let mut mats = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut unit = Mat::zeros(f, k, k);
            unit.set(i, j, &f.one());
            mats.push(unit.kronecker(&id_n).direct_sum(&id_1));
        }
    }
    Ok(MatTuple::from_mats(mats)?)
}

/// A Følner witness for the projectivized Weyl algebra, with the subspace
/// dimensions that bound its defect.
#[derive(Clone, Debug, Serialize)]
pub struct FolnerWitness {
    pub tuple: MatTuple,
    /// `dim V_i`.
    pub n: usize,
    /// Dimension of the generator interior `U_i`.
    pub interior_dim: usize,
    /// Dimension of `V_i°`, the vectors kept inside `V_i` by every
    /// monomial of degree at most two.
    pub deep_interior_dim: usize,
    /// `dim(TV_i + V_i) − dim V_i`.
    pub overflow_dim: usize,
    /// Number of monomials in `T`.
    pub word_count: usize,
}

impl FolnerWitness {
    /// `|T| · dim(V_i/V_i°)`.
    pub fn boundary_bound(&self) -> usize {
        self.word_count * (self.n - self.deep_interior_dim)
    }
}

/// Normal-ordered monomials `x^a y^b` of degree at most `top`, by degree and
/// then by increasing `b`.
struct MonomialBasis {
    top: usize,
}

impl MonomialBasis {
    fn len_up_to(deg: usize) -> usize {
        (deg + 1) * (deg + 2) / 2
    }

    fn dim(&self) -> usize {
        Self::len_up_to(self.top)
    }

    fn index(&self, a: usize, b: usize) -> usize {
        let d = a + b;
        d * (d + 1) / 2 + b
    }

    fn monomials(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.top).flat_map(|d| (0..=d).map(move |b| (d - b, b)))
    }

    /// Left multiplication by `x`, dropping anything above `top`.
    fn times_x(&self) -> Mat {
        let f = FieldSpec::Rationals;
        let mut m = Mat::zeros(f, self.dim(), self.dim());
        for (a, b) in self.monomials() {
            if a + b < self.top {
                m.set(self.index(a + 1, b), self.index(a, b), &f.one());
            }
        }
        m
    }

    /// Left multiplication by `y` through `y x^a = x^a y − a x^{a−1}`.
    fn times_y(&self) -> Mat {
        let f = FieldSpec::Rationals;
        let mut m = Mat::zeros(f, self.dim(), self.dim());
        for (a, b) in self.monomials() {
            let col = self.index(a, b);
            if a + b < self.top {
                m.set(self.index(a, b + 1), col, &f.one());
            }
            if a > 0 {
                m.set(self.index(a - 1, b), col, &f.from_i64(-(a as i64)));
            }
        }
        m
    }
}

/// The witness at level `i`: `V_i` spans `x^a y^b` with `a + b ≤ i` in the
/// Weyl algebra, where `t` acts as 1. Generators act by left
/// multiplication on the interior `U_i` and by zero on a complement
/// spanned by monomials, highest degree first.
pub fn folner_witness(i: usize) -> Result<FolnerWitness, WitnessError> {
    at_least("i", i, 2)?;
    let f = FieldSpec::Rationals;
    let ambient = MonomialBasis { top: i + 2 };
    let n = MonomialBasis::len_up_to(i);
    let d = ambient.dim();
    let (lx, ly, lt) = (ambient.times_x(), ambient.times_y(), Mat::identity(f, d));
    let v = Subspace::coordinate(f, d, 0..n);

    let mut interior = v.clone();
    for g in [&lx, &ly, &lt] {
        interior = interior.intersect(&v.preimage(g)?)?;
    }

    let mut words = Vec::new();
    for a in 0..=2u32 {
        for b in 0..=2 - a {
            for c in 0..=2 - a - b {
                let mut w = Mat::identity(f, d);
                for _ in 0..a {
                    w = &lx * &w;
                }
                for _ in 0..b {
                    w = &ly * &w;
                }
                for _ in 0..c {
                    w = &lt * &w;
                }
                words.push(w);
            }
        }
    }
    let mut deep = v.clone();
    let mut reach = v.clone();
    for w in &words {
        deep = deep.intersect(&v.preimage(w)?)?;
        reach = reach.sum(&v.image_under(w))?;
    }

    let u = interior.basis().submatrix(0..n, 0..interior.dim());
    let mut chosen = IndependentSet::new(f, n);
    for j in 0..u.ncols() {
        chosen.insert_column(&u, j);
    }
    let id = Mat::identity(f, n);
    let mut complement = Vec::new();
    for j in (0..n).rev() {
        if chosen.insert_column(&id, j) {
            complement.push(j);
        }
    }
    let frame = u.hstack(&id.select_columns(&complement));
    let frame_inv = frame.inverse()?;

    let mats = [&lx, &ly, &lt]
        .into_iter()
        .map(|g| {
            let moved = (g * interior.basis()).submatrix(0..n, 0..interior.dim());
            &moved.hstack(&Mat::zeros(f, n, complement.len())) * &frame_inv
        })
        .collect();

    Ok(FolnerWitness {
        tuple: MatTuple::new(f, n, mats)?,
        n,
        interior_dim: interior.dim(),
        deep_interior_dim: deep.dim(),
        overflow_dim: reach.dim() - n,
        word_count: words.len(),
    })
}

/// Outcome of checking a triple against `⟨x, y, z | xyz − 1, xzy⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VacuousVerdict {
    /// `rank(XYZ − I) ≥ 1/4`.
    NotApproximate,
    /// `rank(XYZ − I) < 1/4` and `rank(XZY) > 1/4`.
    ImplicationHolds,
}

/// Checks that a triple is either far from `XYZ = I` or far from `XZY = 0`.
/// A triple that is close to both is reported as
/// [`WitnessError::Counterexample`].
pub fn vacuous_certify(t: &MatTuple) -> Result<VacuousVerdict, WitnessError> {
    if t.arity() != 3 {
        return Err(EvalError::Arity { expected: 3, got: t.arity() }.into());
    }
    let [x, y, z] = [&t.mats()[0], &t.mats()[1], &t.mats()[2]];
    let n = t.size();
    let product_defect = (&(&(x * y) * z) - &Mat::identity(t.field(), n)).rank();
    if 4 * product_defect >= n {
        return Ok(VacuousVerdict::NotApproximate);
    }
    let swapped_rank = (&(x * z) * y).rank();
    if 4 * swapped_rank <= n {
        return Err(WitnessError::Counterexample { n, product_defect, swapped_rank });
    }
    Ok(VacuousVerdict::ImplicationHolds)
}

/// A witness family: its presentation, a generator indexed by one size
/// parameter, and the closed-form defect where one is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessFamily {
    Weyl,
    MatrixSize { k: usize },
    Folner,
}

impl WitnessFamily {
    pub fn presentation(&self) -> Result<Presentation, WitnessError> {
        match *self {
            WitnessFamily::Weyl => Ok(weyl_presentation()),
            WitnessFamily::MatrixSize { k } => matrix_units_presentation(k),
            WitnessFamily::Folner => Ok(projective_weyl_presentation()),
        }
    }

    pub fn generate(&self, param: usize) -> Result<MatTuple, WitnessError> {
        match *self {
            WitnessFamily::Weyl => weyl_witness(param),
            WitnessFamily::MatrixSize { k } => matrix_size_witness(k, param),
            WitnessFamily::Folner => folner_witness(param).map(|w| w.tuple),
        }
    }

    /// `1/n` for Weyl and `1/(nk+1)` for matrix sizes; no closed form for
    /// the Følner family.
    pub fn defect_formula(&self, param: usize) -> Option<Rational> {
        match *self {
            WitnessFamily::Weyl => Some(ratio(1, param as i64)),
            WitnessFamily::MatrixSize { k } => Some(ratio(1, (param * k + 1) as i64)),
            WitnessFamily::Folner => None,
        }
    }

    /// Generates the tuple and measures its maximal relator defect.
    pub fn measure(&self, param: usize) -> Result<(MatTuple, Rational), WitnessError> {
        let tuple = self.generate(param)?;
        let report = defect(&self.presentation()?, &tuple)?;
        Ok((tuple, report.max_defect))
    }
}
