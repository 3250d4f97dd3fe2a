use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use num_integer::Integer;
use rankstab::approx::defect as measure_defect;
use rankstab::freealg::{free_product_presentation, GroupPresentation, MatTuple, NcPoly, Presentation};
use rankstab::rational::Rational;
use rankstab::stabilize::{
    certify, compute_bezout, stabilize_direct_product, stabilize_group_algebra, stabilize_group_from_algebra,
    stabilize_matrix_algebra, stabilize_zero_product, Diagnostics, ExactSolver, FindimSolver, FreeProductData,
    FreeProductSolver, StabilizeOutcome, DEFAULT_DEGREE_CAP,
};

use crate::config::Config;
use crate::error::CliError;
use crate::inputs;

pub fn parse(path: &Path) -> Result<(), CliError> {
    println!("{}", inputs::presentation(path)?);
    Ok(())
}

pub fn defect(presentation: &Path, tuple: &Path) -> Result<(), CliError> {
    let p = inputs::presentation(presentation)?;
    let t = inputs::tuple(tuple)?;
    inputs::write_json(&measure_defect(&p, &t)?, None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Findim,
    ZeroProduct,
    DirectProduct,
    MatrixAlgebra,
    GroupAlgebra,
    FreeProduct,
}

#[derive(Args, Debug)]
pub struct StabilizeArgs {
    /// Presentation; the left factor for products, the base algebra for
    /// matrix algebras, a group for the group-algebra strategy.
    pub presentation: PathBuf,
    pub tuple: PathBuf,
    /// Closeness parameter ε; every distance must stay below εn [default: 1/2].
    #[arg(long)]
    pub eps: Option<String>,
    /// Degree bound m for the finite-dimensional stabilizer; without it the
    /// relator degree is tried first and raised up to --cap.
    #[arg(long)]
    pub m: Option<usize>,
    /// Largest degree bound tried.
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long, value_enum)]
    pub strategy: Option<Strategy>,
    /// Exact reference solution (of the left factor, base or group).
    #[arg(long = "ref", value_name = "FILE")]
    pub reference: Option<PathBuf>,
    /// Right factor presentation for product strategies.
    #[arg(long, value_name = "FILE")]
    pub right: Option<PathBuf>,
    /// Exact reference solution of the right factor.
    #[arg(long, value_name = "FILE")]
    pub right_ref: Option<PathBuf>,
    /// Matrix size m' of the matrix-algebra strategy.
    #[arg(long)]
    pub size: Option<usize>,
    /// Write the outcome JSON here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

pub fn default_eps() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Resolves `--eps`, falling back to the config file and then to 1/2.
pub fn resolve_eps(flag: Option<&str>, config: &Config) -> Result<Rational, CliError> {
    match flag.or(config.eps.as_deref()) {
        Some(text) => {
            let eps = inputs::rational(text)?;
            if eps <= Rational::from_integer(0.into()) {
                return Err(CliError::Parse(format!("eps must be positive, got {text}")));
            }
            Ok(eps)
        }
        None => Ok(default_eps()),
    }
}

/// A finite-dimensional solver; an explicit `m` without a cap is tried alone.
pub fn findim_solver(reference: MatTuple, m: Option<usize>, cap: Option<usize>) -> FindimSolver {
    let cap = match (m, cap) {
        (Some(m), Some(cap)) => cap.max(m),
        (Some(m), None) => m,
        (None, Some(cap)) => cap,
        (None, None) => DEFAULT_DEGREE_CAP,
    };
    FindimSolver { reference, degree: m, cap }
}

fn required<'a>(flag: Option<&'a PathBuf>, name: &str, strategy: &str) -> Result<&'a PathBuf, CliError> {
    flag.ok_or_else(|| CliError::Parse(format!("--{name} is required by the {strategy} strategy")))
}

pub fn stabilize(args: StabilizeArgs, config: &Config) -> Result<(), CliError> {
    let eps = resolve_eps(args.eps.as_deref(), config)?;
    let m = args.m.or(config.m);
    let cap = args.cap.or(config.cap);
    let strategy = match (args.strategy, config.strategy.as_deref()) {
        (Some(s), _) => s,
        (None, Some(text)) => Strategy::from_str(text, true).map_err(|e| CliError::Parse(format!("strategy: {e}")))?,
        (None, None) => Strategy::Findim,
    };
    let reference = args.reference.as_ref().or(config.reference.as_ref());
    let right = args.right.as_ref().or(config.right.as_ref());
    let right_ref = args.right_ref.as_ref().or(config.right_ref.as_ref());
    let t = inputs::tuple(&args.tuple)?;

    let outcome = match strategy {
        Strategy::Findim => {
            let p = inputs::presentation(&args.presentation)?;
            let r = inputs::tuple(required(reference, "ref", "findim")?)?;
            findim_solver(r, m, cap).solve(&p, &t, &eps)?
        }
        Strategy::ZeroProduct => {
            let p = inputs::presentation(&args.presentation)?;
            zero_product(&p, &t, &eps)?
        }
        Strategy::DirectProduct => {
            let left = inputs::presentation(&args.presentation)?;
            let right = inputs::presentation(required(right, "right", "direct-product")?)?;
            let ls = findim_solver(inputs::tuple(required(reference, "ref", "direct-product")?)?, m, cap);
            let rs = findim_solver(inputs::tuple(required(right_ref, "right-ref", "direct-product")?)?, m, cap);
            stabilize_direct_product(&left, &ls, &right, &rs, &t, &eps)?
        }
        Strategy::MatrixAlgebra => {
            let base = inputs::presentation(&args.presentation)?;
            let size = args.size.or(config.size).ok_or_else(|| CliError::Parse("--size is required by the matrix-algebra strategy".into()))?;
            let r = inputs::tuple(required(reference, "ref", "matrix-algebra")?)?;
            let solver = findim_solver(r.clone(), m, cap);
            stabilize_matrix_algebra(&base, &solver, Some(&r), size, &t, &eps)?
        }
        Strategy::GroupAlgebra => {
            let group = inputs::group(&args.presentation)?;
            let r = inputs::tuple(required(reference, "ref", "group-algebra")?)?;
            group_algebra(&group, r, m, cap, &t, &eps)?
        }
        Strategy::FreeProduct => {
            let left = inputs::presentation(&args.presentation)?;
            let right = inputs::presentation(required(right, "right", "free-product")?)?;
            let lr = inputs::tuple(required(reference, "ref", "free-product")?)?;
            let rr = inputs::tuple(required(right_ref, "right-ref", "free-product")?)?;
            free_product(left, right, lr, rr, m, cap, &t, &eps)?
        }
    };
    inputs::write_json(&outcome, args.out.as_deref())
}

fn zero_product(p: &Presentation, t: &MatTuple, eps: &Rational) -> Result<StabilizeOutcome, CliError> {
    let xy = NcPoly::word(p.field(), &[0, 1]);
    if p.arity() != 2 || p.expanded_relators() != [xy] {
        return Err(CliError::Mismatch("the zero-product strategy needs the presentation ⟨x, y | xy⟩".into()));
    }
    p.check_tuple(t)?;
    let (b1, b2) = stabilize_zero_product(&t.mats()[0], &t.mats()[1]).map_err(|e| CliError::Failure(e.to_string()))?;
    let solution = MatTuple::new(t.field(), t.size(), vec![b1, b2])?;
    Ok(certify(p, t, solution, eps, Diagnostics::new("zero-product", t.size()))?)
}

/// The reference may list the group generators alone or together with
/// their inverses.
fn group_algebra(
    group: &GroupPresentation,
    reference: MatTuple,
    m: Option<usize>,
    cap: Option<usize>,
    t: &MatTuple,
    eps: &Rational,
) -> Result<StabilizeOutcome, CliError> {
    let d = group.arity();
    let lifted = if reference.arity() == 2 * d {
        reference
    } else if reference.arity() == d {
        let inverses = reference
            .mats()
            .iter()
            .map(|x| x.inverse().map_err(|_| CliError::Failure("group reference must be invertible".into())))
            .collect::<Result<Vec<_>, _>>()?;
        MatTuple::new(reference.field(), reference.size(), reference.mats().iter().cloned().chain(inverses).collect())?
    } else {
        return Err(CliError::Mismatch(format!(
            "group reference has {} matrices, expected {d} or {}",
            reference.arity(),
            2 * d
        )));
    };
    let algebra_solver = findim_solver(lifted, m, cap);
    let group_solver = move |g: &GroupPresentation, u: &MatTuple, eps: &Rational| {
        stabilize_group_from_algebra(g, &algebra_solver, u, eps)
    };
    Ok(stabilize_group_algebra(group, &group_solver, t, eps)?)
}

/// Glues factor solutions using the references amplified to sizes `k·g`
/// and `k'·g'` with `k·g − k'·g' = gcd(g, g')` and `k' ≥ 1`.
#[allow(clippy::too_many_arguments)]
fn free_product(
    left: Presentation,
    right: Presentation,
    left_ref: MatTuple,
    right_ref: MatTuple,
    m: Option<usize>,
    cap: Option<usize>,
    t: &MatTuple,
    eps: &Rational,
) -> Result<StabilizeOutcome, CliError> {
    let (g, g2) = (left_ref.size(), right_ref.size());
    let (mut k, mut k2) =
        compute_bezout(g, g2).ok_or_else(|| CliError::Failure("reference solutions must be nonempty".into()))?;
    if k2 == 0 {
        let c = g.gcd(&g2);
        k += g2 / c;
        k2 += g / c;
    }
    let data = FreeProductData {
        left_rep: left_ref.amplify(k),
        right_rep: right_ref.amplify(k2),
        left: left.clone(),
        right: right.clone(),
        left_step: g,
        right_step: g2,
        left_count: k,
        right_count: k2,
    };
    let solver = FreeProductSolver {
        data,
        left_solver: Box::new(findim_solver(left_ref, m, cap)),
        right_solver: Box::new(findim_solver(right_ref, m, cap)),
    };
    let p = free_product_presentation(&left, &right).map_err(|e| CliError::Failure(e.to_string()))?;
    Ok(solver.solve(&p, t, eps)?)
}
