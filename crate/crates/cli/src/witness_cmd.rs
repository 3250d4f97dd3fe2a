use std::io;
use std::path::PathBuf;

use clap::{Args, Subcommand};
use rankstab::approx::defect;
use rankstab::rational::format_rational;
use rankstab::witness::{folner_witness, vacuous_certify, vacuous_presentation, WitnessFamily};
use serde::Serialize;

use crate::error::CliError;
use crate::inputs;

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[command(subcommand)]
    family: Family,
    /// Write the generated tuple as JSON here.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Truncated shift and derivative for `xy − yx = 1`, of size n.
    Weyl {
        #[arg(long)]
        n: usize,
    },
    /// Near-representation of `M_k` of size `nk + 1`.
    Matsize {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Følner witness for the projectivized Weyl algebra at level i.
    Folner {
        #[arg(long)]
        i: usize,
    },
    /// Check that a triple is not simultaneously close to `XYZ = 1` and `XZY = 0`.
    Vacuous { tuple: PathBuf },
}

#[derive(Serialize)]
struct WeylRow {
    family: &'static str,
    n: usize,
    max_defect: String,
    expected: String,
}

#[derive(Serialize)]
struct MatsizeRow {
    family: &'static str,
    k: usize,
    n: usize,
    size: usize,
    max_defect: String,
    bound: String,
}

#[derive(Serialize)]
struct FolnerRow {
    family: &'static str,
    i: usize,
    n_i: usize,
    max_defect: String,
    interior_dim: usize,
    deep_interior_dim: usize,
    overflow_dim: usize,
    word_count: usize,
    boundary_bound: usize,
}

#[derive(Serialize)]
struct VacuousRow {
    family: &'static str,
    n: usize,
    product_defect: String,
    swapped_defect: String,
    verdict: String,
}

fn emit<T: Serialize>(row: &T) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.serialize(row)?;
    w.flush()?;
    Ok(())
}

pub fn run(args: WitnessArgs) -> Result<(), CliError> {
    let out = args.out.as_deref();
    match args.family {
        Family::Weyl { n } => {
            let family = WitnessFamily::Weyl;
            let (tuple, max_defect) = family.measure(n)?;
            if out.is_some() {
                inputs::write_json(&tuple, out)?;
            }
            let expected = family.defect_formula(n).map(|r| format_rational(&r)).unwrap_or_default();
            emit(&WeylRow { family: "weyl", n, max_defect: format_rational(&max_defect), expected })
        }
        Family::Matsize { k, n } => {
            let family = WitnessFamily::MatrixSize { k };
            let (tuple, max_defect) = family.measure(n)?;
            if out.is_some() {
                inputs::write_json(&tuple, out)?;
            }
            let bound = family.defect_formula(n).map(|r| format_rational(&r)).unwrap_or_default();
            let size = tuple.size();
            emit(&MatsizeRow { family: "matsize", k, n, size, max_defect: format_rational(&max_defect), bound })
        }
        Family::Folner { i } => {
            let w = folner_witness(i)?;
            let report = defect(&WitnessFamily::Folner.presentation()?, &w.tuple)?;
            if out.is_some() {
                inputs::write_json(&w.tuple, out)?;
            }
            emit(&FolnerRow {
                family: "folner",
                i,
                n_i: w.n,
                max_defect: format_rational(&report.max_defect),
                interior_dim: w.interior_dim,
                deep_interior_dim: w.deep_interior_dim,
                overflow_dim: w.overflow_dim,
                word_count: w.word_count,
                boundary_bound: w.boundary_bound(),
            })
        }
        Family::Vacuous { tuple } => {
            let t = inputs::tuple(&tuple)?;
            let report = defect(&vacuous_presentation(), &t)?;
            let verdict = vacuous_certify(&t)?;
            let verdict = serde_json::to_value(verdict).map_err(|e| CliError::Failure(e.to_string()))?;
            let [product, swapped] = [0, 1].map(|i| format_rational(&report.per_relator[i].normalized));
            emit(&VacuousRow {
                family: "vacuous",
                n: t.size(),
                product_defect: product,
                swapped_defect: swapped,
                verdict: verdict.as_str().unwrap_or_default().to_string(),
            })
        }
    }
}
