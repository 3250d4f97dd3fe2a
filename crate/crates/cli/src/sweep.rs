use std::io;
use std::path::PathBuf;

use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankstab::approx::defect;
use rankstab::freealg::{MatTuple, Presentation};
use rankstab::rational::{format_rational, Rational};
use rankstab::sample::perturb;
use rankstab::stabilize::{ExactSolver, FindimSolver, StabilizeError};
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{findim_solver, resolve_eps};
use crate::config::Config;
use crate::error::CliError;
use crate::inputs;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "RANKSTAB_THREADS";

#[derive(Args, Debug)]
pub struct SweepArgs {
    pub presentation: PathBuf,
    /// Exact reference solution; sizes are the multiples of its size.
    #[arg(long = "ref", value_name = "FILE")]
    pub reference: Option<PathBuf>,
    /// Inclusive size range `a..b`.
    #[arg(long)]
    pub sizes: Option<String>,
    /// Random rank-one updates added to each amplified reference.
    #[arg(long)]
    pub noise_rank: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Closeness parameter ε [default: 1/2].
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub cap: Option<usize>,
    /// Worker threads; capped by RANKSTAB_THREADS. Output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Serialize)]
struct Row {
    size: usize,
    trial: usize,
    defect: String,
    recovered_distance: String,
    verified: bool,
}

struct Plan {
    presentation: Presentation,
    reference: MatTuple,
    solver: FindimSolver,
    eps: Rational,
    noise_rank: usize,
    seed: u64,
}

impl Plan {
    /// Each trial draws from its own stream of the seeded generator.
    fn trial(&self, size: usize, trial: usize) -> Result<Row, CliError> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((size as u64) << 32) | trial as u64);
        let exact = self.reference.amplify(size / self.reference.size());
        let noisy = perturb(&exact, self.noise_rank, &mut rng);
        let report = defect(&self.presentation, &noisy)?;
        let attempt = match self.solver.solve(&self.presentation, &noisy, &self.eps) {
            Ok(out) => out,
            Err(StabilizeError::NotStabilized(out)) => *out,
            Err(e) => return Err(e.into()),
        };
        let distance = Rational::new((attempt.max_distance() as i64).into(), (size as i64).into());
        Ok(Row {
            size,
            trial,
            defect: format_rational(&report.max_defect),
            recovered_distance: format_rational(&distance),
            verified: attempt.verified,
        })
    }
}

fn thread_count(requested: Option<usize>) -> Result<Option<usize>, CliError> {
    let cap = match std::env::var(THREADS_ENV) {
        Ok(text) => Some(
            text.trim()
                .parse::<usize>()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| CliError::Parse(format!("{THREADS_ENV}={text:?} is not a positive integer")))?,
        ),
        Err(_) => None,
    };
    Ok(match (requested, cap) {
        (Some(r), Some(c)) => Some(r.min(c)),
        (r, c) => r.or(c),
    })
}

pub fn run(args: SweepArgs, config: &Config) -> Result<(), CliError> {
    let presentation = inputs::presentation(&args.presentation)?;
    let reference_path = args
        .reference
        .as_ref()
        .or(config.reference.as_ref())
        .ok_or_else(|| CliError::Parse("--ref is required".into()))?;
    let reference = inputs::tuple(reference_path)?;
    presentation.check_tuple(&reference)?;
    if reference.size() == 0 || !presentation.is_solution(&reference)? {
        return Err(CliError::Failure("reference must be a nonempty exact solution".into()));
    }
    let sizes_text =
        args.sizes.as_deref().or(config.sizes.as_deref()).ok_or_else(|| CliError::Parse("--sizes is required".into()))?;
    let (lo, hi) = inputs::size_range(sizes_text)?;
    let s = reference.size();
    let sizes: Vec<usize> = (lo.div_ceil(s).max(1)..=hi / s).map(|k| k * s).collect();
    let trials = args.trials.or(config.trials).unwrap_or(1);
    let plan = Plan {
        solver: findim_solver(reference.clone(), args.m.or(config.m), args.cap.or(config.cap)),
        presentation,
        reference,
        eps: resolve_eps(args.eps.as_deref(), config)?,
        noise_rank: args.noise_rank.or(config.noise_rank).unwrap_or(1),
        seed: args.seed.or(config.seed).unwrap_or(0),
    };

    let jobs: Vec<(usize, usize)> = sizes.iter().flat_map(|&n| (0..trials).map(move |t| (n, t))).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(args.threads.or(config.threads))? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Failure(e.to_string()))?;
    let rows: Vec<Row> =
        pool.install(|| jobs.par_iter().map(|&(n, t)| plan.trial(n, t)).collect::<Result<Vec<_>, _>>())?;

    let mut w = csv::Writer::from_writer(io::stdout().lock());
    if rows.is_empty() {
        w.write_record(["size", "trial", "defect", "recovered_distance", "verified"])?;
    }
    for row in &rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
