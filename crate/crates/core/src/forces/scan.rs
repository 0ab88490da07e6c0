use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{force_vector, ForceError, NeckCase, NeckConfiguration};

/// Below this |F| a trial counts as an equilibrium.
pub const EQUILIBRIUM_TOLERANCE: f64 = 1e-12;

const LOG_RANGE: f64 = 2.0;
const MAX_REJECTIONS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub case: NeckCase,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Forces the lowest neck to this height instead of sampling it
    /// (case 1 only; case 2 always pins ŷ₁ = 1 and case 3b pins ±½).
    pub pinned: Option<f64>,
}

impl ScanOptions {
    pub fn new(case: NeckCase, n: usize, trials: usize, seed: u64) -> Self {
        Self { case, n, trials, seed, pinned: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanTrial {
    pub positions: Vec<f64>,
    pub weights: Vec<f64>,
    pub forces: Vec<f64>,
    /// Force on the lowest neck; the sign theorems say it is positive.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub options: ScanOptions,
    pub min_margin: f64,
    pub argmin: usize,
    pub all_positive: bool,
    pub equilibria: usize,
    pub trials: Vec<ScanTrial>,
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn sample(opts: &ScanOptions, rng: &mut ChaCha8Rng) -> Result<NeckConfiguration, ForceError> {
    let n = opts.n;
    let (lo, hi) = (10f64.powf(-LOG_RANGE), 10f64.powf(LOG_RANGE));
    for _ in 0..MAX_REJECTIONS {
        let weights: Vec<f64> = (0..n).map(|_| log_uniform(rng, lo, hi)).collect();
        let mut y: Vec<f64> = match opts.case {
            NeckCase::Case1 => {
                let mut y: Vec<f64> = (0..n).map(|_| log_uniform(rng, lo, hi)).collect();
                if let Some(p) = opts.pinned {
                    y[0] = p;
                }
                y
            }
            NeckCase::Case2 => {
                let mut y: Vec<f64> = (0..n).map(|_| log_uniform(rng, 1.0, hi)).collect();
                y[0] = 1.0;
                y
            }
            NeckCase::Case3b => {
                let mut y: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
                y[0] = -0.5;
                y[n - 1] = 0.5;
                y
            }
        };
        y.sort_by(f64::total_cmp);
        if opts.case == NeckCase::Case1 && opts.pinned.is_none() && y[0] >= 1.0 {
            continue;
        }
        if opts.case == NeckCase::Case1 && opts.pinned.is_some_and(|p| y[0] != p) {
            continue;
        }
        match NeckConfiguration::new(opts.case, y, weights, 0.0) {
            Ok(cfg) => return Ok(cfg),
            Err(ForceError::CoincidentNecks(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(ForceError::InvalidConfiguration("sampler exhausted its rejection budget".into()))
}

/// Random admissible configurations for one case and the force on the lowest
/// neck of each. Trial i draws from stream i of a ChaCha8 generator seeded
/// with `seed`, so the report is independent of thread scheduling.
pub fn equilibrium_scan(opts: ScanOptions) -> Result<ScanReport, ForceError> {
    let min_n = if opts.case == NeckCase::Case3b { 2 } else { 1 };
    if opts.n < min_n {
        return Err(ForceError::CaseHypothesisViolated(format!("{} needs at least {min_n} necks", opts.case.label())));
    }
    if opts.trials == 0 {
        return Err(ForceError::InvalidConfiguration("trials must be positive".into()));
    }
    if opts.pinned.is_some() && opts.case != NeckCase::Case1 {
        return Err(ForceError::InvalidConfiguration("only case 1 accepts a pinned neck".into()));
    }
    let trials: Vec<ScanTrial> = (0..opts.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(i as u64);
            let cfg = sample(&opts, &mut rng)?;
            let fv = force_vector(&cfg)?;
            Ok(ScanTrial {
                positions: cfg.positions().to_vec(),
                weights: cfg.weights().to_vec(),
                margin: fv.forces[0],
                forces: fv.forces,
            })
        })
        .collect::<Result<_, ForceError>>()?;
    let (argmin, min_margin) = trials
        .iter()
        .enumerate()
        .map(|(i, t)| (i, t.margin))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one trial");
    let equilibria = trials.iter().filter(|t| t.margin.abs() < EQUILIBRIUM_TOLERANCE).count();
    Ok(ScanReport { options: opts, min_margin, argmin, all_positive: min_margin > 0.0, equilibria, trials })
}
