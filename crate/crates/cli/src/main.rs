use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use helicoid_lab_cli::{run, ExperimentConfig, Params, Subcommand, DEFAULT_OUT_DIR, OUT_DIR_ENV, PARAMS};

#[derive(Parser)]
#[command(name = "helicoid-lab", version, about = "Run the helicoid-lab verification suites")]
struct Cli {
    #[arg(value_enum)]
    subcommand: Subcommand,
    /// Neck case for the force suite: all, 1, 2 or 3b.
    #[arg(long)]
    case: Option<String>,
    /// Necks per scanned configuration.
    #[arg(long)]
    n: Option<String>,
    /// Scan trials per case.
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Exact solutions for the PDE suite: both, helicoid or catenoid.
    #[arg(long)]
    exact: Option<String>,
    /// Refinement levels beyond the coarsest grid.
    #[arg(long)]
    refine: Option<String>,
    /// Output directory.
    #[arg(long, env = OUT_DIR_ENV, default_value = DEFAULT_OUT_DIR)]
    out: PathBuf,
    /// Override any parameter; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// List parameters with defaults and exit.
    #[arg(long)]
    list_params: bool,
}

fn params(cli: &Cli) -> Result<Params, helicoid_lab_cli::ConfigError> {
    let mut p = Params::default();
    for a in &cli.set {
        p.assign(a)?;
    }
    let flags = [
        ("case", &cli.case),
        ("n", &cli.n),
        ("trials", &cli.trials),
        ("seed", &cli.seed),
        ("exact", &cli.exact),
        ("refine", &cli.refine),
    ];
    for (key, v) in flags {
        if let Some(v) = v {
            p.set(key, v)?;
        }
    }
    p.validate()?;
    Ok(p)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_params {
        for s in PARAMS {
            println!("{:<18} {:<22} {}", s.key, s.default, s.doc);
        }
        return ExitCode::SUCCESS;
    }
    let params = match params(&cli) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let config = ExperimentConfig { subcommand: cli.subcommand, params, out_dir: cli.out.clone() };
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for c in outcome.checks() {
        println!("{}", c.line());
    }
    println!("wrote {} files to {}", outcome.files.len(), config.out_dir.display());
    let failing = outcome.failing();
    if failing.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("{} failing checks:", failing.len());
        for c in failing {
            eprintln!("  {}", c.name);
        }
        ExitCode::from(1)
    }
}
