//! The verification suites. Each returns checks and tables; none writes files.

pub mod barriers;
pub mod flux;
pub mod forces;
pub mod height;
pub mod pde;
pub mod residues;

use helicoid_lab::complexkit::ComplexError;
use helicoid_lab::flux::FluxError;
use helicoid_lab::forces::ForceError;
use helicoid_lab::geometry::GeometryError;
use helicoid_lab::harmonic::HarmonicError;
use helicoid_lab::msegraph::MseError;
use serde::{Deserialize, Serialize};

use crate::config::Params;
use crate::report::SuiteReport;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SuiteError {
    #[error(transparent)]
    Force(#[from] ForceError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Mse(#[from] MseError),
    #[error(transparent)]
    Flux(#[from] FluxError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Subcommand {
    Forces,
    Residues,
    Barriers,
    Pde,
    Height,
    Flux,
    All,
}

impl Subcommand {
    pub const SUITES: [Subcommand; 6] = [
        Subcommand::Residues,
        Subcommand::Barriers,
        Subcommand::Pde,
        Subcommand::Height,
        Subcommand::Forces,
        Subcommand::Flux,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Forces => "forces",
            Subcommand::Residues => "residues",
            Subcommand::Barriers => "barriers",
            Subcommand::Pde => "pde",
            Subcommand::Height => "height",
            Subcommand::Flux => "flux",
            Subcommand::All => "all",
        }
    }

    /// The suites this subcommand runs, in output order.
    pub fn suites(self) -> Vec<Subcommand> {
        match self {
            Subcommand::All => Self::SUITES.to_vec(),
            s => vec![s],
        }
    }
}

/// Runs one suite. Errors inside a suite become failing checks so that the
/// other suites still report.
pub fn run_suite(suite: Subcommand, p: &Params) -> SuiteReport {
    let out = match suite {
        Subcommand::Residues => residues::run(p),
        Subcommand::Barriers => barriers::run(p),
        Subcommand::Pde => pde::run(p),
        Subcommand::Height => height::run(p),
        Subcommand::Forces => forces::run(p),
        Subcommand::Flux => flux::run(p),
        Subcommand::All => unreachable!("'all' is expanded by the caller"),
    };
    out.unwrap_or_else(|e| {
        let mut r = SuiteReport::new(suite.name());
        r.check(crate::report::Check::failed(format!("{}.error", suite.name()), e.to_string()));
        r
    })
}
