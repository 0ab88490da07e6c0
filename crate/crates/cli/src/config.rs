use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::suites::Subcommand;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown parameter '{0}'")]
    UnknownKey(String),
    #[error("parameter '{key}': cannot parse '{raw}' as {expected}")]
    BadValue { key: String, raw: String, expected: &'static str },
    #[error("expected key=value, got '{0}'")]
    MalformedAssignment(String),
    #[error("parameter '{key}' out of range: {detail}")]
    OutOfRange { key: String, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Int,
    Float,
    FloatList,
    Choice(&'static [&'static str]),
}

impl Kind {
    fn expected(self) -> &'static str {
        match self {
            Kind::Int => "a non-negative integer",
            Kind::Float => "a finite number",
            Kind::FloatList => "a comma-separated list of numbers",
            Kind::Choice(_) => "one of the listed choices",
        }
    }
}

pub struct ParamSpec {
    pub key: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub doc: &'static str,
}

const CASES: &[&str] = &["all", "1", "2", "3b"];
const EXACT: &[&str] = &["both", "helicoid", "catenoid"];

macro_rules! param {
    ($key:literal, $kind:expr, $default:literal, $doc:literal) => {
        ParamSpec { key: $key, kind: $kind, default: $default, doc: $doc }
    };
}

/// Every tunable with its default. Unknown keys are usage errors.
pub const PARAMS: &[ParamSpec] = &[
    param!("seed", Kind::Int, "7", "master seed for every random draw"),
    param!("lambda", Kind::Float, "4", "neck level constant: holes sit on catenoid level curves at height r·acosh(2λ)"),
    // forces
    param!("case", Kind::Choice(CASES), "all", "neck case for the force suite"),
    param!("n", Kind::Int, "3", "necks per scanned configuration"),
    param!("trials", Kind::Int, "10000", "scan trials per case"),
    param!("route_configs", Kind::Int, "20", "random configurations per case for route comparison"),
    param!("route_tol", Kind::Float, "1e-9", "closed form vs contour route"),
    param!("equilibrium_tol", Kind::Float, "1e-12", "force at the single equatorial neck"),
    param!("pitches", Kind::FloatList, "1e-3,1e-4,1e-6,1e-8", "decreasing pitch sweep for the cross term"),
    param!("cross_force_tol", Kind::Float, "1e-6", "quadratic flux vs closed-form force at the last pitch"),
    // residues
    param!("residue_count", Kind::Int, "50", "random poles per residue identity"),
    param!("residue_nodes", Kind::Int, "512", "trapezoid nodes per residue contour"),
    param!("residue_tol", Kind::Float, "1e-8", "numeric vs closed-form residue"),
    param!("laurent_samples", Kind::Int, "20", "random rational functions for reconstruction"),
    param!("laurent_tol", Kind::Float, "1e-9", "Laurent reconstruction error"),
    param!("real_residue_tol", Kind::Float, "1e-10", "|Im a_{i,1}| for gradients of real functions"),
    // barriers
    param!("barrier_pitches", Kind::FloatList, "1e-2,1e-4,1e-6", "pitches for the H_t properties"),
    param!("barrier_tol", Kind::Float, "1e-12", "rounding slack in the H_t inequalities"),
    param!("laplacian_margin", Kind::Float, "0.95", "discretization margin on Δg ≥ 4/δ⁴"),
    param!("c2", Kind::Float, "64", "constant C₂ of the supersolution"),
    param!("symmetry_samples", Kind::Int, "10000", "random cover points for h_p symmetries"),
    param!("symmetry_tol", Kind::Float, "1e-12", "relative h_p symmetry defect"),
    // pde
    param!("exact", Kind::Choice(EXACT), "both", "exact solutions used by the PDE suite"),
    param!("refine", Kind::Int, "3", "refinement levels beyond the coarsest grid"),
    param!("radii", Kind::FloatList, "0.5,1,2", "sphere radii for the helicoid residual"),
    param!("order_target", Kind::Float, "2", "expected convergence order"),
    param!("order_tol", Kind::Float, "0.25", "allowed deviation of observed orders"),
    param!("flux_tol", Kind::Float, "1e-4", "catenoid neck flux vs 2π"),
    // height
    param!("height_ns", Kind::Int, "128", "radial cells of the solved height instances"),
    param!("neck_radius", Kind::Float, "0.02", "neck size r in the neck-hole height instance"),
    // flux
    param!("homology_factor", Kind::Float, "10", "multiple of the grid error allowed between homologous loops"),
    param!("k_spread", Kind::Float, "2", "max/min of the fitted expansion constant"),
    param!("kill_tol", Kind::Float, "1e-10", "χ_Y flux of conjugation-odd graphs on symmetric loops"),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(u64),
    Float(f64),
    List(Vec<f64>),
    Text(String),
}

fn spec(key: &str) -> Result<&'static ParamSpec, ConfigError> {
    PARAMS.iter().find(|p| p.key == key).ok_or_else(|| ConfigError::UnknownKey(key.to_string()))
}

fn parse(spec: &ParamSpec, raw: &str) -> Result<Value, ConfigError> {
    let bad =
        || ConfigError::BadValue { key: spec.key.to_string(), raw: raw.to_string(), expected: spec.kind.expected() };
    let float = |s: &str| s.trim().parse::<f64>().ok().filter(|v| v.is_finite());
    match spec.kind {
        Kind::Int => raw.trim().parse::<u64>().map(Value::Int).map_err(|_| bad()),
        Kind::Float => float(raw).map(Value::Float).ok_or_else(bad),
        Kind::FloatList => raw.split(',').map(float).collect::<Option<Vec<_>>>().map(Value::List).ok_or_else(bad),
        Kind::Choice(options) => {
            let v = raw.trim();
            options.contains(&v).then(|| Value::Text(v.to_string())).ok_or_else(bad)
        }
    }
}

/// Resolved parameters, always complete.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params(BTreeMap<String, Value>);

impl Default for Params {
    fn default() -> Self {
        Self(PARAMS.iter().map(|p| (p.key.to_string(), parse(p, p.default).expect("valid default"))).collect())
    }
}

impl Params {
    pub fn set(&mut self, key: &str, raw: &str) -> Result<(), ConfigError> {
        let s = spec(key)?;
        self.0.insert(key.to_string(), parse(s, raw)?);
        Ok(())
    }

    /// Applies `key=value`.
    pub fn assign(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let (k, v) =
            assignment.split_once('=').ok_or_else(|| ConfigError::MalformedAssignment(assignment.to_string()))?;
        self.set(k.trim(), v)
    }

    pub fn int(&self, key: &str) -> u64 {
        match self.0.get(key) {
            Some(Value::Int(v)) => *v,
            other => panic!("parameter {key} is not an integer: {other:?}"),
        }
    }

    pub fn usize(&self, key: &str) -> usize {
        self.int(key) as usize
    }

    pub fn float(&self, key: &str) -> f64 {
        match self.0.get(key) {
            Some(Value::Float(v)) => *v,
            other => panic!("parameter {key} is not a number: {other:?}"),
        }
    }

    pub fn list(&self, key: &str) -> &[f64] {
        match self.0.get(key) {
            Some(Value::List(v)) => v,
            other => panic!("parameter {key} is not a list: {other:?}"),
        }
    }

    pub fn text(&self, key: &str) -> &str {
        match self.0.get(key) {
            Some(Value::Text(v)) => v,
            other => panic!("parameter {key} is not a choice: {other:?}"),
        }
    }

    /// Range checks that cannot be expressed by the parameter kinds.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let range = |key: &str, detail: &str| ConfigError::OutOfRange { key: key.into(), detail: detail.into() };
        for key in ["trials", "n", "residue_count", "laurent_samples", "symmetry_samples", "route_configs"] {
            if self.int(key) == 0 {
                return Err(range(key, "must be at least 1"));
            }
        }
        if self.int("refine") < 2 {
            return Err(range("refine", "need at least two refinements for an observed order"));
        }
        if self.int("refine") > 6 {
            return Err(range("refine", "at most 6"));
        }
        if self.int("residue_nodes") < 16 {
            return Err(range("residue_nodes", "at least 16"));
        }
        if self.int("height_ns") < 16 {
            return Err(range("height_ns", "at least 16"));
        }
        for p in PARAMS.iter().filter(|p| p.kind == Kind::Float) {
            if !(self.float(p.key) > 0.0) {
                return Err(range(p.key, "must be positive"));
            }
        }
        if self.float("lambda") < 0.5 {
            return Err(range("lambda", "acosh(2λ) needs λ ≥ 1/2"));
        }
        for key in ["pitches", "barrier_pitches"] {
            let l = self.list(key);
            if l.is_empty() || l.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
                return Err(range(key, "pitches must lie in (0, 1)"));
            }
        }
        if self.list("pitches").windows(2).any(|w| w[1] >= w[0]) {
            return Err(range("pitches", "must decrease"));
        }
        if self.list("radii").iter().any(|&r| !(r > 0.0)) {
            return Err(range("radii", "must be positive"));
        }
        Ok(())
    }
}

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "HELICOID_LAB_OUT";
pub const DEFAULT_OUT_DIR: &str = "helicoid-lab-out";

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub subcommand: Subcommand,
    pub params: Params,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn new(subcommand: Subcommand, out_dir: impl Into<PathBuf>) -> Self {
        Self { subcommand, params: Params::default(), out_dir: out_dir.into() }
    }
}
