use std::sync::Arc;

use faer::prelude::Solve;
use faer::sparse::{SparseColMat, Triplet};
use serde::{Deserialize, Serialize};

use super::domain::{Component, GraphDomain};
use super::graph::GraphFunction;
use super::stencil::{Discretization, NodeKind};
use super::MseError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Stop when the sup-norm of the cell flux imbalance drops below this.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { tolerance: 1e-10, max_iterations: 100 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentFlux {
    pub component: String,
    pub flux: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub residual_norm: f64,
    pub newton_iterations: usize,
    pub max_gradient: f64,
    /// ∫⟨∇f, ν⟩/W over each boundary component, ν exterior to the domain.
    pub flux_by_component: Vec<ComponentFlux>,
    pub residual_history: Vec<f64>,
    pub unknowns: usize,
}

impl SolveReport {
    pub fn flux(&self, component: Component) -> Option<f64> {
        let label = component.label();
        self.flux_by_component.iter().find(|c| c.component == label).map(|c| c.flux)
    }
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn newton_step(disc: &Discretization, x: &[f64], r: &[f64]) -> Result<Vec<f64>, MseError> {
    let n = disc.unknowns();
    let triplets: Vec<Triplet<usize, usize, f64>> =
        disc.jacobian(x).into_iter().map(|(i, j, v)| Triplet::new(i, j, v)).collect();
    let mat = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &triplets)
        .map_err(|e| MseError::LinearSolve(format!("{e:?}")))?;
    let lu = mat.sp_lu().map_err(|e| MseError::LinearSolve(format!("{e:?}")))?;
    let rhs = faer::col::Col::from_fn(n, |i| -r[i]);
    let dx = lu.solve(&rhs);
    let out: Vec<f64> = (0..n).map(|i| dx[i]).collect();
    if out.iter().any(|v| !v.is_finite()) {
        return Err(MseError::LinearSolve("singular Jacobian".into()));
    }
    Ok(out)
}

/// Damped Newton iteration for the discrete minimal surface equation,
/// starting from `initial` (whose fixed nodes are reset to the data).
pub fn solve_graph(initial: &GraphFunction, opts: &SolveOptions) -> Result<(GraphFunction, SolveReport), MseError> {
    let domain: &Arc<GraphDomain> = initial.domain();
    domain.validate()?;
    let disc = Discretization::new(domain);
    let mut x = disc.impose(initial.values());
    if x.iter().any(|v| !v.is_finite()) {
        return Err(MseError::DomainMismatch);
    }
    let step = |x: &[f64], dx: &[f64], alpha: f64| -> Vec<f64> {
        let mut out = x.to_vec();
        for (v, &node) in disc.active.iter().enumerate() {
            out[node] += alpha * dx[v];
        }
        out
    };
    // the harmonic problem (W ≡ 1) is linear: one Newton step solves it, and
    // it is a far better start than a guess with boundary-layer jumps
    let mut flat = disc.clone();
    for f in &mut flat.faces {
        f.mu = 0.0;
    }
    let r0 = flat.imbalance(&x);
    let dx0 = newton_step(&flat, &x, &r0)?;
    let harmonic = step(&x, &dx0, 1.0);
    if l2(&disc.imbalance(&harmonic)) < l2(&disc.imbalance(&x)) {
        x = harmonic;
    }
    let mut r = disc.imbalance(&x);
    let mut norm = sup(&r);
    let mut history = vec![norm];
    let mut iterations = 0;
    while norm >= opts.tolerance {
        if iterations == opts.max_iterations {
            return Err(MseError::NotConverged { iterations, residual: norm, history });
        }
        let dx = newton_step(&disc, &x, &r)?;
        // the Newton direction always descends ‖r‖₂, so damp on that merit
        let merit = l2(&r);
        let mut alpha = 1.0;
        loop {
            let trial = step(&x, &dx, alpha);
            let rt = disc.imbalance(&trial);
            if l2(&rt) < merit {
                x = trial;
                norm = sup(&rt);
                r = rt;
                break;
            }
            alpha *= 0.5;
            if alpha < 1e-9 {
                return Err(MseError::NotConverged { iterations, residual: norm, history });
            }
        }
        iterations += 1;
        history.push(norm);
    }

    if domain.all_dirichlet() {
        let fixed = disc.kinds.iter().filter_map(|k| match *k {
            NodeKind::Fixed { value, .. } => Some(value),
            NodeKind::Active(_) => None,
        });
        let (lo, hi) = fixed.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        let slack = 1e-9 * (1.0 + hi.abs().max(lo.abs()));
        if let Some(v) = disc.active.iter().map(|&n| x[n]).find(|&v| v < lo - slack || v > hi + slack) {
            return Err(MseError::MaximumPrinciple { value: v, min: lo, max: hi });
        }
    }
    let flux_by_component =
        disc.component_fluxes(&x).into_iter().map(|(c, flux)| ComponentFlux { component: c.label(), flux }).collect();
    let solution = GraphFunction::from_values(domain.clone(), x)?;
    let report = SolveReport {
        residual_norm: norm,
        newton_iterations: iterations,
        max_gradient: solution.max_metric_gradient(),
        flux_by_component,
        residual_history: history,
        unknowns: disc.unknowns(),
    };
    Ok((solution, report))
}

/// Discrete vertical flux through the ring between rows i and i + 1 of a
/// periodic domain, with the same face formula the solver balances.
pub fn ring_flux(f: &GraphFunction, i: usize) -> Result<f64, MseError> {
    let d = f.domain();
    if !d.is_periodic() || i >= d.ns() {
        return Err(MseError::InvalidRing(i));
    }
    let cols = d.columns();
    let ht = d.ht();
    let hs = d.hs();
    for j in 0..cols {
        for row in [i, i + 1] {
            if d.hole_containing(d.node_point(row, j)).is_some() {
                return Err(MseError::InvalidRing(i));
            }
        }
    }
    let tau = |row: usize, j: usize| (f.at(row, (j + 1) % cols) - f.at(row, (j + cols - 1) % cols)) / (2.0 * ht);
    let s = d.s_at(i) + 0.5 * hs;
    let mut total = 0.0;
    for j in 0..cols {
        let n = (f.at(i + 1, j) - f.at(i, j)) / hs;
        let t = 0.5 * (tau(i, j) + tau(i + 1, j));
        let mu = d.mu(s, d.theta_at(j));
        total += n / (1.0 + mu * (n * n + t * t)).sqrt() * ht;
    }
    Ok(total)
}
