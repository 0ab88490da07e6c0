//! End-to-end acceptance: one PASS/FAIL line per criterion. Tolerances are
//! pinned here rather than read from the parameter defaults, so editing a
//! default cannot loosen a criterion.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use helicoid_lab_cli::suites::{barriers, flux, forces, height, pde, residues};
use helicoid_lab_cli::{Params, SuiteReport};

const PINNED: &[(&str, &str)] = &[
    ("residue_count", "50"),
    ("residue_tol", "1e-8"),
    ("laurent_tol", "1e-9"),
    ("real_residue_tol", "1e-10"),
    ("barrier_pitches", "1e-2,1e-4,1e-6"),
    ("laplacian_margin", "0.95"),
    ("symmetry_tol", "1e-12"),
    ("radii", "0.5,1,2"),
    ("order_target", "2"),
    ("order_tol", "0.25"),
    ("flux_tol", "1e-4"),
    ("trials", "10000"),
    ("route_tol", "1e-9"),
    ("equilibrium_tol", "1e-12"),
    ("pitches", "1e-3,1e-4,1e-6,1e-8"),
    ("kill_tol", "1e-10"),
    ("k_spread", "2"),
    ("seed", "7"),
];

fn params() -> Params {
    let mut p = Params::default();
    for (k, v) in PINNED {
        p.set(k, v).expect("pinned parameter");
    }
    p.validate().expect("pinned parameters validate");
    p
}

struct Criterion {
    id: u8,
    title: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(id: u8, title: &'static str) -> Self {
        Self { id, title, failures: Vec::new(), notes: Vec::new() }
    }

    /// Every check of the report must pass and at least `min_checks` exist.
    fn report(&mut self, r: &SuiteReport, min_checks: usize) {
        if r.checks.len() < min_checks {
            self.failures.push(format!("{}: {} checks, expected ≥ {min_checks}", r.suite, r.checks.len()));
        }
        for c in r.failing() {
            self.failures.push(c.line());
        }
        self.notes.push(format!("{} checks", r.checks.len()));
    }

    fn require(&mut self, r: &SuiteReport, name: &str) {
        if r.find(name).is_none() {
            self.failures.push(format!("missing check {name}"));
        }
    }

    fn within(&mut self, what: &str, elapsed: Duration, limit: Duration) {
        self.notes.push(format!("{what} {:.2}s", elapsed.as_secs_f64()));
        if elapsed >= limit {
            self.failures.push(format!("{what} took {:.2}s ≥ {}s", elapsed.as_secs_f64(), limit.as_secs()));
        }
    }

    fn print(&self) -> bool {
        let ok = self.failures.is_empty();
        println!(
            "criterion {} {}: {} ({})",
            self.id,
            if ok { "PASS" } else { "FAIL" },
            self.title,
            self.notes.join(", ")
        );
        for f in &self.failures {
            println!("    {f}");
        }
        ok
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn unwrap(r: Result<SuiteReport, helicoid_lab_cli::suites::SuiteError>, suite: &str) -> SuiteReport {
    r.unwrap_or_else(|e| {
        let mut rep = SuiteReport::new(suite);
        rep.check(helicoid_lab_cli::Check::failed(format!("{suite}.error"), e.to_string()));
        rep
    })
}

fn run_binary(out: &Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_helicoid-lab"))
        .args(["all", "--seed", "7", "--out"])
        .arg(out)
        .env_remove("HELICOID_LAB_OUT")
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("exit {:?}", status.status.code()));
    }
    std::fs::read(out.join("results.json")).map_err(|e| e.to_string())
}

#[test]
fn acceptance() {
    let p = params();
    let mut all = Vec::new();

    let mut c = Criterion::new(1, "residue identities at 50 random poles below 1e-8 in under 5s");
    let (r, t) = timed(|| residues::residue_identities(&p));
    let r = unwrap(r, "residues");
    c.report(&r, 4);
    c.within("runtime", t, Duration::from_secs(5));
    all.push(c.print());

    let mut c = Criterion::new(2, "Laurent reconstruction below 1e-9 and real residues below 1e-10 in under 30s");
    let (r, t) = timed(|| residues::laurent_checks(&p));
    let r = unwrap(r, "laurent");
    c.report(&r, 3);
    for name in ["laurent.rational_reconstruction", "laurent.c1_reconstruction", "laurent.real_residue_imaginary_part"]
    {
        c.require(&r, name);
    }
    c.within("runtime", t, Duration::from_secs(30));
    all.push(c.print());

    let mut c =
        Criterion::new(3, "barrier properties at three pitches, Laplacian margin 0.95, Green symmetries to 1e-12");
    let r = unwrap(barriers::run(&p), "barriers");
    c.report(&r, 3 * 6 + 4);
    for name in ["supersolution.laplacian_margin", "green.conjugation_antisymmetry", "green.inversion_symmetry"] {
        c.require(&r, name);
    }
    all.push(c.print());

    let mut c =
        Criterion::new(4, "helicoid residual order 2±0.25 at three radii, catenoid order 2, neck flux 2π to 1e-4");
    let r = unwrap(pde::run(&p), "pde");
    c.report(&r, 3 + 2);
    for name in ["pde.catenoid_neck_flux", "pde.catenoid_conservative_flux", "pde.catenoid_order[0]"] {
        c.require(&r, name);
    }
    all.push(c.print());

    let mut c = Criterion::new(5, "height estimate and ring bound on every instance");
    let r = unwrap(height::run(&p), "height");
    c.report(&r, 2 * 6);
    c.require(&r, "height.estimate[catenoid_analytic]");
    c.require(&r, "height.ring[catenoid_analytic]");
    all.push(c.print());

    let mut c =
        Criterion::new(6, "force routes agree, scans positive, equator equilibrium, cross term monotone, under 2min");
    let (r, t) = timed(|| forces::run(&p));
    let r = unwrap(r, "forces");
    c.report(&r, 3 + 3 + 2 + 2);
    c.require(&r, "forces.cross_term_monotone");
    c.within("runtime", t, Duration::from_secs(120));
    all.push(c.print());

    let mut c = Criterion::new(7, "flux homology invariance, stable expansion constant, χ_Y symmetry kill below 1e-10");
    let r = unwrap(flux::run(&p), "flux");
    c.report(&r, 10);
    c.require(&r, "flux.symmetry_kill");
    all.push(c.print());

    let mut c = Criterion::new(8, "two runs of `all --seed 7` write identical results.json");
    let dirs = (tempfile::tempdir().expect("tempdir"), tempfile::tempdir().expect("tempdir"));
    match (run_binary(dirs.0.path()), run_binary(dirs.1.path())) {
        (Ok(a), Ok(b)) => {
            c.notes.push(format!("{} bytes", a.len()));
            if a != b {
                c.failures.push("results.json differs between runs".into());
            }
        }
        (a, b) => c.failures.push(format!("run failed: {:?} / {:?}", a.err(), b.err())),
    }
    all.push(c.print());

    let passed = all.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria pass", all.len());
    assert_eq!(passed, all.len(), "acceptance criteria failing");
}
