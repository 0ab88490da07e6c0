//! Conservative face-flux discretization of div(∇f/W) = 0 in log-polar
//! coordinates w = s + iθ, where W = √(1 + μ|∇_w f|²) and μ = λ⁻²e^{−2s}.

use std::collections::BTreeMap;

use super::domain::{Component, GraphDomain, ThetaRange};

/// Arms shorter than this fraction of a cell pin the node to the hole value.
const MIN_ARM: f64 = 1e-3;

/// Affine form c + Σ aₖ·u[k] in the node values.
#[derive(Debug, Clone, Default)]
pub(crate) struct Lin {
    pub c: f64,
    pub terms: Vec<(usize, f64)>,
}

impl Lin {
    fn constant(c: f64) -> Self {
        Self { c, terms: Vec::new() }
    }

    fn var(k: usize) -> Self {
        Self { c: 0.0, terms: vec![(k, 1.0)] }
    }

    fn axpy(&mut self, a: f64, other: &Lin) {
        self.c += a * other.c;
        for &(k, v) in &other.terms {
            self.terms.push((k, a * v));
        }
    }

    fn scaled(&self, a: f64) -> Lin {
        let mut out = Lin::default();
        out.axpy(a, self);
        out
    }

    fn compact(mut self) -> Self {
        self.terms.sort_by_key(|t| t.0);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(self.terms.len());
        for (k, v) in self.terms {
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 += v,
                _ => merged.push((k, v)),
            }
        }
        self.terms = merged;
        self
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().fold(self.c, |acc, &(k, v)| acc + v * x[k])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum NodeKind {
    Active(usize),
    Fixed { value: f64, owner: Component, interior: bool },
}

#[derive(Debug, Clone)]
struct Arm {
    len: f64,
    far: Lin,
    owner: Option<Component>,
    neighbor: Option<usize>,
}

/// One face of an active node's control volume.
#[derive(Debug, Clone)]
pub(crate) struct Face {
    /// Outward normal derivative.
    pub normal: Lin,
    /// Tangential derivative at the face.
    pub tangential: Lin,
    pub mu: f64,
    /// Control-volume width along the face.
    pub transverse: f64,
    pub owner: Option<Component>,
}

impl Face {
    /// Outward flux density n/W.
    pub fn flux(&self, x: &[f64]) -> f64 {
        let n = self.normal.eval(x);
        let t = self.tangential.eval(x);
        n / (1.0 + self.mu * (n * n + t * t)).sqrt()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Discretization {
    pub kinds: Vec<NodeKind>,
    pub active: Vec<usize>,
    pub faces: Vec<Face>,
    pub face_start: Vec<usize>,
    pub area: Vec<f64>,
}

struct NodeArms {
    e: Option<Arm>,
    w: Option<Arm>,
    n: Option<Arm>,
    s: Option<Arm>,
}

fn derivative(f: &Lin, plus: Option<&Arm>, minus: Option<&Arm>) -> Lin {
    match (plus, minus) {
        (Some(p), Some(m)) => {
            let (hp, hm) = (p.len, m.len);
            let denom = hp * hm * (hp + hm);
            let mut d = Lin::default();
            d.axpy(hm * hm / denom, &p.far);
            d.axpy((hp * hp - hm * hm) / denom, f);
            d.axpy(-hp * hp / denom, &m.far);
            d.compact()
        }
        (Some(p), None) => {
            let mut d = p.far.scaled(1.0 / p.len);
            d.axpy(-1.0 / p.len, f);
            d.compact()
        }
        (None, Some(m)) => {
            let mut d = f.scaled(1.0 / m.len);
            d.axpy(-1.0 / m.len, &m.far);
            d.compact()
        }
        (None, None) => Lin::default(),
    }
}

impl Discretization {
    pub fn new(d: &GraphDomain) -> Self {
        let rows = d.rows();
        let cols = d.columns();
        let ns = d.ns();
        let periodic = d.is_periodic();
        let mut kinds: Vec<Option<NodeKind>> = vec![None; d.node_count()];

        for i in 0..rows {
            for j in 0..cols {
                let p = d.node_point(i, j);
                let idx = d.index(i, j);
                let fixed = |value: f64, owner| Some(NodeKind::Fixed { value, owner, interior: false });
                kinds[idx] = if let Some(k) = d.hole_containing(p) {
                    Some(NodeKind::Fixed { value: d.holes()[k].value, owner: Component::Hole(k), interior: true })
                } else if let (0, Some(v)) = (i, d.inner().eval(p)) {
                    fixed(v, Component::Inner)
                } else if let (true, Some(v)) = (i == ns, d.outer().eval(p)) {
                    fixed(v, Component::Outer)
                } else if let ThetaRange::Strip { lower, upper, .. } = d.theta_range() {
                    if j == 0 {
                        fixed(lower.eval(p).expect("strip rays are Dirichlet"), Component::Lower)
                    } else if j + 1 == cols {
                        fixed(upper.eval(p).expect("strip rays are Dirichlet"), Component::Upper)
                    } else {
                        None
                    }
                } else {
                    None
                };
            }
        }

        let neighbor = |i: usize, j: usize, dir: u8| -> Option<(usize, usize)> {
            match dir {
                0 => (i < ns).then(|| (i + 1, j)),
                1 => (i > 0).then(|| (i - 1, j)),
                2 => {
                    if j + 1 < cols {
                        Some((i, j + 1))
                    } else if periodic {
                        Some((i, 0))
                    } else {
                        None
                    }
                }
                _ => {
                    if j > 0 {
                        Some((i, j - 1))
                    } else if periodic {
                        Some((i, cols - 1))
                    } else {
                        None
                    }
                }
            }
        };
        let step = |dir: u8| -> (f64, f64) {
            match dir {
                0 => (d.hs(), 0.0),
                1 => (-d.hs(), 0.0),
                2 => (0.0, d.ht()),
                _ => (0.0, -d.ht()),
            }
        };
        // fraction of the way to a hole-interior neighbor where the hole starts
        let arm_fraction = |i: usize, j: usize, dir: u8, hole: usize| -> f64 {
            let (ds, dt) = step(dir);
            let (s0, t0) = (d.s_at(i), d.theta_at(j));
            let h = d.holes()[hole];
            let inside = |a: f64| {
                let p = d.log_point(s0 + a * ds, t0 + a * dt);
                (p.planar() - h.center.planar()).norm() < h.radius
            };
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if inside(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        };

        // pin nodes whose arm into a hole is negligible
        for i in 0..rows {
            for j in 0..cols {
                let idx = d.index(i, j);
                if kinds[idx].is_some() {
                    continue;
                }
                for dir in 0..4u8 {
                    if let Some((a, b)) = neighbor(i, j, dir) {
                        if let Some(NodeKind::Fixed { owner: Component::Hole(k), interior: true, value }) =
                            kinds[d.index(a, b)]
                        {
                            if arm_fraction(i, j, dir, k) < MIN_ARM {
                                kinds[idx] =
                                    Some(NodeKind::Fixed { value, owner: Component::Hole(k), interior: false });
                                break;
                            }
                        }
                    }
                }
            }
        }

        let mut active = Vec::new();
        let kinds: Vec<NodeKind> = kinds
            .into_iter()
            .enumerate()
            .map(|(idx, k)| {
                k.unwrap_or_else(|| {
                    active.push(idx);
                    NodeKind::Active(active.len() - 1)
                })
            })
            .collect();

        let value_lin = Lin::var;
        let arms_of = |i: usize, j: usize| -> NodeArms {
            let mk = |dir: u8| -> Option<Arm> {
                let (a, b) = neighbor(i, j, dir)?;
                let full = step(dir).0.abs() + step(dir).1.abs();
                let q = d.index(a, b);
                match kinds[q] {
                    NodeKind::Fixed { owner: Component::Hole(k), interior: true, value } => Some(Arm {
                        len: arm_fraction(i, j, dir, k) * full,
                        far: Lin::constant(value),
                        owner: Some(Component::Hole(k)),
                        neighbor: None,
                    }),
                    NodeKind::Fixed { owner, .. } => {
                        Some(Arm { len: full, far: value_lin(q), owner: Some(owner), neighbor: Some(q) })
                    }
                    NodeKind::Active(_) => Some(Arm { len: full, far: value_lin(q), owner: None, neighbor: Some(q) }),
                }
            };
            NodeArms { e: mk(0), w: mk(1), n: mk(2), s: mk(3) }
        };
        let tau_of = |i: usize, j: usize| -> Lin {
            let arms = arms_of(i, j);
            derivative(&value_lin(d.index(i, j)), arms.n.as_ref(), arms.s.as_ref())
        };
        let sigma_of = |i: usize, j: usize| -> Lin {
            let arms = arms_of(i, j);
            let neumann_row = (i == 0 && !d.inner().is_dirichlet()) || (i == ns && !d.outer().is_dirichlet());
            if neumann_row {
                return Lin::default();
            }
            derivative(&value_lin(d.index(i, j)), arms.e.as_ref(), arms.w.as_ref())
        };

        let mut faces = Vec::new();
        let mut face_start = Vec::with_capacity(active.len() + 1);
        let mut area = Vec::with_capacity(active.len());
        for &idx in &active {
            face_start.push(faces.len());
            let (i, j) = (idx / cols, idx % cols);
            let (s, t) = (d.s_at(i), d.theta_at(j));
            let f = value_lin(idx);
            let arms = arms_of(i, j);
            let len = |a: &Option<Arm>| a.as_ref().map_or(0.0, |a| a.len);
            let width_s = 0.5 * (len(&arms.e) + len(&arms.w));
            let width_t = 0.5 * (len(&arms.n) + len(&arms.s));
            area.push(width_s * width_t);
            let widths = |a: usize, b: usize| {
                let arms = arms_of(a, b);
                (0.5 * (len(&arms.e) + len(&arms.w)), 0.5 * (len(&arms.n) + len(&arms.s)))
            };
            let tau = tau_of(i, j);
            let sigma = sigma_of(i, j);
            for (dir, arm) in [(0u8, &arms.e), (1, &arms.w), (2, &arms.n), (3, &arms.s)] {
                let Some(arm) = arm else { continue };
                let mut normal = arm.far.scaled(1.0 / arm.len);
                normal.axpy(-1.0 / arm.len, &f);
                let radial = dir < 2;
                let own = if radial { &tau } else { &sigma };
                let tangential = match arm.neighbor {
                    Some(q) => {
                        let (a, b) = (q / cols, q % cols);
                        let other = if radial { tau_of(a, b) } else { sigma_of(a, b) };
                        let mut avg = own.scaled(0.5);
                        avg.axpy(0.5, &other);
                        avg
                    }
                    None => own.clone(),
                };
                let (ds, dt) = step(dir);
                let frac = arm.len / (ds.abs() + dt.abs());
                // faces shared by two control volumes use the mean width so
                // that fluxes telescope exactly
                let own_width = if radial { width_t } else { width_s };
                let transverse = match (arm.neighbor, kinds[arm.neighbor.unwrap_or(idx)]) {
                    (Some(q), NodeKind::Active(_)) => {
                        let (ws, wt) = widths(q / cols, q % cols);
                        0.5 * (own_width + if radial { wt } else { ws })
                    }
                    _ => own_width,
                };
                faces.push(Face {
                    normal: normal.compact(),
                    tangential: tangential.compact(),
                    mu: d.mu(s + 0.5 * frac * ds, t + 0.5 * frac * dt),
                    transverse,
                    owner: arm.owner,
                });
            }
        }
        face_start.push(faces.len());
        Self { kinds, active, faces, face_start, area }
    }

    pub fn unknowns(&self) -> usize {
        self.active.len()
    }

    /// Net outward flux of each control volume, given all node values.
    pub fn imbalance(&self, x: &[f64]) -> Vec<f64> {
        (0..self.unknowns())
            .map(|v| {
                self.faces[self.face_start[v]..self.face_start[v + 1]].iter().map(|f| f.flux(x) * f.transverse).sum()
            })
            .collect()
    }

    /// Sparse Jacobian of [`Discretization::imbalance`] with respect to the
    /// active node values.
    pub fn jacobian(&self, x: &[f64]) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::with_capacity(self.faces.len() * 8);
        let mut row: Vec<(usize, f64)> = Vec::new();
        for v in 0..self.unknowns() {
            row.clear();
            for f in &self.faces[self.face_start[v]..self.face_start[v + 1]] {
                let n = f.normal.eval(x);
                let t = f.tangential.eval(x);
                let w2 = 1.0 + f.mu * (n * n + t * t);
                let w = w2.sqrt();
                let w3 = w2 * w;
                let a = f.transverse / w;
                let b = -f.transverse * n * f.mu / w3;
                for &(k, c) in &f.normal.terms {
                    if let NodeKind::Active(col) = self.kinds[k] {
                        row.push((col, a * c + b * n * c));
                    }
                }
                for &(k, c) in &f.tangential.terms {
                    if let NodeKind::Active(col) = self.kinds[k] {
                        row.push((col, b * t * c));
                    }
                }
            }
            row.sort_by_key(|e| e.0);
            let mut last: Option<(usize, f64)> = None;
            for &(k, c) in row.iter() {
                match last {
                    Some((lk, lc)) if lk == k => last = Some((k, lc + c)),
                    Some((lk, lc)) => {
                        out.push((v, lk, lc));
                        last = Some((k, c));
                    }
                    None => last = Some((k, c)),
                }
            }
            if let Some((lk, lc)) = last {
                out.push((v, lk, lc));
            }
        }
        out
    }

    /// Copy of `values` with every fixed node set to its data.
    pub fn impose(&self, values: &[f64]) -> Vec<f64> {
        values
            .iter()
            .zip(&self.kinds)
            .map(|(&v, k)| match *k {
                NodeKind::Active(_) => v,
                NodeKind::Fixed { value, .. } => value,
            })
            .collect()
    }

    /// ∫⟨∇f, ν⟩/W over each Dirichlet component, ν exterior to Ω.
    pub fn component_fluxes(&self, x: &[f64]) -> BTreeMap<Component, f64> {
        let mut out = BTreeMap::new();
        for f in &self.faces {
            if let Some(c) = f.owner {
                *out.entry(c).or_insert(0.0) += f.flux(x) * f.transverse;
            }
        }
        out
    }
}
