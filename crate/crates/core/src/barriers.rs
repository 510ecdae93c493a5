//! Explicit barriers: the local barrier w₁ and its rescalings w_r, and the
//! global supersolution ū = −(M₁/β) d^β + M₂/λ.

use serde::{Deserialize, Serialize};

use crate::analysis::beta_exponent;
use crate::domain::{DomainKind, Grid};
use crate::error::{Error, Result};

/// The concave cut-off h: h(s) = s on s ≤ 1/2, h ≡ 5/8 on s ≥ 3/4, and on
/// (1/2, 3/4) the quintic Hermite blend matching value, slope and curvature
/// at both ends (its t⁵ coefficient happens to vanish).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Smoother;

impl Smoother {
    pub const PLATEAU: f64 = 0.625;

    /// (h, h′, h″) at s.
    pub fn eval(&self, s: f64) -> (f64, f64, f64) {
        if s <= 0.5 {
            (s, 1.0, 0.0)
        } else if s >= 0.75 {
            (Self::PLATEAU, 0.0, 0.0)
        } else {
            let t = 4.0 * (s - 0.5);
            let t2 = t * t;
            let value = 0.5 + 0.25 * (t - t2 * t + 0.5 * t2 * t2);
            let slope = 1.0 - 3.0 * t2 + 2.0 * t2 * t;
            let curvature = -24.0 * t * (1.0 - t);
            (value, slope, curvature)
        }
    }

    pub fn h(&self, s: f64) -> f64 {
        self.eval(s).0
    }
    pub fn dh(&self, s: f64) -> f64 {
        self.eval(s).1
    }
    pub fn d2h(&self, s: f64) -> f64 {
        self.eval(s).2
    }
}

/// Constants of the barriers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarrierParams {
    pub p: f64,
    pub q: f64,
    pub beta: f64,
    pub c1: f64,
    pub c2: f64,
    pub m1: f64,
    pub m2: f64,
    pub delta: f64,
    /// Right-hand-side bound C the local barrier must dominate.
    pub target_c: f64,
    /// Space dimension N.
    pub dimension: usize,
}

impl BarrierParams {
    /// Local-barrier parameters only; M₁, M₂, δ are left at placeholder values.
    pub fn local(p: f64, q: f64, c1: f64, c2: f64, target_c: f64, dimension: usize) -> Result<Self> {
        let beta = beta_exponent(p, q)?;
        if !(dimension == 1 || dimension == 2) {
            return Err(Error::Parameter(format!("dimension must be 1 or 2, got {dimension}")));
        }
        Ok(BarrierParams { p, q, beta, c1, c2, m1: 1.0 + 1e-9, m2: 1.0, delta: 0.1, target_c, dimension })
    }
}

/// Value and derivatives of a radial barrier at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BarrierEval {
    pub value: f64,
    pub gradient: [f64; 2],
    pub hessian: [[f64; 2]; 2],
    /// φ′(|x|) and φ″(|x|) of the radial profile.
    pub radial_slope: f64,
    pub radial_curvature: f64,
}

impl BarrierEval {
    pub fn gradient_norm(&self) -> f64 {
        self.gradient[0].hypot(self.gradient[1])
    }

    /// Eigenvalues of the Hessian (the second one is 0 in 1D).
    pub fn hessian_eigenvalues(&self, dimension: usize) -> [f64; 2] {
        if dimension == 1 {
            return [self.hessian[0][0], 0.0];
        }
        let [[a, b], [_, c]] = self.hessian;
        let mean = 0.5 * (a + c);
        let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        [mean + rad, mean - rad]
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// w₁(x) = (C₁/β)|x|^β + (C₂/β)(d(0)^β − d(x)^β) with d(x) = h(1 − |x|).
pub fn eval_w1(x: &[f64], params: &BarrierParams, smoother: &Smoother) -> Result<BarrierEval> {
    let r = norm(x);
    if x.is_empty() || x.len() > 2 || r == 0.0 || !r.is_finite() || r > 1.0 + 1e-12 {
        return Err(Error::Parameter(format!("w1 needs 0 < |x| ≤ 1, got |x| = {r}")));
    }
    let (b, c1, c2) = (params.beta, params.c1, params.c2);
    let (d, dh, d2h) = smoother.eval(1.0 - r);
    let d0 = smoother.h(1.0);
    let value = c1 / b * r.powf(b) + c2 / b * (d0.powf(b) - d.powf(b));
    let slope = c1 * r.powf(b - 1.0) + if c2 == 0.0 { 0.0 } else { c2 * d.powf(b - 1.0) * dh };
    let curvature = c1 * (b - 1.0) * r.powf(b - 2.0)
        + if c2 == 0.0 { 0.0 } else { c2 * ((1.0 - b) * d.powf(b - 2.0) * dh * dh - d.powf(b - 1.0) * d2h) };
    let e = [x[0] / r, if x.len() == 2 { x[1] / r } else { 0.0 }];
    let tangential = slope / r;
    let mut hessian = [[0.0; 2]; 2];
    for i in 0..x.len() {
        for j in 0..x.len() {
            let id = if i == j { 1.0 } else { 0.0 };
            hessian[i][j] = curvature * e[i] * e[j] + tangential * (id - e[i] * e[j]);
        }
    }
    Ok(BarrierEval {
        value,
        gradient: [slope * e[0], slope * e[1]],
        hessian,
        radial_slope: slope,
        radial_curvature: curvature,
    })
}

/// −(p−1)|Dw|^{p−2}·(sum of positive Hessian eigenvalues) + |Dw|^q.
fn pucci_value(ev: &BarrierEval, p: f64, q: f64, dimension: usize) -> f64 {
    let g = ev.gradient_norm();
    let positive: f64 = ev.hessian_eigenvalues(dimension)[..dimension].iter().map(|l| l.max(0.0)).sum();
    -(p - 1.0) * g.powf(p - 2.0) * positive + g.powf(q)
}

/// Radii log-spaced towards 0 and towards 1.
fn sample_radii(count: usize) -> Vec<f64> {
    let half = (count / 2).max(2);
    let mut radii = Vec::with_capacity(2 * half);
    let (lo, hi) = ((1e-6f64).ln(), (0.5f64).ln());
    for k in 0..half {
        let s = lo + (hi - lo) * k as f64 / (half - 1) as f64;
        radii.push(s.exp());
    }
    for k in 0..half {
        let s = hi + (lo - hi) * k as f64 / (half - 1) as f64;
        radii.push(1.0 - s.exp());
    }
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    radii
}

/// Minimum H2 margin and where it occurs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    pub margin: f64,
    pub worst_point: [f64; 2],
}

/// Samples G₁ − C over B₁ ∖ {0}.
pub fn verify_h2(params: &BarrierParams, c: f64, sample_count: usize) -> Result<MarginReport> {
    if sample_count < 1000 {
        return Err(Error::Parameter(format!("H2 sampling needs at least 1000 points, got {sample_count}")));
    }
    let smoother = Smoother;
    let angles = if params.dimension == 2 { 4 } else { 1 };
    let mut worst = MarginReport { margin: f64::INFINITY, worst_point: [0.0; 2] };
    for r in sample_radii(sample_count / angles) {
        for a in 0..angles {
            let theta = std::f64::consts::PI * (0.1 + a as f64 / angles as f64);
            let x = if params.dimension == 2 { vec![r * theta.cos(), r * theta.sin()] } else { vec![r] };
            let ev = eval_w1(&x, params, &smoother)?;
            let m = pucci_value(&ev, params.p, params.q, params.dimension) - c;
            if m < worst.margin || (m.is_nan() && !worst.margin.is_nan()) {
                worst = MarginReport { margin: m, worst_point: [x[0], *x.get(1).unwrap_or(&0.0)] };
            }
        }
    }
    Ok(worst)
}

/// w_r(x) = r^β w₁(x/r).
pub fn scale_wr(r: f64, x: &[f64], params: &BarrierParams) -> Result<f64> {
    Ok(eval_wr(r, x, params)?.value)
}

/// Value and derivatives of w_r.
pub fn eval_wr(r: f64, x: &[f64], params: &BarrierParams) -> Result<BarrierEval> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Parameter(format!("scale r must lie in (0, 1], got {r}")));
    }
    if r == 1.0 {
        return eval_w1(x, params, &Smoother);
    }
    let y: Vec<f64> = x.iter().map(|v| v / r).collect();
    let ev = eval_w1(&y, params, &Smoother)?;
    let b = params.beta;
    let (s0, s1, s2) = (r.powf(b), r.powf(b - 1.0), r.powf(b - 2.0));
    let mut hessian = ev.hessian;
    for row in &mut hessian {
        for v in row.iter_mut() {
            *v *= s2;
        }
    }
    Ok(BarrierEval {
        value: s0 * ev.value,
        gradient: [s1 * ev.gradient[0], s1 * ev.gradient[1]],
        hessian,
        radial_slope: s1 * ev.radial_slope,
        radial_curvature: s2 * ev.radial_curvature,
    })
}

/// Sampled margin of w_r against the bound r^{(β−1)(p−1)−1}C − C.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledMargin {
    pub r: f64,
    pub margin: f64,
    pub bound: f64,
}

pub fn verify_wr(r: f64, params: &BarrierParams, c: f64, sample_count: usize) -> Result<ScaledMargin> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Parameter(format!("scale r must lie in (0, 1], got {r}")));
    }
    let (p, q, b) = (params.p, params.q, params.beta);
    let mut margin = f64::INFINITY;
    for s in sample_radii(sample_count) {
        let x = if params.dimension == 2 { vec![r * s * 0.6, r * s * 0.8] } else { vec![r * s] };
        let ev = eval_wr(r, &x, params)?;
        margin = margin.min(pucci_value(&ev, p, q, params.dimension) - c);
    }
    Ok(ScaledMargin { r, margin, bound: r.powf((b - 1.0) * (p - 1.0) - 1.0) * c - c })
}

/// Finds C₁, C₂ with a positive H2 margin by doubling: C₂ when the worst
/// point lies in the outer annulus |x| ≥ 1/2, C₁ otherwise.
pub fn local_barrier_constants(
    p: f64,
    q: f64,
    target_c: f64,
    dimension: usize,
    sample_count: usize,
) -> Result<(f64, f64, MarginReport)> {
    let mut params = BarrierParams::local(p, q, 1.0, 1.0, target_c, dimension)?;
    let mut report = verify_h2(&params, target_c, sample_count)?;
    for _ in 0..60 {
        if report.margin > 0.0 {
            return Ok((params.c1, params.c2, report));
        }
        if norm(&report.worst_point) >= 0.5 {
            params.c2 *= 2.0;
        } else {
            params.c1 *= 2.0;
        }
        report = verify_h2(&params, target_c, sample_count)?;
    }
    if report.margin > 0.0 {
        return Ok((params.c1, params.c2, report));
    }
    Err(Error::SearchExhausted { doublings: 60, margin: report.margin })
}

/// d̃ = ℓ·h(d/ℓ), ℓ = 4/3 of the inradius: equal to d within two thirds of the
/// inradius from the boundary and C² across the ridge of d.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothedDistance {
    pub ell: f64,
}

/// d̃ and its derivatives at one node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceJet {
    pub d: f64,
    pub grad_norm: f64,
    pub laplacian: f64,
    /// ⟨D²d̃ ê, ê⟩ with ê = Dd̃/|Dd̃|.
    pub directional: f64,
    /// Frobenius norm of D²d̃.
    pub hess_norm: f64,
}

impl SmoothedDistance {
    pub fn for_grid(grid: &Grid) -> Self {
        SmoothedDistance { ell: 4.0 / 3.0 * grid.inradius() }
    }

    /// Jet at distance `d` from the boundary. `curvature` is 1/|x| on the disc
    /// and 0 on the interval; `dimension` is N.
    pub fn jet(&self, d: f64, curvature: f64, dimension: usize) -> DistanceJet {
        let (hv, h1, h2) = Smoother.eval(d / self.ell);
        let radial = h2 / self.ell;
        let tangential = if dimension == 2 && h1 != 0.0 { -h1 * curvature } else { 0.0 };
        DistanceJet {
            d: self.ell * hv,
            grad_norm: h1,
            laplacian: radial + tangential,
            directional: radial,
            hess_norm: (radial * radial + tangential * tangential).sqrt(),
        }
    }

    /// Jet at grid node `i`.
    pub fn jet_at(&self, grid: &Grid, i: usize) -> DistanceJet {
        let (d, curvature) = node_geometry(grid, i);
        self.jet(d, curvature, grid.dimension())
    }
}

fn node_geometry(grid: &Grid, i: usize) -> (f64, f64) {
    let d = grid.distance(i);
    let curvature = match grid.kind() {
        DomainKind::Interval { .. } => 0.0,
        DomainKind::Disc { radius } => {
            let r = radius - d;
            if r > 0.0 {
                1.0 / r
            } else {
                0.0
            }
        }
    };
    (d, curvature)
}

/// Norms entering the conditions on M₁ and M₂, computed for d̃.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainNorms {
    pub dimension: usize,
    /// Zone threshold: collar nodes have d ≤ threshold = δ + h/2.
    pub threshold: f64,
    /// ‖D²d̃‖∞ on the collar.
    pub hess_collar: f64,
    /// ‖D²d̃‖∞ on the core.
    pub hess_core: f64,
    /// ‖d̃^{(β−1)(p−1)−1}‖∞ on the core.
    pub d_neg: f64,
    /// ‖d̃^{(β−1)(p−1)}‖∞ on the core.
    pub d_mid: f64,
    /// ‖d̃^β‖∞ on the core.
    pub d_beta: f64,
    pub f_sup: f64,
    /// Largest relative gap between the continuum and node-set norms.
    pub max_relative_gap: f64,
    /// Set when that gap exceeds 1%.
    pub gap_flagged: bool,
}

impl DomainNorms {
    /// Continuum norms over the zones (sampled on 10⁴ radial points), raised
    /// to the node-set values where those are larger.
    pub fn from_grid(grid: &Grid, p: f64, q: f64, f: &[f64]) -> Result<Self> {
        let beta = beta_exponent(p, q)?;
        let sd = SmoothedDistance::for_grid(grid);
        let threshold = grid.delta() + 0.5 * grid.spacing();
        let inradius = grid.inradius();
        if threshold >= inradius {
            return Err(Error::Domain(format!("collar {threshold} reaches the inradius {inradius}")));
        }
        let e_neg = (beta - 1.0) * (p - 1.0) - 1.0;
        let e_mid = (beta - 1.0) * (p - 1.0);
        let dim = grid.dimension();
        let curvature_at = |d: f64| match grid.kind() {
            DomainKind::Interval { .. } => 0.0,
            DomainKind::Disc { radius } => {
                if radius - d > 0.0 {
                    1.0 / (radius - d)
                } else {
                    0.0
                }
            }
        };
        // continuum
        let samples = 10_000;
        let mut cont = [0.0f64; 5];
        for k in 0..=samples {
            let d = threshold * k as f64 / samples as f64;
            if d > 0.0 {
                cont[0] = cont[0].max(sd.jet(d, curvature_at(d), dim).hess_norm);
            }
            let d = threshold + (inradius - threshold) * k as f64 / samples as f64;
            let j = sd.jet(d, curvature_at(d), dim);
            cont[1] = cont[1].max(j.hess_norm);
            cont[2] = cont[2].max(j.d.powf(e_neg));
            cont[3] = cont[3].max(j.d.powf(e_mid));
            cont[4] = cont[4].max(j.d.powf(beta));
        }
        // node sets
        let mut disc = [0.0f64; 5];
        for &i in grid.collar() {
            disc[0] = disc[0].max(sd.jet_at(grid, i).hess_norm);
        }
        for &i in grid.core() {
            let j = sd.jet_at(grid, i);
            disc[1] = disc[1].max(j.hess_norm);
            disc[2] = disc[2].max(j.d.powf(e_neg));
            disc[3] = disc[3].max(j.d.powf(e_mid));
            disc[4] = disc[4].max(j.d.powf(beta));
        }
        let mut gap: f64 = 0.0;
        let mut out = [0.0; 5];
        for k in 0..5 {
            let (a, b) = (cont[k], disc[k]);
            if a.max(b) > 0.0 {
                gap = gap.max((a - b).abs() / a.max(b));
            }
            out[k] = a.max(b);
        }
        Ok(DomainNorms {
            dimension: dim,
            threshold,
            hess_collar: out[0],
            hess_core: out[1],
            d_neg: out[2],
            d_mid: out[3],
            d_beta: out[4],
            f_sup: f.iter().fold(0.0, |m: f64, v| m.max(v.abs())),
            max_relative_gap: gap,
            gap_flagged: gap > 0.01,
        })
    }
}

/// M₁ and M₂ for ū.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UbarConstants {
    pub m1: f64,
    /// Smallest root of the M₁ condition before the M₁ > 1 clamp.
    pub m1_root: f64,
    pub m2: f64,
}

/// Right-hand side of the M₁ condition.
pub fn condi_rhs(p: f64, q: f64, delta: f64, hess: f64, dimension: usize, lambda: f64) -> Result<f64> {
    let b = beta_exponent(p, q)?;
    let n = dimension as f64;
    Ok((p - 1.0) * (1.0 - b) + (p - 2.0 + n.sqrt()) * delta * hess + lambda.max(1.0) * delta.powf(b * (2.0 - p) + p) / b)
}

/// Smallest M₁ (bisection to 1e−9) with M₁^{q−p+1} ≥ the condition's
/// right-hand side, clamped to exceed 1; then M₂ 1% above its lower bound.
pub fn ubar_constants(p: f64, q: f64, norms: &DomainNorms, lambda: f64) -> Result<UbarConstants> {
    let b = beta_exponent(p, q)?;
    if !(lambda > 0.0) {
        return Err(Error::Parameter(format!("discount must be positive, got {lambda}")));
    }
    let rhs = condi_rhs(p, q, norms.threshold, norms.hess_collar, norms.dimension, lambda)?;
    let k = q - p + 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64.max(rhs) + 1.0);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if mid.powf(k) >= rhs {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let root = hi;
    let m1 = root.max(1.0 + 1e-9);
    let n = norms.dimension as f64;
    let bound = m1.powf(p - 1.0)
        * ((p - 1.0) * (1.0 - b) * norms.d_neg + (p - 2.0 + n.sqrt()) * norms.d_mid * norms.hess_core)
        + lambda.max(1.0) * m1 / b * norms.d_beta
        + 3.0 * norms.f_sup;
    let m2 = (1.01 * bound).max(2.0 * norms.f_sup);
    Ok(UbarConstants { m1, m1_root: root, m2 })
}

/// All barrier constants: C₁, C₂ by the H2 search and M₁, M₂ for the grid.
pub fn auto_constants(
    p: f64,
    q: f64,
    norms: &DomainNorms,
    lambda: f64,
    target_c: f64,
    sample_count: usize,
) -> Result<BarrierParams> {
    let (c1, c2, _) = local_barrier_constants(p, q, target_c, norms.dimension.max(1), sample_count)?;
    let ub = ubar_constants(p, q, norms, lambda)?;
    Ok(BarrierParams {
        p,
        q,
        beta: beta_exponent(p, q)?,
        c1,
        c2,
        m1: ub.m1,
        m2: ub.m2,
        delta: norms.threshold,
        target_c,
        dimension: norms.dimension,
    })
}

/// Closed-form −div(|Dū|^{p−2}Dū) + |Dū|^q + λū − f̃ at a jet of d̃.
pub fn ubar_operator(jet: &DistanceJet, p: f64, q: f64, lambda: f64, f: f64, m1: f64, m2: f64) -> f64 {
    let b = (q - p) / (q - p + 1.0);
    let (d, g) = (jet.d, jet.grad_norm);
    let prefactor = if p == 2.0 { 1.0 } else { g.powf(p - 2.0) };
    let bracket = (p - 1.0) * (b - 1.0) * g * g
        + d * jet.laplacian
        + (p - 2.0) * d * jet.directional
        + m1.powf(q - p + 1.0) * g.powf(q - p + 2.0);
    let main = if prefactor == 0.0 { 0.0 } else { m1.powf(p - 1.0) * prefactor * d.powf(q * (b - 1.0)) * bracket };
    main - lambda * m1 / b * d.powf(b) + m2 - f
}

/// ū = −(M₁/β) d̃^β + M₂/λ at node `i`.
pub fn ubar_value(grid: &Grid, i: usize, params: &BarrierParams, lambda: f64) -> f64 {
    let jet = SmoothedDistance::for_grid(grid).jet_at(grid, i);
    -params.m1 / params.beta * jet.d.powf(params.beta) + params.m2 / lambda
}

/// Minimum supersolution margins of ū on the collar and on the core.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UbarReport {
    pub collar_margin: f64,
    pub core_margin: f64,
    pub collar_worst: usize,
    pub core_worst: usize,
}

pub fn verify_ubar(grid: &Grid, p: f64, q: f64, lambda: f64, f: &[f64], params: &BarrierParams) -> Result<UbarReport> {
    beta_exponent(p, q)?;
    if f.len() != grid.len() {
        return Err(Error::Parameter("source must have one value per node".into()));
    }
    let sd = SmoothedDistance::for_grid(grid);
    let zone = |nodes: &[usize]| {
        let mut best = (f64::INFINITY, usize::MAX);
        for &i in nodes {
            let m = ubar_operator(&sd.jet_at(grid, i), p, q, lambda, f[i], params.m1, params.m2);
            if m < best.0 {
                best = (m, i);
            }
        }
        best
    };
    let (collar_margin, collar_worst) = zone(grid.collar());
    let (core_margin, core_worst) = zone(grid.core());
    Ok(UbarReport { collar_margin, core_margin, collar_worst, core_worst })
}
