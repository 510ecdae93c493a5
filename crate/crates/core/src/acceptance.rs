//! The acceptance suite: eleven criteria, each a list of named checks with
//! fixed limits, plus a runtime budget where one applies.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{asymptotic_slope, beta_exponent, comparison_harness, holder_seminorm_of};
use crate::barriers::{
    auto_constants, eval_w1, scale_wr, verify_h2, verify_ubar, DomainNorms, Smoother,
};
use crate::domain::{build_disc_grid, build_interval_grid, Grid};
use crate::ergodic::{barrier_m2, ergodic_solve, shift_check, ErgodicOptions};
use crate::error::Result;
use crate::exec::Execution;
use crate::parabolic::{
    default_detachment_tol, detect_boundary_loss, solve_parabolic, solve_parabolic_observed, ParabolicProblem,
    StepControl,
};
use crate::source::SpaceTimeFn;
use crate::stationary::{default_tol, solve_state_constraint_with, StateConstraintOptions};
use crate::supconv::{
    check_initial_layer, check_maximizer_window, check_time_lipschitz, sup_convolve, sup_convolve_brute_force,
    TimeSeriesField,
};

pub const PAIRS: [(f64, f64); 4] = [(2.0, 3.0), (2.0, 4.0), (3.0, 4.0), (3.0, 5.0)];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, limit, passed: value <= limit }
    }
    pub fn above(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, limit, passed: value > limit }
    }
    pub fn below(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, limit, passed: value < limit }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub checks: Vec<Check>,
    pub elapsed_secs: f64,
    pub budget_secs: Option<f64>,
    pub passed: bool,
}

impl CriterionOutcome {
    fn finish(id: u8, title: &str, mut checks: Vec<Check>, start: Instant, budget: Option<f64>) -> Self {
        let elapsed_secs = start.elapsed().as_secs_f64();
        if let Some(b) = budget {
            checks.push(Check::below("runtime seconds", elapsed_secs, b));
        }
        let passed = checks.iter().all(|c| c.passed);
        CriterionOutcome { id, title: title.to_string(), checks, elapsed_secs, budget_secs: budget, passed }
    }

    fn failed(id: u8, title: &str, error: &crate::Error, start: Instant) -> Self {
        let check = Check { name: format!("error: {error}"), value: f64::NAN, limit: f64::NAN, passed: false };
        CriterionOutcome::finish(id, title, vec![check], start, None)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// One summary line.
    pub fn line(&self) -> String {
        let mut s = format!(
            "criterion {:>2}: {} | {} | {:.2}s",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed_secs
        );
        for c in self.failing() {
            s.push_str(&format!(" | failed '{}': {:.6e} vs limit {:.6e}", c.name, c.value, c.limit));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceOptions {
    pub seed: u64,
    pub execution: Execution,
}

impl Default for AcceptanceOptions {
    fn default() -> Self {
        AcceptanceOptions { seed: 20240601, execution: Execution::Parallel }
    }
}

fn wrap(id: u8, title: &str, budget: Option<f64>, body: impl FnOnce() -> Result<Vec<Check>>) -> CriterionOutcome {
    let start = Instant::now();
    match body() {
        Ok(checks) => CriterionOutcome::finish(id, title, checks, start, budget),
        Err(e) => CriterionOutcome::failed(id, title, &e, start),
    }
}

fn line_grid(n: usize) -> Result<Arc<Grid>> {
    Ok(Arc::new(build_interval_grid(0.0, 1.0, n)?))
}

fn sup(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m: f64, x| m.max(x.abs()))
}

/// A few random sine modes in x (and y), amplitude at most `amp`.
fn random_modes(rng: &mut ChaCha8Rng, amp: f64) -> impl Fn([f64; 2]) -> f64 + Send + Sync + Clone + 'static {
    let coef: Vec<(f64, f64, f64, f64)> = (1..=3)
        .map(|j| (rng.gen_range(-amp..amp) / j as f64, j as f64 * std::f64::consts::PI, rng.gen_range(0.0..6.3), rng.gen_range(0.0..6.3)))
        .collect();
    move |x: [f64; 2]| coef.iter().map(|&(a, k, px, py)| a * (k * x[0] + px).sin() * (0.5 * k * x[1] + py).cos()).sum()
}

/// Criterion 1: zero and constant data are reproduced exactly.
pub fn criterion_1(opts: &AcceptanceOptions) -> CriterionOutcome {
    wrap(1, "exact fixed points", Some(1.0), || {
        let control = StepControl { execution: opts.execution, snapshots: 5, ..Default::default() };
        let mut zero_err: f64 = 0.0;
        let mut const_err: f64 = 0.0;
        let grids = [line_grid(64)?, Arc::new(build_disc_grid(1.0, 16)?)];
        for (p, q) in PAIRS {
            for grid in &grids {
                let pr = ParabolicProblem::new(grid.clone(), p, q, 0.0.into(), 0.0.into(), vec![0.0; grid.len()], 0.01)?;
                let tr = solve_parabolic(&pr, &control)?;
                zero_err = zero_err.max(sup(tr.snapshots.iter().flatten().copied()));
                let c0 = 0.7;
                let pr = ParabolicProblem::new(grid.clone(), p, q, 0.0.into(), c0.into(), vec![c0; grid.len()], 0.01)?;
                let tr = solve_parabolic(&pr, &control)?;
                const_err = const_err.max(sup(tr.snapshots.iter().flatten().map(|v| v - c0)));
            }
        }
        Ok(vec![
            Check::at_most("zero data: max |u|", zero_err, 1e-12),
            Check::at_most("constant data: max |u - c0|", const_err, 1e-12),
        ])
    })
}

/// Criterion 2: boundary values never exceed g, and the first snapshot is u₀.
pub fn criterion_2(opts: &AcceptanceOptions) -> CriterionOutcome {
    wrap(2, "no loss for subsolutions and initial data", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 2);
        let control = StepControl { execution: opts.execution, snapshots: 10, ..Default::default() };
        let mut excess: f64 = f64::NEG_INFINITY;
        let mut initial_mismatch = 0usize;
        for k in 0..20 {
            let (p, q) = PAIRS[k % 4];
            let grid = if k % 5 == 4 { Arc::new(build_disc_grid(1.0, 16)?) } else { line_grid(64)? };
            let u0 = random_modes(&mut rng, 0.5);
            let lift: f64 = rng.gen_range(0.0..0.5);
            let rate: f64 = rng.gen_range(-20.0..60.0);
            let u0g = u0.clone();
            let g = SpaceTimeFn::new(move |x, t| u0g(x) + lift * (40.0 * t).sin() + rate * t);
            let f = SpaceTimeFn::steady(random_modes(&mut rng, 2.0));
            let pr = ParabolicProblem::with_initial(grid, p, q, f, g, u0, 0.02)?;
            let tr = solve_parabolic_observed(&pr, &control, |view| {
                for (&b, &gv) in pr.grid.boundary_nodes().iter().zip(view.boundary_data) {
                    excess = excess.max(view.values[b] - gv);
                }
            })?;
            if tr.snapshots[0] != pr.u0 || tr.times[0] != 0.0 {
                initial_mismatch += 1;
            }
        }
        Ok(vec![
            Check::at_most("max boundary u - g over all steps", excess, 0.0),
            Check::at_most("scenarios with snapshot 0 != u0", initial_mismatch as f64, 0.0),
        ])
    })
}

/// Random ordered pairs (u₀¹ ≤ u₀², g¹ ≤ g², f¹ ≤ f²) on [0, 1] with `n` cells.
pub fn random_ordered_pairs(
    seed: u64,
    p: f64,
    q: f64,
    count: usize,
    n: usize,
    horizon: f64,
) -> Result<Vec<(ParabolicProblem, ParabolicProblem)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = line_grid(n)?;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let phi = random_modes(&mut rng, 0.3);
        let bump = random_modes(&mut rng, 0.3);
        let d0: f64 = rng.gen_range(0.0..0.3);
        let gap = move |x: [f64; 2]| d0 + bump(x) * bump(x);
        let (a1, b1, w1): (f64, f64, f64) = (rng.gen_range(-5.0..5.0), rng.gen_range(-2.0..2.0), rng.gen_range(1.0..50.0));
        let (a2, b2): (f64, f64) = (rng.gen_range(0.0..0.3), rng.gen_range(0.0..5.0));
        let psi = random_modes(&mut rng, 1.0);
        let extra = random_modes(&mut rng, 0.5);
        let e0: f64 = rng.gen_range(0.0..0.5);
        let (phi1, phi2, gap2, gap3) = (phi.clone(), phi.clone(), gap.clone(), gap.clone());
        let g1 = move |x: [f64; 2], t: f64| phi1(x) + a1 * t + b1 * (w1 * t).sin().powi(2);
        let g1c = g1.clone();
        let psi2 = psi.clone();
        let lower = ParabolicProblem::with_initial(
            grid.clone(),
            p,
            q,
            SpaceTimeFn::steady(psi),
            SpaceTimeFn::new(g1),
            phi.clone(),
            horizon,
        )?;
        let upper = ParabolicProblem::with_initial(
            grid.clone(),
            p,
            q,
            SpaceTimeFn::steady(move |x| psi2(x) + e0 + extra(x).abs()),
            SpaceTimeFn::new(move |x, t| g1c(x, t) + gap2(x) + a2 * (30.0 * t).sin().powi(2) + b2 * t),
            move |x| phi2(x) + gap3(x),
            horizon,
        )?;
        out.push((lower, upper));
    }
    Ok(out)
}

/// Criterion 3: ordered data give ordered solutions.
pub fn criterion_3(opts: &AcceptanceOptions) -> CriterionOutcome {
    comparison_criteria(opts).0
}

/// Criterion 4: solutions stay inside t‖f‖ + ‖g‖ + ‖u₀‖.
pub fn criterion_4(opts: &AcceptanceOptions) -> CriterionOutcome {
    comparison_criteria(opts).1
}

/// Criteria 3 and 4 share their runs.
pub fn comparison_criteria(opts: &AcceptanceOptions) -> (CriterionOutcome, CriterionOutcome) {
    let start = Instant::now();
    let control = StepControl { execution: opts.execution, ..Default::default() };
    let mut violation: f64 = 0.0;
    let mut envelope: f64 = f64::NEG_INFINITY;
    let mut runs = 0usize;
    for (k, (p, q)) in PAIRS.into_iter().enumerate() {
        let report = random_ordered_pairs(opts.seed.wrapping_add(31 * k as u64), p, q, 50, 128, 0.02)
            .and_then(|pairs| comparison_harness(&pairs, &control));
        match report {
            Ok(r) => {
                violation = violation.max(r.max_violation);
                envelope = envelope.max(r.max_envelope_excess);
                runs += r.pairs.len();
            }
            Err(e) => {
                let a = CriterionOutcome::failed(3, "discrete comparison", &e, start);
                let b = CriterionOutcome::failed(4, "a priori envelope", &e, start);
                return (a, b);
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let c3 = vec![
        Check::at_most("max (u1 - u2)+ over 200 pairs", violation, 1e-10),
        Check::at_most("pairs missing", (200 - runs) as f64, 0.0),
        Check::below("runtime seconds", elapsed, 120.0),
    ];
    let c4 = vec![Check::at_most("max |u| - envelope", envelope, 1e-8)];
    let mk = |id, title: &str, checks: Vec<Check>, budget| {
        let passed = checks.iter().all(|c: &Check| c.passed);
        CriterionOutcome { id, title: title.into(), checks, elapsed_secs: elapsed, budget_secs: budget, passed }
    };
    (mk(3, "discrete comparison", c3, Some(120.0)), mk(4, "a priori envelope", c4, None))
}

/// Criterion 5: the β formula, and Hölder seminorms of u_λ bounded along the discounts.
pub fn criterion_5(opts: &AcceptanceOptions) -> CriterionOutcome {
    wrap(5, "beta formula and uniform Hölder bound", None, || {
        let mut checks = Vec::new();
        for ((p, q), exact) in PAIRS.into_iter().zip([0.5, 2.0 / 3.0, 0.5, 2.0 / 3.0]) {
            checks.push(Check::at_most(format!("beta({p},{q}) error"), (beta_exponent(p, q)? - exact).abs(), 0.0));
        }
        let grid = line_grid(512)?;
        let f: Vec<f64> = grid.coords().iter().map(|x| 0.5 * (2.0 * std::f64::consts::PI * x[0]).sin()).collect();
        for (p, q) in PAIRS {
            let beta = beta_exponent(p, q)?;
            let r = ergodic_solve(grid.clone(), p, q, &f, &StepControl::default(), &ErgodicOptions::default())?;
            let semis: Vec<f64> = r
                .profiles
                .iter()
                .map(|w| holder_seminorm_of(grid.coords(), w, beta, opts.execution).map(|h| h.seminorm))
                .collect::<Result<_>>()?;
            let worst = semis.windows(2).map(|w| (w[1] / w[0]).max(w[0] / w[1])).fold(1.0, f64::max);
            checks.push(Check::at_most(format!("({p},{q}) max successive seminorm ratio"), worst, 2.0));
        }
        Ok(checks)
    })
}

/// Criterion 6: the ergodic constant; f̃ ≡ 0, shifts and the discount band.
pub fn criterion_6(opts: &AcceptanceOptions) -> CriterionOutcome {
    let _ = opts;
    wrap(6, "ergodic constant", Some(300.0), || {
        let grid = line_grid(512)?;
        let (p, q) = (2.0, 3.0);
        let eo = ErgodicOptions::default();
        let control = StepControl::default();
        let zero = vec![0.0; grid.len()];
        let base = ergodic_solve(grid.clone(), p, q, &zero, &control, &eo)?;
        let mut checks = vec![Check::at_most("|c(f=0)|", base.c.abs(), 1e-2)];
        let mut violations = base.band_violations;
        for s in [1.0, -3.0] {
            let f = vec![s; grid.len()];
            let r = ergodic_solve(grid.clone(), p, q, &f, &control, &eo)?;
            violations += r.band_violations;
            let rep = shift_check(s, &base, &r)?;
            checks.push(Check::at_most(format!("shift {s}: |c(f+s) - c(f) + s|"), rep.c_error, 1e-2));
        }
        checks.push(Check::at_most("band violations", violations as f64, 0.0));
        checks.push(Check::at_most("sequence not converged", if base.converged { 0.0 } else { 1.0 }, 0.0));
        Ok(checks)
    })
}

/// Criterion 7: the large-time slope matches −c⁺.
pub fn criterion_7(opts: &AcceptanceOptions) -> CriterionOutcome {
    wrap(7, "large-time slope", Some(300.0), || {
        let grid = line_grid(64)?;
        let control = StepControl { execution: opts.execution, ..Default::default() };
        let mut checks = Vec::new();
        for f0 in [-1.0, 1.0, -6.0] {
            let pr = ParabolicProblem::new(grid.clone(), 2.0, 3.0, f0.into(), 0.0.into(), vec![0.0; grid.len()], 20.0)?;
            let slope = asymptotic_slope(&solve_parabolic(&pr, &control)?, 0.5)?.slope;
            let c = ergodic_solve(grid.clone(), 2.0, 3.0, &vec![f0; grid.len()], &StepControl::default(), &ErgodicOptions::default())?.c;
            let target = -c.max(0.0);
            if f0 == 1.0 {
                checks.push(Check::at_most("f=+1: |slope|", slope.abs(), 0.05));
            } else {
                checks.push(Check::at_most(
                    format!("f={f0}: |slope + c+| / max(c+, 1)"),
                    (slope - target).abs() / c.max(1.0),
                    0.05,
                ));
            }
        }
        Ok(checks)
    })
}

/// Criterion 8: barrier constants certified on interval and disc.
pub fn criterion_8(opts: &AcceptanceOptions) -> CriterionOutcome {
    wrap(8, "barrier certification", None, || {
        let mut checks = Vec::new();
        let grids = [line_grid(256)?, Arc::new(build_disc_grid(1.0, 64)?)];
        let mut worst_h2 = f64::INFINITY;
        let mut worst_ubar = f64::INFINITY;
        for (p, q) in PAIRS {
            for grid in &grids {
                for f0 in [0.0, -1.0] {
                    let f = vec![f0; grid.len()];
                    let norms = DomainNorms::from_grid(grid, p, q, &f)?;
                    let params = auto_constants(p, q, &norms, 1.0, 1.0, 4000)?;
                    worst_h2 = worst_h2.min(verify_h2(&params, 1.0, 4000)?.margin);
                    let u = verify_ubar(grid, p, q, 1.0, &f, &params)?;
                    worst_ubar = worst_ubar.min(u.collar_margin.min(u.core_margin));
                }
            }
        }
        checks.push(Check::above("min H2 margin", worst_h2, 0.0));
        checks.push(Check::above("min ubar margin", worst_ubar, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 8);
        let mut scaling: f64 = 0.0;
        let mut identity: f64 = 0.0;
        for (p, q) in PAIRS {
            let params = crate::barriers::BarrierParams::local(p, q, 3.0, 2.0, 1.0, 2)?;
            for _ in 0..200 {
                let r: f64 = rng.gen_range(0.01..1.0);
                let s: f64 = rng.gen_range(0.01..1.0);
                let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let x = [s * th.cos(), s * th.sin()];
                let lhs = scale_wr(r, &[r * x[0], r * x[1]], &params)?;
                let rhs = r.powf(params.beta) * eval_w1(&x, &params, &Smoother)?.value;
                scaling = scaling.max((lhs - rhs).abs() / rhs.abs());
            }
            let b = beta_exponent(p, q)?;
            identity = identity.max(((b - 1.0) * (q - p + 2.0) - (b - 2.0)).abs());
        }
        checks.push(Check::at_most("w_r scaling relative error", scaling, 4.0 * f64::EPSILON));
        checks.push(Check::at_most("(beta-1)(q-p+2) - (beta-2)", identity, 1e-15));
        Ok(checks)
    })
}

/// Criterion 9: sup-convolution properties.
pub fn criterion_9(opts: &AcceptanceOptions) -> CriterionOutcome {
    wrap(9, "sup-convolution", Some(30.0), || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 9);
        let mut oracle_mismatch = 0usize;
        let mut below = 0usize;
        let mut lipschitz_fail = 0usize;
        let mut window_fail = 0usize;
        let mut layer_fail = 0usize;
        let times: Vec<f64> = (0..200).map(|k| k as f64 * 0.01).collect();
        for draw in 0..100 {
            let values: Vec<Vec<f64>> = (0..times.len()).map(|_| (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            let series = TimeSeriesField::new(times.clone(), values)?;
            let alpha = if draw % 2 == 0 { 0.1 } else { 0.3 };
            let conv = sup_convolve(&series, alpha, opts.execution)?;
            let (bv, ba) = sup_convolve_brute_force(&series, alpha);
            if conv.field.values() != bv.as_slice() || conv.argmax != ba {
                oracle_mismatch += 1;
            }
            for (a, b) in conv.field.values().iter().flatten().zip(series.values().iter().flatten()) {
                if a < b {
                    below += 1;
                }
            }
            lipschitz_fail += usize::from(!check_time_lipschitz(&conv).pass);
            window_fail += usize::from(!check_maximizer_window(&conv).pass);
            layer_fail += usize::from(!check_initial_layer(&series, &conv).pass);
        }
        Ok(vec![
            Check::at_most("brute-force mismatches", oracle_mismatch as f64, 0.0),
            Check::at_most("points with u^a < u", below as f64, 0.0),
            Check::at_most("Lipschitz bound failures", lipschitz_fail as f64, 0.0),
            Check::at_most("maximizer window failures", window_fail as f64, 0.0),
            Check::at_most("initial layer failures", layer_fail as f64, 0.0),
        ])
    })
}

/// Horizon of the fast-rising boundary data run.
pub const LOSS_HORIZON: f64 = 0.2;

/// Final boundary gap g − u of the g = 50t run.
pub fn loss_of_bc_gap(n: usize, exec: Execution) -> Result<(f64, usize, f64)> {
    let grid = line_grid(n)?;
    let pr = ParabolicProblem::new(
        grid,
        2.0,
        3.0,
        0.0.into(),
        SpaceTimeFn::new(|_, t| 50.0 * t),
        vec![0.0; n + 1],
        LOSS_HORIZON,
    )?;
    let tr = solve_parabolic(&pr, &StepControl { execution: exec, snapshots: 10, ..Default::default() })?;
    let events = detect_boundary_loss(&tr, default_detachment_tol(50.0 * LOSS_HORIZON));
    let last = tr.times.last().copied().unwrap_or(0.0);
    let gap = events.iter().filter(|e| e.time == last).fold(0.0, |m: f64, e| m.max(e.gap));
    let excess = tr.diagnostics.iter().fold(f64::NEG_INFINITY, |m, d| m.max(d.max_boundary_excess));
    Ok((gap, events.len(), excess))
}

/// Criterion 10: loss of the boundary condition, stable under refinement.
pub fn criterion_10(opts: &AcceptanceOptions) -> CriterionOutcome {
    wrap(10, "loss of boundary condition", None, || {
        let (g1, e1, x1) = loss_of_bc_gap(512, opts.execution)?;
        let (g2, e2, x2) = loss_of_bc_gap(1024, opts.execution)?;
        Ok(vec![
            Check::above("detachment events n=512", e1 as f64, 0.0),
            Check::above("detachment events n=1024", e2 as f64, 0.0),
            Check::at_most("relative gap change 512 -> 1024", (g1 - g2).abs() / g2, 0.1),
            Check::at_most("max boundary u - g", x1.max(x2), 0.0),
        ])
    })
}

/// Criterion 11: large-R and one-sided state-constraint solutions agree.
pub fn criterion_11(opts: &AcceptanceOptions) -> CriterionOutcome {
    let _ = opts;
    wrap(11, "state-constraint equivalence", None, || {
        let grid = line_grid(256)?;
        let h = grid.spacing();
        let mut checks = Vec::new();
        for (p, q) in PAIRS {
            let beta = beta_exponent(p, q)?;
            for f0 in [0.0, -1.0] {
                let f = vec![f0; grid.len()];
                for lambda in [1.0, 0.25] {
                    let m2 = barrier_m2(&grid, p, q, &f, lambda)?;
                    let sc = solve_state_constraint_with(
                        grid.clone(),
                        p,
                        q,
                        lambda,
                        &f,
                        m2,
                        &StepControl::default(),
                        default_tol(&f),
                        &StateConstraintOptions::default(),
                    )?;
                    checks.push(Check::at_most(
                        format!("({p},{q}) f={f0} lambda={lambda}: discrepancy / 5h^beta"),
                        sc.discrepancy.unwrap_or(f64::INFINITY) / (5.0 * h.powf(beta)),
                        1.0,
                    ));
                }
            }
        }
        Ok(checks)
    })
}

pub fn run_all(opts: &AcceptanceOptions) -> Vec<CriterionOutcome> {
    let (c3, c4) = comparison_criteria(opts);
    vec![
        criterion_1(opts),
        criterion_2(opts),
        c3,
        c4,
        criterion_5(opts),
        criterion_6(opts),
        criterion_7(opts),
        criterion_8(opts),
        criterion_9(opts),
        criterion_10(opts),
        criterion_11(opts),
    ]
}
