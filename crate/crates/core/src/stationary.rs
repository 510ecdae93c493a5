//! The discounted stationary problem −div(|Du|^{p−2}Du) + |Du|^q + λu = f̃
//! with generalized Dirichlet data or the state constraint.
//!
//! Solutions are carried as `offset + deviation` so that differences stay
//! accurate when λ is small and u is of order 1/λ.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::discrete_ops::{flux, flux_derivative, pow, residual_of, wall_inflow, Field, StencilSample};
use crate::domain::Grid;
use crate::error::{check_exponents, Error, Result};
use crate::exec::{self, Execution};
use crate::parabolic::StepControl;

/// Boundary treatment.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryCondition {
    /// Generalized Dirichlet data, one value per grid node (only boundary
    /// entries are read).
    Dirichlet(Vec<f64>),
    /// Boundary nodes obey the one-sided scheme with no datum.
    StateConstraint,
}

#[derive(Clone, Debug)]
pub struct StationaryProblem {
    pub grid: Arc<Grid>,
    pub p: f64,
    pub q: f64,
    pub lambda: f64,
    pub f: Vec<f64>,
    pub boundary: BoundaryCondition,
}

impl StationaryProblem {
    pub fn validate(&self) -> Result<()> {
        check_exponents(self.p, self.q)?;
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(Error::Parameter(format!("discount must be positive, got {}", self.lambda)));
        }
        if self.f.len() != self.grid.len() || self.f.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter("source must have one finite value per node".into()));
        }
        if let BoundaryCondition::Dirichlet(g) = &self.boundary {
            if g.len() != self.grid.len() || self.grid.boundary_nodes().iter().any(|&b| !g[b].is_finite()) {
                return Err(Error::Parameter("boundary data must have one finite value per node".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StationaryMethod {
    /// Implicit on intervals, explicit on the disc.
    #[default]
    Auto,
    /// Backward-Euler pseudo-time with semismooth Newton (1D only).
    Implicit,
    /// Forward-Euler pseudo-time with the parabolic step rule.
    Explicit,
}

/// Starting point `offset + deviation`.
#[derive(Clone, Debug, PartialEq)]
pub struct Initial {
    pub offset: f64,
    pub deviation: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StationaryOptions {
    pub method: StationaryMethod,
    /// Pseudo-time steps allowed.
    pub max_iterations: usize,
    pub initial: Option<Initial>,
}

impl Default for StationaryOptions {
    fn default() -> Self {
        StationaryOptions { method: StationaryMethod::Auto, max_iterations: 5_000_000, initial: None }
    }
}

#[derive(Clone, Debug)]
pub struct StationarySolution {
    pub field: Field,
    pub offset: f64,
    pub deviation: Vec<f64>,
    pub iterations: usize,
    /// Final steady residual in the sup norm.
    pub residual: f64,
    pub method: StationaryMethod,
}

/// Default stopping tolerance 1e−8·(1 + ‖f̃‖∞).
pub fn default_tol(f: &[f64]) -> f64 {
    1e-8 * (1.0 + f.iter().fold(0.0_f64, |m, v| m.max(v.abs())))
}

pub fn solve_stationary(problem: &StationaryProblem, control: &StepControl, tol: f64) -> Result<StationarySolution> {
    solve_stationary_with(problem, control, tol, &StationaryOptions::default())
}

pub fn solve_stationary_with(
    problem: &StationaryProblem,
    control: &StepControl,
    tol: f64,
    options: &StationaryOptions,
) -> Result<StationarySolution> {
    problem.validate()?;
    control.validate()?;
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    let n = problem.grid.len();
    let (offset, deviation) = match &options.initial {
        Some(init) if init.deviation.len() == n => (init.offset, init.deviation.clone()),
        Some(_) => return Err(Error::Parameter("initial guess has the wrong length".into())),
        None => (0.0, vec![0.0; n]),
    };
    let method = match options.method {
        StationaryMethod::Auto if problem.grid.dimension() == 1 => StationaryMethod::Implicit,
        StationaryMethod::Auto => StationaryMethod::Explicit,
        m => m,
    };
    let mut state = State::new(problem, offset, deviation);
    let (iterations, residual) = match method {
        StationaryMethod::Implicit => {
            if problem.grid.dimension() != 1 {
                return Err(Error::Parameter("the implicit stationary solver is one-dimensional".into()));
            }
            state.implicit(tol, options.max_iterations)?
        }
        _ => state.explicit(control, tol, options.max_iterations)?,
    };
    let values: Vec<f64> = state.w.iter().map(|w| state.m + w).collect();
    Ok(StationarySolution {
        field: Field::new(problem.grid.clone(), values)?,
        offset: state.m,
        deviation: state.w,
        iterations,
        residual,
        method,
    })
}

struct State<'a> {
    pr: &'a StationaryProblem,
    m: f64,
    w: Vec<f64>,
    wall: Vec<f64>,
    anchor: usize,
}

impl<'a> State<'a> {
    fn new(pr: &'a StationaryProblem, m: f64, w: Vec<f64>) -> Self {
        let grid = &pr.grid;
        let wall = (0..grid.len())
            .map(|i| if grid.is_boundary(i) { wall_inflow(grid, i, pr.p, pr.q) } else { 0.0 })
            .collect();
        State { pr, m, w, wall, anchor: grid.deepest_node() }
    }

    fn dirichlet(&self) -> Option<&[f64]> {
        match &self.pr.boundary {
            BoundaryCondition::Dirichlet(g) => Some(g),
            BoundaryCondition::StateConstraint => None,
        }
    }

    /// Moves the value at the anchor node into the offset.
    fn recenter(&mut self) {
        let shift = self.w[self.anchor];
        if shift.abs() > 1.0 {
            self.m += shift;
            for v in &mut self.w {
                *v -= shift;
            }
        }
    }

    /// λu − div + |Du|^q − f̃, including the wall inflow at boundary nodes.
    fn equation(&self, i: usize) -> f64 {
        let pr = self.pr;
        let s = StencilSample::at(&pr.grid, &self.w, i);
        residual_of(&s, pr.p, pr.q, pr.f[i]) - self.wall[i] + pr.lambda * (self.m + self.w[i])
    }

    fn steady_residual(&self, exec: Execution) -> f64 {
        let g = self.dirichlet();
        let grid = &self.pr.grid;
        exec::max_over(exec, grid.len(), 0.0, |i| {
            let e = self.equation(i);
            match g {
                Some(g) if grid.is_boundary(i) => e.max(self.m + self.w[i] - g[i]).abs(),
                _ => e.abs(),
            }
        })
    }

    fn explicit(&mut self, control: &StepControl, tol: f64, max_iterations: usize) -> Result<(usize, f64)> {
        let pr = self.pr;
        let grid = pr.grid.clone();
        let exec = control.execution;
        let h = grid.min_spacing();
        let dim = grid.dimension() as f64;
        let mut next = vec![0.0; grid.len()];
        let mut change = f64::INFINITY;
        for it in 1..=max_iterations {
            let gmax = exec::max_over(exec, grid.len(), 0.0, |i| StencilSample::at(&grid, &self.w, i).max_slope())
                .min(control.g_cap);
            let a = 2.0 * dim * (pr.p - 1.0) * pow(gmax, pr.p - 2.0) / (h * h);
            let b = pr.q * pow(gmax, pr.q - 1.0) / h;
            let mut dt = control.cfl / (a + b + pr.lambda + 1e-12);
            if let Some(mx) = control.dt_max {
                dt = dt.min(mx);
            }
            let dt = dt.max(control.dt_floor);
            let g = self.dirichlet();
            let this = &*self;
            exec::fill(exec, &mut next, |i| {
                let cand = this.w[i] - dt * this.equation(i);
                match g {
                    Some(g) if grid.is_boundary(i) => cand.min(g[i] - this.m),
                    _ => cand,
                }
            });
            change = exec::max_over(exec, grid.len(), 0.0, |i| (next[i] - self.w[i]).abs()) / dt;
            std::mem::swap(&mut self.w, &mut next);
            if self.w.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite { step: it, t: it as f64 * dt });
            }
            self.recenter();
            if change < tol {
                return Ok((it, self.steady_residual(exec)));
            }
        }
        Err(Error::NoConvergence { iterations: max_iterations, residual: change })
    }

    /// Equation values and their tridiagonal Jacobian (lower, diagonal, upper).
    fn line_system(&self, e: &mut [f64], lo: &mut [f64], di: &mut [f64], up: &mut [f64]) {
        let pr = self.pr;
        let grid = &pr.grid;
        let (p, q, w) = (pr.p, pr.q, &self.w);
        let n = w.len() - 1;
        for i in 0..=n {
            let nb = grid.neighbors(i)[0];
            let (mut l, mut d, mut u) = (0.0, pr.lambda, 0.0);
            let back = nb[0].map(|m| ((w[i] - w[m.index]) / m.dist, m.dist));
            let fwd = nb[1].map(|m| ((w[m.index] - w[i]) / m.dist, m.dist));
            let width = 0.5 * (back.map_or(0.0, |b| b.1) + fwd.map_or(0.0, |f| f.1));
            let mut div = 0.0;
            if let Some((s, hm)) = back {
                div -= flux(s, p);
                let c = flux_derivative(s, p) / (hm * width);
                l -= c;
                d += c;
            }
            if let Some((s, hp)) = fwd {
                div += flux(s, p);
                let c = flux_derivative(s, p) / (hp * width);
                u -= c;
                d += c;
            }
            div /= width;
            let a = back.map_or(0.0, |b| b.0.max(0.0));
            let b = fwd.map_or(0.0, |f| (-f.0).max(0.0));
            let ham = pow(a.max(b), q);
            if a > 0.0 && a >= b {
                let c = q * pow(a, q - 1.0) / back.map_or(1.0, |x| x.1);
                d += c;
                l -= c;
            } else if b > 0.0 {
                let c = q * pow(b, q - 1.0) / fwd.map_or(1.0, |x| x.1);
                d += c;
                u -= c;
            }
            e[i] = -div + ham - pr.f[i] - self.wall[i] + pr.lambda * (self.m + w[i]);
            lo[i] = l;
            di[i] = d;
            up[i] = u;
        }
    }

    fn implicit(&mut self, tol: f64, max_iterations: usize) -> Result<(usize, f64)> {
        let n = self.w.len();
        let h = self.pr.grid.spacing();
        let g = self.dirichlet().map(<[f64]>::to_vec);
        let boundary: Vec<bool> = self.pr.grid.boundary_flags().to_vec();
        let (mut e, mut lo, mut di, mut up, mut rhs) =
            (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
        let mut tau = h * h;
        let mut residual = self.steady_residual(Execution::Sequential);
        if residual < tol {
            return Ok((0, residual));
        }
        // steps since the residual last dropped by 1%
        let (mut best, mut stalled) = (residual, 0usize);
        for it in 1..=max_iterations {
            self.recenter();
            let old = self.w.clone();
            let mut newton_iterations = 0;
            let mut ok = false;
            for k in 0..40 {
                newton_iterations = k + 1;
                self.line_system(&mut e, &mut lo, &mut di, &mut up);
                for i in 0..n {
                    let a = (self.w[i] - old[i]) / tau + e[i];
                    di[i] += 1.0 / tau;
                    rhs[i] = -a;
                    if let (Some(g), true) = (&g, boundary[i]) {
                        let b = (self.m + self.w[i] - g[i]) / tau;
                        if b > a {
                            rhs[i] = -b;
                            lo[i] = 0.0;
                            up[i] = 0.0;
                            di[i] = 1.0 / tau;
                        }
                    }
                }
                if !thomas(&lo, &di, &up, &mut rhs) {
                    break;
                }
                let mut step: f64 = 0.0;
                let mut size: f64 = 0.0;
                for i in 0..n {
                    self.w[i] += rhs[i];
                    step = step.max(rhs[i].abs());
                    size = size.max(self.w[i].abs());
                }
                if !step.is_finite() || !size.is_finite() {
                    break;
                }
                if step <= 1e-13 * (1.0 + size) {
                    ok = true;
                    break;
                }
            }
            if !ok {
                stalled += 1;
                if stalled > 200 {
                    return Err(Error::NoConvergence { iterations: it, residual });
                }
                self.w = old;
                tau /= 4.0;
                if tau < 1e-30 {
                    return Err(Error::NoConvergence { iterations: it, residual });
                }
                continue;
            }
            residual = self.steady_residual(Execution::Sequential);
            if residual < tol {
                return Ok((it, residual));
            }
            if residual < 0.99 * best {
                best = residual;
                stalled = 0;
            } else {
                stalled += 1;
                if stalled > 200 {
                    return Err(Error::NoConvergence { iterations: it, residual });
                }
            }
            if newton_iterations <= 8 {
                tau = (tau * 4.0).min(1e20);
            }
        }
        Err(Error::NoConvergence { iterations: max_iterations, residual })
    }
}

/// Solves the tridiagonal system in place; false on a zero pivot.
fn thomas(lo: &[f64], di: &[f64], up: &[f64], rhs: &mut [f64]) -> bool {
    let n = di.len();
    let mut c = vec![0.0; n];
    let mut beta = di[0];
    if beta == 0.0 || !beta.is_finite() {
        return false;
    }
    rhs[0] /= beta;
    for i in 1..n {
        c[i - 1] = up[i - 1] / beta;
        beta = di[i] - lo[i] * c[i - 1];
        if beta == 0.0 || !beta.is_finite() {
            return false;
        }
        rhs[i] = (rhs[i] - lo[i] * rhs[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= c[i] * rhs[i + 1];
    }
    true
}

/// Outcome of a state-constraint solve.
#[derive(Clone, Debug)]
pub struct StateConstraintSolution {
    /// The large-R Dirichlet solution.
    pub solution: StationarySolution,
    pub r_value: f64,
    /// R − max over boundary nodes of u.
    pub boundary_margin: f64,
    /// The solution of the one-sided boundary scheme, when computed.
    pub one_sided: Option<StationarySolution>,
    /// sup |large-R − one-sided|.
    pub discrepancy: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateConstraintOptions {
    pub stationary: StationaryOptions,
    /// Solve the one-sided scheme too and report the discrepancy.
    pub cross_check: bool,
    /// Multiplier on M₂/λ; the datum is R = factor·M₂/λ.
    pub r_factor: f64,
}

impl Default for StateConstraintOptions {
    fn default() -> Self {
        StateConstraintOptions { stationary: StationaryOptions::default(), cross_check: true, r_factor: 2.0 }
    }
}

/// Solves with the inactive datum R = 2M₂/λ and checks it stayed inactive.
#[allow(clippy::too_many_arguments)]
pub fn solve_state_constraint(
    grid: Arc<Grid>,
    p: f64,
    q: f64,
    lambda: f64,
    f: &[f64],
    m2: f64,
    control: &StepControl,
    tol: f64,
) -> Result<StateConstraintSolution> {
    solve_state_constraint_with(grid, p, q, lambda, f, m2, control, tol, &StateConstraintOptions::default())
}

#[allow(clippy::too_many_arguments)]
pub fn solve_state_constraint_with(
    grid: Arc<Grid>,
    p: f64,
    q: f64,
    lambda: f64,
    f: &[f64],
    m2: f64,
    control: &StepControl,
    tol: f64,
    options: &StateConstraintOptions,
) -> Result<StateConstraintSolution> {
    if !(m2.is_finite() && m2 > 0.0) {
        return Err(Error::Parameter(format!("M2 must be positive, got {m2}")));
    }
    let r_value = options.r_factor * m2 / lambda;
    let problem = StationaryProblem {
        grid: grid.clone(),
        p,
        q,
        lambda,
        f: f.to_vec(),
        boundary: BoundaryCondition::Dirichlet(vec![r_value; grid.len()]),
    };
    let solution = solve_stationary_with(&problem, control, tol, &options.stationary)?;
    let h = grid.spacing();
    let mut top = f64::NEG_INFINITY;
    for &b in grid.boundary_nodes() {
        let v = solution.field.values()[b];
        if v >= r_value - h {
            return Err(Error::ConstraintActive { node: b, value: v, r: r_value, h });
        }
        top = top.max(v);
    }
    let (one_sided, discrepancy) = if options.cross_check {
        let mut opts = options.stationary.clone();
        opts.initial = Some(Initial { offset: solution.offset, deviation: solution.deviation.clone() });
        let free = StationaryProblem { boundary: BoundaryCondition::StateConstraint, ..problem };
        let other = solve_stationary_with(&free, control, tol, &opts)?;
        let gap = (0..grid.len())
            .map(|i| {
                (solution.offset - other.offset) + (solution.deviation[i] - other.deviation[i])
            })
            .fold(0.0, |m: f64, v| m.max(v.abs()));
        (Some(other), Some(gap))
    } else {
        (None, None)
    };
    Ok(StateConstraintSolution { solution, r_value, boundary_margin: r_value - top, one_sided, discrepancy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_disc_grid, build_interval_grid};

    fn line(n: usize) -> Arc<Grid> {
        Arc::new(build_interval_grid(0.0, 1.0, n).unwrap())
    }

    fn dirichlet(grid: &Arc<Grid>, p: f64, q: f64, lambda: f64, f: Vec<f64>, g: Vec<f64>) -> StationaryProblem {
        StationaryProblem { grid: grid.clone(), p, q, lambda, f, boundary: BoundaryCondition::Dirichlet(g) }
    }

    #[test]
    fn constants_are_solutions() {
        let g = line(32);
        let (lambda, c0) = (0.7, 1.3);
        let pr = dirichlet(&g, 2.0, 3.0, lambda, vec![lambda * c0; 33], vec![c0; 33]);
        for method in [StationaryMethod::Implicit, StationaryMethod::Explicit] {
            let opts = StationaryOptions { method, ..Default::default() };
            let s = solve_stationary_with(&pr, &StepControl::default(), 1e-10, &opts).unwrap();
            assert!(s.field.values().iter().all(|v| (v - c0).abs() < 1e-9), "{method:?}");
        }
        let pr = dirichlet(&g, 3.0, 4.0, 1.0, vec![0.0; 33], vec![0.0; 33]);
        let s = solve_stationary(&pr, &StepControl::default(), 1e-10).unwrap();
        assert!(s.field.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn implicit_and_explicit_agree() {
        let g = line(64);
        let f: Vec<f64> = g.coords().iter().map(|x| 2.0 * (6.0 * x[0]).cos()).collect();
        let gd: Vec<f64> = g.coords().iter().map(|x| 0.5 - x[0]).collect();
        let pr = dirichlet(&g, 3.0, 4.0, 1.0, f, gd);
        let a = solve_stationary_with(
            &pr,
            &StepControl::default(),
            1e-9,
            &StationaryOptions { method: StationaryMethod::Implicit, ..Default::default() },
        )
        .unwrap();
        let b = solve_stationary_with(
            &pr,
            &StepControl::default(),
            1e-9,
            &StationaryOptions { method: StationaryMethod::Explicit, ..Default::default() },
        )
        .unwrap();
        let d = a.field.values().iter().zip(b.field.values()).fold(0.0, |m: f64, (x, y)| m.max((x - y).abs()));
        assert!(d < 1e-7, "{d}");
    }

    #[test]
    fn initialization_independent() {
        let g = line(128);
        let f: Vec<f64> = g.coords().iter().map(|x| (9.0 * x[0]).sin() * 3.0).collect();
        let pr = dirichlet(&g, 2.0, 3.0, 1.0, f.clone(), vec![0.25; 129]);
        let tol = default_tol(&f);
        let a = solve_stationary(&pr, &StepControl::default(), tol).unwrap();
        let opts = StationaryOptions {
            initial: Some(Initial { offset: -5.0, deviation: g.coords().iter().map(|x| 3.0 * x[0]).collect() }),
            ..Default::default()
        };
        let b = solve_stationary_with(&pr, &StepControl::default(), tol, &opts).unwrap();
        let d = a.field.values().iter().zip(b.field.values()).fold(0.0, |m: f64, (x, y)| m.max((x - y).abs()));
        assert!(d <= 10.0 * tol, "{d} vs {tol}");
    }

    #[test]
    fn random_bounds() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = line(64);
        for _ in 0..10 {
            let lambda: f64 = rng.gen_range(0.2..3.0);
            let f: Vec<f64> = (0..65).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let gd: Vec<f64> = (0..65).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let fs = f.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
            let gs = [gd[0], gd[64]].iter().fold(0.0, |m: f64, v| m.max(v.abs()));
            let pr = dirichlet(&g, 2.0, 3.0, lambda, f, gd);
            let s = solve_stationary(&pr, &StepControl::default(), 1e-9).unwrap();
            let bound = fs / lambda + gs + 1e-8;
            assert!(s.field.values().iter().all(|v| v.abs() <= bound));
        }
    }

    #[test]
    fn state_constraint_inactive_and_consistent() {
        let g = line(128);
        let f = vec![0.0; 129];
        let c = StepControl::default();
        let s = solve_state_constraint(g.clone(), 2.0, 3.0, 1.0, &f, 10.0, &c, 1e-9).unwrap();
        assert!(s.boundary_margin > g.spacing());
        assert!(s.discrepancy.unwrap() <= 1e-8);
        let opts = StateConstraintOptions { r_factor: 4.0, ..Default::default() };
        let s2 = solve_state_constraint_with(g.clone(), 2.0, 3.0, 1.0, &f, 10.0, &c, 1e-9, &opts).unwrap();
        let d = s.solution.field.values().iter().zip(s2.solution.field.values()).fold(0.0, |m: f64, (x, y)| {
            m.max((x - y).abs())
        });
        assert!(d <= 1e-8, "{d}");
    }

    #[test]
    fn constraint_active_detected() {
        let g = line(64);
        // f̃ = 50 pushes u to 50/λ; R = 2·1/1 = 2 sits far below.
        let e = solve_state_constraint(g, 2.0, 3.0, 1.0, &[50.0; 65], 1.0, &StepControl::default(), 1e-9)
            .unwrap_err();
        assert!(matches!(e, Error::ConstraintActive { .. }));
    }

    #[test]
    fn shift_moves_solution_by_s_over_lambda() {
        let g = line(64);
        let f: Vec<f64> = g.coords().iter().map(|x| (5.0 * x[0]).cos()).collect();
        let fs: Vec<f64> = f.iter().map(|v| v + 0.75).collect();
        let c = StepControl::default();
        let lambda = 0.5;
        let a = solve_state_constraint(g.clone(), 2.0, 4.0, lambda, &f, 20.0, &c, 1e-11).unwrap();
        let b = solve_state_constraint(g.clone(), 2.0, 4.0, lambda, &fs, 20.0, &c, 1e-11).unwrap();
        for (x, y) in a.solution.field.values().iter().zip(b.solution.field.values()) {
            assert!((y - x - 0.75 / lambda).abs() <= 1e-8);
        }
    }

    #[test]
    fn disc_explicit_constant() {
        let g = Arc::new(build_disc_grid(1.0, 12).unwrap());
        let n = g.len();
        let pr = StationaryProblem {
            grid: g.clone(),
            p: 2.0,
            q: 3.0,
            lambda: 2.0,
            f: vec![1.0; n],
            boundary: BoundaryCondition::Dirichlet(vec![0.5; n]),
        };
        let s = solve_stationary(&pr, &StepControl::default(), 1e-9).unwrap();
        assert_eq!(s.method, StationaryMethod::Explicit);
        assert!(s.field.values().iter().all(|v| (v - 0.5).abs() < 1e-8));
    }

    #[test]
    fn thomas_solves() {
        let lo = [0.0, -1.0, -1.0];
        let di = [4.0, 4.0, 4.0];
        let up = [-1.0, -1.0, 0.0];
        let mut b = [3.0, 2.0, 3.0];
        assert!(thomas(&lo, &di, &up, &mut b));
        for v in b {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }
}
