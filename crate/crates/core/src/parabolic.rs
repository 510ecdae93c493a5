//! Explicit time marching for u_t − div(|Du|^{p−2}Du) + |Du|^q = f with the
//! generalized Dirichlet condition.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::discrete_ops::{pow, residual_of, wall_inflow, AxisStencil, Field, StencilSample};
use crate::domain::Grid;
use crate::error::{check_exponents, Error, Result};
use crate::exec::{self, Execution};
use crate::source::SpaceTimeFn;

const EPS0: f64 = 1e-12;

/// Evolution problem on a grid.
#[derive(Clone, Debug)]
pub struct ParabolicProblem {
    pub grid: Arc<Grid>,
    pub p: f64,
    pub q: f64,
    pub f: SpaceTimeFn,
    pub g: SpaceTimeFn,
    pub u0: Vec<f64>,
    pub horizon: f64,
}

impl ParabolicProblem {
    pub fn new(
        grid: Arc<Grid>,
        p: f64,
        q: f64,
        f: SpaceTimeFn,
        g: SpaceTimeFn,
        u0: Vec<f64>,
        horizon: f64,
    ) -> Result<Self> {
        let problem = ParabolicProblem { grid, p, q, f, g, u0, horizon };
        problem.validate()?;
        Ok(problem)
    }

    /// Samples `u0` on the grid.
    pub fn with_initial(
        grid: Arc<Grid>,
        p: f64,
        q: f64,
        f: SpaceTimeFn,
        g: SpaceTimeFn,
        u0: impl Fn([f64; 2]) -> f64,
        horizon: f64,
    ) -> Result<Self> {
        let values = grid.coords().iter().map(|&x| u0(x)).collect();
        ParabolicProblem::new(grid, p, q, f, g, values, horizon)
    }

    pub fn validate(&self) -> Result<()> {
        check_exponents(self.p, self.q)?;
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return Err(Error::Parameter(format!("horizon must be positive, got {}", self.horizon)));
        }
        Field::new(self.grid.clone(), self.u0.clone())?;
        for &b in self.grid.boundary_nodes() {
            let gap = (self.u0[b] - self.g.eval(self.grid.coord(b), 0.0)).abs();
            if !(gap <= 1e-12) {
                return Err(Error::Compatibility { node: b, gap });
            }
        }
        Ok(())
    }
}

/// Step-size and output controls.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StepControl {
    /// CFL safety factor σ ∈ (0, 1]. Values up to 1/2 keep every step monotone.
    pub cfl: f64,
    pub g_cap: f64,
    pub dt_floor: f64,
    pub dt_max: Option<f64>,
    /// Number of equally spaced snapshots after the initial one.
    pub snapshots: usize,
    pub execution: Execution,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl {
            cfl: 0.45,
            g_cap: 1e6,
            dt_floor: 1e-14,
            dt_max: None,
            snapshots: 100,
            execution: Execution::default(),
        }
    }
}

impl StepControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::Parameter(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if !(self.g_cap.is_finite() && self.g_cap > 0.0) {
            return Err(Error::Parameter(format!("g_cap must be positive and finite, got {}", self.g_cap)));
        }
        if !(self.dt_floor.is_finite() && self.dt_floor > 0.0) {
            return Err(Error::Parameter(format!("dt_floor must be positive, got {}", self.dt_floor)));
        }
        if let Some(m) = self.dt_max {
            if !(m > 0.0) {
                return Err(Error::Parameter(format!("dt_max must be positive, got {m}")));
            }
        }
        if self.snapshots == 0 {
            return Err(Error::Parameter("at least one snapshot is required".into()));
        }
        Ok(())
    }
}

/// Diagnostics accumulated between two consecutive snapshots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalDiagnostics {
    pub t_end: f64,
    pub steps: usize,
    pub dt_min: f64,
    pub dt_max: f64,
    pub max_gradient: f64,
    /// max over steps and boundary nodes of u − g; never positive.
    pub max_boundary_excess: f64,
    /// Boundary nodes with g − u above the default tolerance at `t_end`.
    pub detached: Vec<usize>,
}

/// Snapshots of a run.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub grid: Arc<Grid>,
    pub times: Vec<f64>,
    pub snapshots: Vec<Vec<f64>>,
    pub boundary_nodes: Vec<usize>,
    /// g at `boundary_nodes` for each snapshot time.
    pub boundary_data: Vec<Vec<f64>>,
    /// `diagnostics[k]` covers (times[k], times[k+1]].
    pub diagnostics: Vec<IntervalDiagnostics>,
}

impl Trajectory {
    pub fn total_steps(&self) -> usize {
        self.diagnostics.iter().map(|d| d.steps).sum()
    }

    pub fn final_values(&self) -> &[f64] {
        self.snapshots.last().expect("trajectory always holds the initial snapshot")
    }

    /// Writes `t, x[, y], u` rows.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        let dim = self.grid.dimension();
        writeln!(w, "{}", if dim == 1 { "t,x,u" } else { "t,x,y,u" })?;
        for (t, snap) in self.times.iter().zip(&self.snapshots) {
            for (c, u) in self.grid.coords().iter().zip(snap) {
                if dim == 1 {
                    writeln!(w, "{t},{},{u}", c[0])?;
                } else {
                    writeln!(w, "{t},{},{},{u}", c[0], c[1])?;
                }
            }
        }
        Ok(())
    }
}

/// A point where the boundary value sits below the datum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Detachment {
    pub time: f64,
    pub node: usize,
    pub gap: f64,
}

/// Largest admissible step for the current field.
pub fn cfl_dt(field: &Field, p: f64, q: f64, control: &StepControl) -> f64 {
    let grid = field.grid();
    let g = exec::max_over(control.execution, grid.len(), 0.0, |i| {
        StencilSample::at(grid, field.values(), i).max_slope()
    });
    cfl_from_gradient(g, grid.min_spacing(), grid.dimension(), p, q, control)
}

fn cfl_from_gradient(gradient: f64, h: f64, dim: usize, p: f64, q: f64, control: &StepControl) -> f64 {
    let g = gradient.min(control.g_cap);
    let diffusion = h * h / (2.0 * dim as f64 * (p - 1.0) * pow(g, p - 2.0) + EPS0);
    let transport = h / (q * pow(g, q - 1.0) + EPS0);
    let mut dt = control.cfl * diffusion.min(transport);
    if let Some(m) = control.dt_max {
        dt = dt.min(m);
    }
    dt.max(control.dt_floor)
}

/// New boundary value: the PDE candidate, never above the datum.
#[inline]
pub fn boundary_update(candidate_pde_value: f64, g_value: f64) -> f64 {
    candidate_pde_value.min(g_value)
}

/// State seen by an observer after each step.
#[derive(Debug)]
pub struct StepView<'a> {
    pub step: usize,
    pub t: f64,
    pub dt: f64,
    pub values: &'a [f64],
    /// g at the boundary nodes at time `t`, in `Grid::boundary_nodes` order.
    pub boundary_data: &'a [f64],
}

/// Marches one problem forward; the building block of all parabolic runs.
pub struct Stepper<'a> {
    problem: &'a ParabolicProblem,
    u: Vec<f64>,
    next: Vec<f64>,
    t: f64,
    steps: usize,
    f_now: Vec<f64>,
    wall: Vec<f64>,
    g_now: Vec<f64>,
    // 1D face widths, used by the line kernel.
    faces: Option<Vec<f64>>,
}

impl<'a> Stepper<'a> {
    pub fn new(problem: &'a ParabolicProblem) -> Result<Self> {
        problem.validate()?;
        let grid = &problem.grid;
        let wall = (0..grid.len())
            .map(|i| if grid.is_boundary(i) { wall_inflow(grid, i, problem.p, problem.q) } else { 0.0 })
            .collect();
        let faces = (grid.dimension() == 1).then(|| {
            (0..grid.len() - 1).map(|i| grid.neighbors(i)[0][1].expect("interval node has a right neighbour").dist).collect()
        });
        let g_now = grid.boundary_nodes().iter().map(|&b| problem.g.eval(grid.coord(b), 0.0)).collect();
        Ok(Stepper {
            problem,
            u: problem.u0.clone(),
            next: vec![0.0; grid.len()],
            t: 0.0,
            steps: 0,
            f_now: problem.f.sample(grid.coords(), 0.0),
            wall,
            g_now,
            faces,
        })
    }

    pub fn time(&self) -> f64 {
        self.t
    }
    pub fn values(&self) -> &[f64] {
        &self.u
    }
    pub fn steps(&self) -> usize {
        self.steps
    }
    /// g at the boundary nodes at the current time.
    pub fn boundary_data(&self) -> &[f64] {
        &self.g_now
    }

    /// Largest one-sided slope over all nodes.
    pub fn max_gradient(&self, exec: Execution) -> f64 {
        match &self.faces {
            Some(h) => {
                let u = &self.u;
                exec::max_over(exec, h.len(), 0.0, |k| ((u[k + 1] - u[k]) / h[k]).abs())
            }
            None => {
                let grid = &self.problem.grid;
                exec::max_over(exec, grid.len(), 0.0, |i| StencilSample::at(grid, &self.u, i).max_slope())
            }
        }
    }

    pub fn cfl(&self, control: &StepControl) -> f64 {
        let grid = &self.problem.grid;
        let g = self.max_gradient(control.execution);
        cfl_from_gradient(g, grid.min_spacing(), grid.dimension(), self.problem.p, self.problem.q, control)
    }

    /// Advances to `t_next`; returns the largest u − g over boundary nodes.
    pub fn step_to(&mut self, t_next: f64, exec: Execution) -> Result<f64> {
        let dt = t_next - self.t;
        let pr = self.problem;
        let (p, q) = (pr.p, pr.q);
        let grid = &pr.grid;
        if pr.f.is_time_dependent() && self.steps > 0 {
            for (v, &x) in self.f_now.iter_mut().zip(grid.coords()) {
                *v = pr.f.eval(x, self.t);
            }
        }
        let u = &self.u;
        let f = &self.f_now;
        match &self.faces {
            Some(h) => {
                let last = u.len() - 1;
                exec::fill(exec, &mut self.next, |i| {
                    let mut st = AxisStencil::default();
                    if i > 0 {
                        st.backward = Some((u[i] - u[i - 1]) / h[i - 1]);
                        st.h_minus = h[i - 1];
                    }
                    if i < last {
                        st.forward = Some((u[i + 1] - u[i]) / h[i]);
                        st.h_plus = h[i];
                    }
                    let s = StencilSample { dim: 1, axes: [st, AxisStencil::default()], cross: 0.0 };
                    u[i] - dt * residual_of(&s, p, q, f[i])
                });
            }
            None => {
                exec::fill(exec, &mut self.next, |i| {
                    let s = StencilSample::at(grid, u, i);
                    u[i] - dt * residual_of(&s, p, q, f[i])
                });
            }
        }
        let mut excess = f64::NEG_INFINITY;
        for (k, &b) in grid.boundary_nodes().iter().enumerate() {
            let g_value = pr.g.eval(grid.coord(b), t_next);
            let candidate = self.next[b] + dt * self.wall[b];
            self.next[b] = boundary_update(candidate, g_value);
            self.g_now[k] = g_value;
            excess = excess.max(self.next[b] - g_value);
        }
        if let Some(i) = self.next.iter().position(|v| !v.is_finite()) {
            let _ = i;
            return Err(Error::NonFinite { step: self.steps + 1, t: t_next });
        }
        std::mem::swap(&mut self.u, &mut self.next);
        self.t = t_next;
        self.steps += 1;
        Ok(excess)
    }
}

/// Default detachment tolerance 1e−6·(1 + ‖g‖∞).
pub fn default_detachment_tol(g_sup: f64) -> f64 {
    1e-6 * (1.0 + g_sup)
}

pub fn solve_parabolic(problem: &ParabolicProblem, control: &StepControl) -> Result<Trajectory> {
    solve_parabolic_observed(problem, control, |_| {})
}

/// Like [`solve_parabolic`], calling `observer` on the initial state and after
/// every step.
pub fn solve_parabolic_observed(
    problem: &ParabolicProblem,
    control: &StepControl,
    mut observer: impl FnMut(&StepView<'_>),
) -> Result<Trajectory> {
    control.validate()?;
    if problem.horizon < control.dt_floor {
        return Err(Error::HorizonTooShort { horizon: problem.horizon, floor: control.dt_floor });
    }
    let mut stepper = Stepper::new(problem)?;
    let grid = problem.grid.clone();
    let mut traj = Trajectory {
        grid: grid.clone(),
        times: vec![0.0],
        snapshots: vec![problem.u0.clone()],
        boundary_nodes: grid.boundary_nodes().to_vec(),
        boundary_data: vec![stepper.boundary_data().to_vec()],
        diagnostics: Vec::new(),
    };
    observer(&StepView { step: 0, t: 0.0, dt: 0.0, values: stepper.values(), boundary_data: stepper.boundary_data() });
    let count = control.snapshots;
    for k in 1..=count {
        let target = if k == count { problem.horizon } else { problem.horizon * k as f64 / count as f64 };
        let mut diag = IntervalDiagnostics {
            t_end: target,
            steps: 0,
            dt_min: f64::INFINITY,
            dt_max: 0.0,
            max_gradient: 0.0,
            max_boundary_excess: f64::NEG_INFINITY,
            detached: Vec::new(),
        };
        while stepper.time() < target {
            let gradient = stepper.max_gradient(control.execution);
            let dt = cfl_from_gradient(
                gradient,
                grid.min_spacing(),
                grid.dimension(),
                problem.p,
                problem.q,
                control,
            );
            let t_next = if stepper.time() + dt >= target { target } else { stepper.time() + dt };
            let dt_used = t_next - stepper.time();
            let excess = stepper.step_to(t_next, control.execution)?;
            diag.steps += 1;
            diag.dt_min = diag.dt_min.min(dt_used);
            diag.dt_max = diag.dt_max.max(dt_used);
            diag.max_gradient = diag.max_gradient.max(gradient);
            diag.max_boundary_excess = diag.max_boundary_excess.max(excess);
            observer(&StepView {
                step: stepper.steps(),
                t: t_next,
                dt: dt_used,
                values: stepper.values(),
                boundary_data: stepper.boundary_data(),
            });
        }
        let g = stepper.boundary_data();
        let tol = default_detachment_tol(g.iter().fold(0.0, |m, v| m.max(v.abs())));
        diag.detached = grid
            .boundary_nodes()
            .iter()
            .zip(g)
            .filter(|(&b, &gv)| gv - stepper.values()[b] > tol)
            .map(|(&b, _)| b)
            .collect();
        traj.times.push(target);
        traj.snapshots.push(stepper.values().to_vec());
        traj.boundary_data.push(g.to_vec());
        traj.diagnostics.push(diag);
    }
    Ok(traj)
}

/// All snapshot times and boundary nodes where g − u exceeds `tol`, by time.
pub fn detect_boundary_loss(trajectory: &Trajectory, tol: f64) -> Vec<Detachment> {
    let mut out = Vec::new();
    for (k, (&time, snap)) in trajectory.times.iter().zip(&trajectory.snapshots).enumerate() {
        for (&node, &g) in trajectory.boundary_nodes.iter().zip(&trajectory.boundary_data[k]) {
            let gap = g - snap[node];
            if gap > tol {
                out.push(Detachment { time, node, gap });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete_ops::spatial_residual;
    use crate::domain::build_interval_grid;

    fn grid(n: usize) -> Arc<Grid> {
        Arc::new(build_interval_grid(0.0, 1.0, n).unwrap())
    }

    #[test]
    fn cfl_examples() {
        let g = Arc::new(build_interval_grid(0.0, 1.0, 100).unwrap());
        let f = Field::constant(g.clone(), 2.0).unwrap();
        let c = StepControl { cfl: 0.5, ..Default::default() };
        let dt = cfl_dt(&f, 2.0, 3.0, &c);
        assert!((dt - 2.5e-5).abs() < 1e-15, "{dt}");
        let c = StepControl { cfl: 1.0, g_cap: 10.0, ..Default::default() };
        let dt = cfl_from_gradient(50.0, 0.01, 1, 2.0, 3.0, &c);
        assert!((dt - 0.01 / 300.0).abs() < 1e-15);
        let mut prev = f64::INFINITY;
        for cap in [1.0, 2.0, 4.0, 8.0, 16.0, 1e3] {
            let c = StepControl { g_cap: cap, ..Default::default() };
            let dt = cfl_from_gradient(1e4, 0.01, 1, 3.0, 4.0, &c);
            assert!(dt <= prev);
            prev = dt;
        }
    }

    #[test]
    fn boundary_update_examples() {
        assert_eq!(boundary_update(3.0, 5.0), 3.0);
        assert_eq!(boundary_update(5.0, 3.0), 3.0);
        assert_eq!(boundary_update(4.0, 4.0), 4.0);
    }

    #[test]
    fn line_kernel_matches_generic_residual() {
        let g = grid(37);
        let u: Vec<f64> = g.coords().iter().map(|x| (3.0 * x[0]).sin() + x[0] * x[0]).collect();
        let u0b = u.clone();
        let pr = ParabolicProblem::new(
            g.clone(),
            3.0,
            4.5,
            SpaceTimeFn::steady(|x| x[0].cos()),
            SpaceTimeFn::steady(move |x| if x[0] < 0.5 { u0b[0] } else { u0b[37] } + 10.0),
            u.clone(),
            1.0,
        );
        // u0 is not compatible with g (+10), so build without validation
        assert!(pr.is_err());
        let pr = ParabolicProblem {
            grid: g.clone(),
            p: 3.0,
            q: 4.5,
            f: SpaceTimeFn::steady(|x| x[0].cos()),
            g: SpaceTimeFn::constant(100.0),
            u0: u.clone(),
            horizon: 1.0,
        };
        let mut st = Stepper {
            problem: &pr,
            u: u.clone(),
            next: vec![0.0; 38],
            t: 0.0,
            steps: 0,
            f_now: pr.f.sample(g.coords(), 0.0),
            wall: vec![0.0; 38],
            g_now: vec![0.0; 2],
            faces: (0..37).map(|i| g.neighbors(i)[0][1].unwrap().dist).collect::<Vec<_>>().into(),
        };
        let dt = 1e-7;
        st.step_to(dt, Execution::Sequential).unwrap();
        let field = Field::new(g.clone(), u.clone()).unwrap();
        for i in 1..37 {
            let r = spatial_residual(&field, i, 3.0, 4.5, g.coord(i)[0].cos());
            assert_eq!(st.values()[i], u[i] - dt * r);
        }
    }

    #[test]
    fn zero_and_constant_fixed_points() {
        for (p, q) in [(2.0, 3.0), (3.0, 5.0)] {
            let g = grid(32);
            let pr = ParabolicProblem::new(g.clone(), p, q, 0.0.into(), 0.0.into(), vec![0.0; 33], 1.0).unwrap();
            let tr = solve_parabolic(&pr, &StepControl { snapshots: 5, ..Default::default() }).unwrap();
            assert!(tr.snapshots.iter().all(|s| s.iter().all(|&v| v == 0.0)));
            let pr = ParabolicProblem::new(g.clone(), p, q, 0.0.into(), 0.7.into(), vec![0.7; 33], 0.1).unwrap();
            let tr = solve_parabolic(&pr, &StepControl { snapshots: 5, ..Default::default() }).unwrap();
            assert!(tr.snapshots.iter().all(|s| s.iter().all(|&v| v == 0.7)));
            assert!(detect_boundary_loss(&tr, 1e-9).is_empty());
        }
    }

    #[test]
    fn sine_decays() {
        let g = grid(128);
        let pr = ParabolicProblem::with_initial(
            g,
            2.0,
            3.0,
            0.0.into(),
            0.0.into(),
            |x| (std::f64::consts::PI * x[0]).sin(),
            2.0,
        )
        .unwrap();
        let tr = solve_parabolic(&pr, &StepControl { snapshots: 20, ..Default::default() }).unwrap();
        let sups: Vec<f64> = tr.snapshots.iter().map(|s| s.iter().fold(0.0, |m: f64, v| m.max(*v))).collect();
        assert!(sups.windows(2).all(|w| w[1] <= w[0]));
        assert!(*sups.last().unwrap() <= 1e-2);
        assert_eq!(tr.snapshots[0], pr.u0);
    }

    #[test]
    fn translation_equivariance() {
        let g = grid(48);
        let base = |x: [f64; 2]| (std::f64::consts::PI * x[0]).sin() * 0.5;
        let a = ParabolicProblem::with_initial(g.clone(), 2.0, 3.0, SpaceTimeFn::steady(|x| x[0]), 0.0.into(), base, 0.05)
            .unwrap();
        let b = ParabolicProblem::with_initial(
            g.clone(),
            2.0,
            3.0,
            SpaceTimeFn::steady(|x| x[0]),
            2.0.into(),
            move |x| base(x) + 2.0,
            0.05,
        )
        .unwrap();
        let c = StepControl { snapshots: 4, dt_max: Some(1e-4), ..Default::default() };
        let ta = solve_parabolic(&a, &c).unwrap();
        let tb = solve_parabolic(&b, &c).unwrap();
        for (sa, sb) in ta.snapshots.iter().zip(&tb.snapshots) {
            for (x, y) in sa.iter().zip(sb) {
                assert!((y - x - 2.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn horizon_too_short() {
        let g = grid(8);
        let pr = ParabolicProblem::new(g, 2.0, 3.0, 0.0.into(), 0.0.into(), vec![0.0; 9], 1e-16).unwrap();
        assert!(matches!(solve_parabolic(&pr, &StepControl::default()), Err(Error::HorizonTooShort { .. })));
    }

    #[test]
    fn compatibility_enforced() {
        let g = grid(8);
        let e = ParabolicProblem::new(g, 2.0, 3.0, 0.0.into(), 1.0.into(), vec![0.0; 9], 1.0).unwrap_err();
        assert!(matches!(e, Error::Compatibility { node: 0, .. }));
    }

    #[test]
    fn fast_rising_data_detaches() {
        let mut gaps = Vec::new();
        for n in [128usize, 256] {
            let g = grid(n);
            let pr = ParabolicProblem::new(
                g,
                2.0,
                3.0,
                0.0.into(),
                SpaceTimeFn::new(|_, t| 50.0 * t),
                vec![0.0; n + 1],
                1.0,
            )
            .unwrap();
            let tr = solve_parabolic(&pr, &StepControl { snapshots: 10, ..Default::default() }).unwrap();
            let events = detect_boundary_loss(&tr, 1e-6 * 51.0);
            assert!(!events.is_empty());
            assert!(detect_boundary_loss(&tr, 1e3).is_empty());
            assert!(tr.diagnostics.iter().all(|d| d.max_boundary_excess <= 0.0));
            gaps.push(events.last().unwrap().gap);
        }
        assert!((gaps[0] - gaps[1]).abs() <= 0.1 * gaps[1], "{gaps:?}");
    }
}
