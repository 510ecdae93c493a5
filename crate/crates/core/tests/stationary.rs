use std::sync::Arc;

use vhj_core::analysis::{beta_exponent, holder_seminorm};
use vhj_core::domain::build_interval_grid;
use vhj_core::ergodic::{barrier_m2, default_lambdas};
use vhj_core::parabolic::StepControl;
use vhj_core::stationary::{
    default_tol, solve_state_constraint, solve_state_constraint_with, solve_stationary, BoundaryCondition,
    StateConstraintOptions, StationaryProblem,
};

#[test]
fn constant_shift_moves_solution_by_s_over_lambda() {
    let grid = Arc::new(build_interval_grid(0.0, 1.0, 128).unwrap());
    let f: Vec<f64> = grid.coords().iter().map(|x| (3.0 * x[0]).cos()).collect();
    let (p, q, lambda, s): (f64, f64, f64, f64) = (3.0, 4.0, 0.5, 0.75);
    let m2 = barrier_m2(&grid, p, q, &f, lambda).unwrap() + s.abs();
    let shifted: Vec<f64> = f.iter().map(|v| v + s).collect();
    let tol = 1e-9;
    let a = solve_state_constraint(grid.clone(), p, q, lambda, &f, m2, &StepControl::default(), tol).unwrap();
    let b = solve_state_constraint(grid, p, q, lambda, &shifted, m2, &StepControl::default(), tol).unwrap();
    let dev = a
        .solution
        .field
        .values()
        .iter()
        .zip(b.solution.field.values())
        .fold(0.0f64, |m, (x, y)| m.max((y - x - s / lambda).abs()));
    assert!(dev <= 1e-8, "{dev}");
}

#[test]
fn discounted_values_stay_in_band() {
    let grid = Arc::new(build_interval_grid(0.0, 1.0, 256).unwrap());
    let f = vec![-1.0; grid.len()];
    let (p, q) = (2.0, 3.0);
    let x0 = grid.deepest_node();
    for lambda in default_lambdas() {
        let m2 = barrier_m2(&grid, p, q, &f, lambda).unwrap();
        let band = m2.max(1.0);
        let sc = solve_state_constraint(grid.clone(), p, q, lambda, &f, m2, &StepControl::default(), default_tol(&f))
            .unwrap();
        let lu = lambda * sc.solution.field.values()[x0];
        assert!(lu.abs() <= band, "lambda={lambda}: {lu} vs {band}");
        assert!(sc.boundary_margin > 0.0);
    }
}

#[test]
fn doubling_r_leaves_solution_unchanged() {
    let grid = Arc::new(build_interval_grid(0.0, 1.0, 128).unwrap());
    let f: Vec<f64> = grid.coords().iter().map(|x| x[0] - 0.5).collect();
    let m2 = barrier_m2(&grid, 2.0, 4.0, &f, 1.0).unwrap();
    let tol = default_tol(&f);
    let run = |factor: f64| {
        let opts = StateConstraintOptions { r_factor: factor, cross_check: false, ..Default::default() };
        solve_state_constraint_with(grid.clone(), 2.0, 4.0, 1.0, &f, m2, &StepControl::default(), tol, &opts)
            .unwrap()
            .solution
            .field
            .into_values()
    };
    let (a, b) = (run(2.0), run(4.0));
    let dev = a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    assert!(dev <= 10.0 * tol, "{dev}");
}

#[test]
fn attained_data_respect_holder_modulus() {
    let grid = Arc::new(build_interval_grid(0.0, 1.0, 256).unwrap());
    let (p, q) = (2.0, 3.0);
    let beta = beta_exponent(p, q).unwrap();
    let gd: Vec<f64> = grid.coords().iter().map(|x| 0.3 * x[0]).collect();
    let pr = StationaryProblem {
        grid: grid.clone(),
        p,
        q,
        lambda: 1.0,
        f: vec![0.5; grid.len()],
        boundary: BoundaryCondition::Dirichlet(gd.clone()),
    };
    let tol = 1e-8;
    let s = solve_stationary(&pr, &StepControl::default(), tol).unwrap();
    let u = s.field.values();
    let last = grid.len() - 1;
    assert!((u[0] - gd[0]).abs() <= tol && (u[last] - gd[last]).abs() <= tol);
    let semi = holder_seminorm(&s.field, beta).unwrap().seminorm;
    assert!((gd[0] - gd[last]).abs() <= semi + tol);
}
