use std::sync::Arc;

use vhj_core::domain::{build_disc_grid, build_interval_grid};
use vhj_core::exec::Execution;
use vhj_core::parabolic::{solve_parabolic, ParabolicProblem, StepControl};
use vhj_core::source::SpaceTimeFn;
use vhj_core::supconv::{check_maximizer_window, check_time_lipschitz, sup_convolve, TimeSeriesField};

fn disc_problem(n: usize) -> ParabolicProblem {
    let grid = Arc::new(build_disc_grid(1.0, n).unwrap());
    ParabolicProblem::with_initial(
        grid,
        3.0,
        4.0,
        SpaceTimeFn::steady(|x| x[0] * x[1]),
        SpaceTimeFn::new(|x, t| 0.5 * x[0] + t),
        |x| 0.5 * x[0],
        0.002,
    )
    .unwrap()
}

#[test]
fn sequential_and_parallel_agree_bitwise() {
    let pr = disc_problem(96);
    assert!(pr.grid.len() > 4096);
    let run = |execution| solve_parabolic(&pr, &StepControl { execution, snapshots: 4, ..Default::default() }).unwrap();
    let (a, b) = (run(Execution::Sequential), run(Execution::Parallel));
    assert_eq!(a.times, b.times);
    assert_eq!(a.snapshots, b.snapshots);
    assert_eq!(a.total_steps(), b.total_steps());
}

#[test]
fn disc_solution_respects_boundary_data() {
    let pr = disc_problem(32);
    let tr = solve_parabolic(&pr, &StepControl::default()).unwrap();
    for (snap, g) in tr.snapshots.iter().zip(&tr.boundary_data) {
        for (&b, &gv) in tr.boundary_nodes.iter().zip(g) {
            assert!(snap[b] <= gv);
        }
    }
}

#[test]
fn sup_convolution_of_a_trajectory() {
    let grid = Arc::new(build_interval_grid(0.0, 1.0, 64).unwrap());
    let pr = ParabolicProblem::with_initial(
        grid,
        2.0,
        3.0,
        SpaceTimeFn::steady(|x| (6.0 * x[0]).sin()),
        0.0.into(),
        |x| 0.2 * (std::f64::consts::PI * x[0]).sin(),
        2.0,
    )
    .unwrap();
    let tr = solve_parabolic(&pr, &StepControl { snapshots: 400, ..Default::default() }).unwrap();
    let series = TimeSeriesField::from_trajectory(&tr).unwrap();
    let conv = sup_convolve(&series, 0.2, Execution::Parallel).unwrap();
    assert!(check_time_lipschitz(&conv).pass);
    assert!(check_maximizer_window(&conv).pass);
    let mut csv = Vec::new();
    tr.write_csv(&mut csv).unwrap();
    assert_eq!(TimeSeriesField::read_csv(csv.as_slice()).unwrap().values(), series.values());
}
