use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vhj_core::domain::{build_disc_grid, build_interval_grid, Grid};
use vhj_core::exec::Execution;
use vhj_core::parabolic::{ParabolicProblem, StepControl, Stepper};
use vhj_core::source::SpaceTimeFn;

fn problem(grid: Arc<Grid>, u0: fn([f64; 2]) -> f64) -> ParabolicProblem {
    ParabolicProblem::with_initial(
        grid,
        3.0,
        4.0,
        SpaceTimeFn::steady(|x| (3.0 * x[0]).sin()),
        SpaceTimeFn::constant(0.0),
        u0,
        1.0,
    )
    .unwrap()
}

fn steps(c: &mut Criterion) {
    let cases: [(&str, Arc<Grid>, fn([f64; 2]) -> f64); 2] = [
        ("interval", Arc::new(build_interval_grid(0.0, 1.0, 1 << 15).unwrap()), |x| x[0] * (1.0 - x[0])),
        ("disc", Arc::new(build_disc_grid(1.0, 256).unwrap()), |x| 0.1 * (1.0 - x[0] * x[0] - x[1] * x[1])),
    ];
    let mut group = c.benchmark_group("ten_steps");
    for (name, grid, u0) in cases {
        let pr = problem(grid, u0);
        let control = StepControl::default();
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(BenchmarkId::new(name, format!("{exec:?}")), &exec, |b, &exec| {
                b.iter(|| {
                    let mut s = Stepper::new(&pr).unwrap();
                    let dt = s.cfl(&control);
                    for k in 1..=10 {
                        s.step_to(k as f64 * dt, exec).unwrap();
                    }
                    s.values()[0]
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, steps);
criterion_main!(benches);
