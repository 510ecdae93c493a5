use std::sync::Arc;

use proptest::prelude::*;
use vhj_core::analysis::{beta_exponent, holder_seminorm_of};
use vhj_core::discrete_ops::{spatial_residual, Field};
use vhj_core::domain::build_interval_grid;
use vhj_core::exec::Execution;
use vhj_core::parabolic::{cfl_dt, StepControl};
use vhj_core::supconv::{sup_convolve, TimeSeriesField};

const PAIRS: [(f64, f64); 4] = [(2.0, 3.0), (2.0, 4.0), (3.0, 4.0), (3.0, 5.0)];

fn values(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, n)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn explicit_update_is_monotone(
        u in values(33),
        bump in prop::collection::vec(0.0f64..0.5, 33),
        node in 0usize..33,
        pair in 0usize..4,
        f in -2.0f64..2.0,
    ) {
        let (p, q) = PAIRS[pair];
        let grid = Arc::new(build_interval_grid(0.0, 1.0, 32).unwrap());
        let mut v: Vec<f64> = u.iter().zip(&bump).map(|(a, b)| a + b).collect();
        v[node] = u[node];
        let fu = Field::new(grid.clone(), u.clone()).unwrap();
        let fv = Field::new(grid, v.clone()).unwrap();
        let control = StepControl::default();
        let dt = cfl_dt(&fu, p, q, &control).min(cfl_dt(&fv, p, q, &control));
        let a = u[node] - dt * spatial_residual(&fu, node, p, q, f);
        let b = v[node] - dt * spatial_residual(&fv, node, p, q, f);
        prop_assert!(a <= b + 1e-13 * (1.0 + a.abs()), "{a} > {b}");
    }

    #[test]
    fn seminorm_is_subadditive(u in values(40), v in values(40), beta in 0.1f64..1.0) {
        let grid = build_interval_grid(-1.0, 2.0, 39).unwrap();
        let w: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        let s = |x: &[f64]| holder_seminorm_of(grid.coords(), x, beta, Execution::Sequential).unwrap().seminorm;
        prop_assert!(s(&w) <= (s(&u) + s(&v)) * (1.0 + 1e-12));
    }

    #[test]
    fn beta_in_unit_interval_and_increasing(p in 2.0f64..6.0, gap in 0.01f64..10.0, more in 0.01f64..10.0) {
        let b1 = beta_exponent(p, p + gap).unwrap();
        let b2 = beta_exponent(p, p + gap + more).unwrap();
        prop_assert!(b1 > 0.0 && b1 < 1.0);
        prop_assert!(b2 > b1);
    }

    #[test]
    fn sup_convolution_dominates_and_iterates_upward(rows in prop::collection::vec(values(3), 120), alpha in 0.05f64..0.2) {
        let times: Vec<f64> = (0..rows.len()).map(|k| k as f64 * 0.02).collect();
        let s = TimeSeriesField::new(times, rows).unwrap();
        let once = sup_convolve(&s, alpha, Execution::Sequential).unwrap();
        for (a, b) in once.field.values().iter().flatten().zip(s.values().iter().flatten()) {
            prop_assert!(a >= b);
        }
        if let Ok(twice) = sup_convolve(&once.field, alpha, Execution::Sequential) {
            for (a, b) in twice.field.values().iter().flatten().zip(once.field.values().iter().flatten()) {
                prop_assert!(a >= b);
            }
        }
    }
}
