use std::sync::Arc;

use vhj_core::domain::build_interval_grid;
use vhj_core::ergodic::{ergodic_solve, shift_check, ErgodicOptions};
use vhj_core::parabolic::StepControl;

/// Ergodic constant for constant f̃ on an interval of length `len`:
/// c = −k − f̃, with k from the explicit state-constraint profile whose
/// derivative blows up at both ends.
fn oracle_c(p: f64, q: f64, len: f64, f: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let base = 2.0 * (p - 1.0) * pi / (len * q * (pi * (p - 1.0) / q).sin());
    -base.powf(q / (q - p + 1.0)) - f
}

#[test]
fn constant_source_matches_profile_oracle() {
    let opts = ErgodicOptions::default();
    let coarse = Arc::new(build_interval_grid(0.0, 1.0, 256).unwrap());
    let grid = Arc::new(build_interval_grid(0.0, 1.0, 512).unwrap());
    for (p, q) in [(2.0, 3.0), (3.0, 4.0), (2.0, 4.0), (3.0, 5.0)] {
        for f0 in [0.0, -1.0] {
            let c = oracle_c(p, q, 1.0, f0);
            let k = (c + f0).abs();
            let r = ergodic_solve(grid.clone(), p, q, &vec![f0; grid.len()], &StepControl::default(), &opts).unwrap();
            assert!(r.converged, "({p},{q}) f={f0}: {:?}", r.c_sequence());
            assert_eq!(r.band_violations, 0);
            let err = (r.c - c).abs();
            assert!(err <= 0.05 * k, "({p},{q}) f={f0}: {} vs {c}", r.c);
            let rc = ergodic_solve(coarse.clone(), p, q, &vec![f0; coarse.len()], &StepControl::default(), &opts).unwrap();
            let err_coarse = (rc.c - c).abs();
            assert!(err <= 0.75 * err_coarse, "({p},{q}) f={f0}: {err} vs {err_coarse}");
        }
    }
}

#[test]
fn strongly_negative_source_has_positive_constant() {
    let grid = Arc::new(build_interval_grid(0.0, 1.0, 512).unwrap());
    let f = vec![-6.0; grid.len()];
    let r = ergodic_solve(grid, 2.0, 3.0, &f, &StepControl::default(), &ErgodicOptions::default()).unwrap();
    let c = oracle_c(2.0, 3.0, 1.0, -6.0);
    assert!(c > 2.2 && (r.c - c).abs() <= 0.05 * (c + 6.0));
}

#[test]
fn shift_rule() {
    let grid = Arc::new(build_interval_grid(0.0, 1.0, 512).unwrap());
    let opts = ErgodicOptions::default();
    let base: Vec<f64> = grid.coords().iter().map(|x| (4.0 * x[0]).sin()).collect();
    let r0 = ergodic_solve(grid.clone(), 2.0, 3.0, &base, &StepControl::default(), &opts).unwrap();
    for s in [1.0, -3.0] {
        let f: Vec<f64> = base.iter().map(|v| v + s).collect();
        let rs = ergodic_solve(grid.clone(), 2.0, 3.0, &f, &StepControl::default(), &opts).unwrap();
        let rep = shift_check(s, &r0, &rs).unwrap();
        assert!(rep.c_error <= 1e-2 && rep.profile_gap <= 1e-2, "s={s}: {rep:?}");
    }
}
