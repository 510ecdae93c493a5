//! Vanishing-discount approximation of the ergodic pair (c, u_∞):
//! c = lim −λ u_λ(x₀), u_∞ = lim (u_λ − u_λ(x₀)) over state-constraint solves.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::barriers::{ubar_constants, DomainNorms};
use crate::domain::Grid;
use crate::error::{Error, Result};
use crate::parabolic::StepControl;
use crate::stationary::{default_tol, solve_state_constraint_with, Initial, StateConstraintOptions};

/// {2⁻¹, …, 2⁻¹⁰}.
pub fn default_lambdas() -> Vec<f64> {
    (1..=10).map(|k| 0.5f64.powi(k)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErgodicOptions {
    pub lambdas: Vec<f64>,
    /// Reference node x₀; the deepest node when unset.
    pub reference: Option<usize>,
    /// Overrides the M₂ computed from the barrier conditions.
    pub m2: Option<f64>,
    /// Stationary tolerance; `default_tol(f)` when unset.
    pub tol: Option<f64>,
    pub state: StateConstraintOptions,
}

impl Default for ErgodicOptions {
    fn default() -> Self {
        ErgodicOptions {
            lambdas: default_lambdas(),
            reference: None,
            m2: None,
            tol: None,
            state: StateConstraintOptions { cross_check: false, ..Default::default() },
        }
    }
}

/// One step of the discount sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaEstimate {
    pub lambda: f64,
    /// c_k = −λ_k u_{λ_k}(x₀).
    pub c: f64,
    /// |c_k − c_{k−1}|, absent for the first λ.
    pub c_change: Option<f64>,
    /// ‖w_k − w_{k−1}‖∞, absent for the first λ.
    pub w_change: Option<f64>,
    /// R − max boundary u.
    pub boundary_margin: f64,
    /// max over nodes of |λ u_λ|.
    pub max_abs_lambda_u: f64,
    pub within_band: bool,
    pub iterations: usize,
    pub residual: f64,
    /// Large-R vs one-sided discrepancy, when cross-checked.
    pub discrepancy: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErgodicResult {
    pub reference: usize,
    pub m2: f64,
    /// max(‖f̃‖∞, M₂).
    pub band: f64,
    pub estimates: Vec<LambdaEstimate>,
    /// c_K at the smallest λ.
    pub c: f64,
    /// w_K, zero at x₀.
    pub profile: Vec<f64>,
    /// w_k for every λ_k.
    pub profiles: Vec<Vec<f64>>,
    pub converged: bool,
    pub band_violations: usize,
}

impl ErgodicResult {
    pub fn c_sequence(&self) -> Vec<(f64, f64)> {
        self.estimates.iter().map(|e| (e.lambda, e.c)).collect()
    }
}

/// M₂ of the supersolution ū for the largest discount used.
pub fn barrier_m2(grid: &Grid, p: f64, q: f64, f: &[f64], lambda: f64) -> Result<f64> {
    let norms = DomainNorms::from_grid(grid, p, q, f)?;
    Ok(ubar_constants(p, q, &norms, lambda)?.m2)
}

pub fn ergodic_solve(
    grid: Arc<Grid>,
    p: f64,
    q: f64,
    f: &[f64],
    control: &StepControl,
    options: &ErgodicOptions,
) -> Result<ErgodicResult> {
    let lambdas = &options.lambdas;
    if lambdas.is_empty() || lambdas.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return Err(Error::Parameter("discounts must be positive and finite".into()));
    }
    if lambdas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Parameter("discount sequence must be strictly decreasing".into()));
    }
    if f.len() != grid.len() {
        return Err(Error::Parameter("source must have one value per node".into()));
    }
    let x0 = options.reference.unwrap_or_else(|| grid.deepest_node());
    if x0 >= grid.len() {
        return Err(Error::Parameter(format!("reference node {x0} out of range")));
    }
    let m2 = match options.m2 {
        Some(m) => m,
        None => barrier_m2(&grid, p, q, f, lambdas[0])?,
    };
    let f_sup = f.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    let band = f_sup.max(m2);
    let tol = options.tol.unwrap_or_else(|| default_tol(f));

    let mut estimates: Vec<LambdaEstimate> = Vec::with_capacity(lambdas.len());
    let mut profiles: Vec<Vec<f64>> = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let mut opts = options.state.clone();
        if let (Some(prev), Some(w)) = (estimates.last(), profiles.last()) {
            opts.stationary.initial = Some(Initial { offset: -prev.c / lambda, deviation: w.clone() });
        }
        let sc = solve_state_constraint_with(grid.clone(), p, q, lambda, f, m2, control, tol, &opts)
            .map_err(|e| Error::AtLambda { lambda, source: Box::new(e) })?;
        let sol = &sc.solution;
        let anchor = sol.deviation[x0];
        let c = -lambda * (sol.offset + anchor);
        let w: Vec<f64> = sol.deviation.iter().map(|v| v - anchor).collect();
        let max_abs_lambda_u = sol.field.values().iter().fold(0.0, |m: f64, v| m.max((lambda * v).abs()));
        let (c_change, w_change) = match (estimates.last(), profiles.last()) {
            (Some(prev), Some(pw)) => {
                let dw = w.iter().zip(pw).fold(0.0, |m: f64, (a, b)| m.max((a - b).abs()));
                (Some((c - prev.c).abs()), Some(dw))
            }
            _ => (None, None),
        };
        estimates.push(LambdaEstimate {
            lambda,
            c,
            c_change,
            w_change,
            boundary_margin: sc.boundary_margin,
            max_abs_lambda_u,
            within_band: c.abs() <= band,
            iterations: sol.iterations,
            residual: sol.residual,
            discrepancy: sc.discrepancy,
        });
        profiles.push(w);
    }
    let last = estimates.last().expect("nonempty");
    let c = last.c;
    let converged = last.c_change.is_some_and(|d| d < 1e-2 * (1.0 + c.abs()));
    let band_violations = estimates.iter().filter(|e| !e.within_band).count();
    Ok(ErgodicResult {
        reference: x0,
        m2,
        band,
        c,
        profile: profiles.last().cloned().unwrap_or_default(),
        profiles,
        estimates,
        converged,
        band_violations,
    })
}

/// Deviation of a shifted run from the rule (c, u_∞) ↦ (c − s, u_∞).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftReport {
    /// |(c_s − c₀) + s|.
    pub c_error: f64,
    /// ‖u_∞,s − u_∞,0‖∞.
    pub profile_gap: f64,
}

pub fn shift_check(s: f64, base: &ErgodicResult, shifted: &ErgodicResult) -> Result<ShiftReport> {
    if base.profile.len() != shifted.profile.len() || base.reference != shifted.reference {
        return Err(Error::Parameter("shift check needs runs on the same grid and reference node".into()));
    }
    let profile_gap = base.profile.iter().zip(&shifted.profile).fold(0.0, |m: f64, (a, b)| m.max((a - b).abs()));
    Ok(ShiftReport { c_error: ((shifted.c - base.c) + s).abs(), profile_gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::build_interval_grid;

    fn line(n: usize) -> Arc<Grid> {
        Arc::new(build_interval_grid(0.0, 1.0, n).unwrap())
    }

    fn short() -> ErgodicOptions {
        ErgodicOptions { lambdas: (1..=6).map(|k| 0.5f64.powi(k)).collect(), ..Default::default() }
    }

    #[test]
    fn rejects_bad_sequences() {
        let g = line(16);
        let f = vec![0.0; 17];
        let c = StepControl::default();
        for l in [vec![], vec![0.5, 0.5], vec![0.25, 0.5], vec![0.5, -0.1]] {
            let o = ErgodicOptions { lambdas: l, ..Default::default() };
            assert!(ergodic_solve(g.clone(), 2.0, 3.0, &f, &c, &o).is_err());
        }
    }

    #[test]
    fn profile_normalized_and_band_respected() {
        let g = line(64);
        let f: Vec<f64> = g.coords().iter().map(|x| (3.0 * x[0]).sin()).collect();
        let r = ergodic_solve(g, 3.0, 4.0, &f, &StepControl::default(), &short()).unwrap();
        for w in &r.profiles {
            assert_eq!(w[r.reference], 0.0);
        }
        assert_eq!(r.band_violations, 0);
        assert!(r.estimates.iter().all(|e| e.max_abs_lambda_u <= r.band));
    }

    #[test]
    fn shift_zero_exact() {
        let g = line(32);
        let f = vec![0.0; 33];
        let r = ergodic_solve(g, 2.0, 3.0, &f, &StepControl::default(), &short()).unwrap();
        let s = shift_check(0.0, &r, &r).unwrap();
        assert_eq!(s.c_error, 0.0);
        assert_eq!(s.profile_gap, 0.0);
    }

    #[test]
    fn reference_node_changes_normalization_only() {
        let g = line(64);
        let f: Vec<f64> = g.coords().iter().map(|x| (5.0 * x[0]).cos()).collect();
        let opts = short();
        let a = ergodic_solve(g.clone(), 2.0, 3.0, &f, &StepControl::default(), &opts).unwrap();
        let b = ergodic_solve(
            g.clone(),
            2.0,
            3.0,
            &f,
            &StepControl::default(),
            &ErgodicOptions { reference: Some(20), ..opts.clone() },
        )
        .unwrap();
        let gap = a.profile[20];
        let dev = a.profile.iter().zip(&b.profile).fold(0.0, |m: f64, (x, y)| m.max((x - y - gap).abs()));
        assert!(dev <= 1e-6, "{dev}");
        // the two estimates differ exactly by λ_K times the profile gap
        let lambda = *opts.lambdas.last().unwrap();
        assert!((a.c - b.c - lambda * gap).abs() <= 1e-6, "{} {} {}", a.c, b.c, gap);
    }
}
