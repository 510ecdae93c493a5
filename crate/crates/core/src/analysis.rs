//! Post-processing: Hölder exponent and seminorm, asymptotic slope, comparison runs.

use serde::{Deserialize, Serialize};

use crate::discrete_ops::Field;
use crate::error::{check_exponents, Error, Result};
use crate::exec::{self, Execution};
use crate::parabolic::{ParabolicProblem, StepControl, Stepper, Trajectory};

/// β = (q − p)/(q − p + 1).
pub fn beta_exponent(p: f64, q: f64) -> Result<f64> {
    check_exponents(p, q)?;
    Ok(beta_exponent_unchecked(p, q))
}

pub(crate) fn beta_exponent_unchecked(p: f64, q: f64) -> f64 {
    (q - p) / (q - p + 1.0)
}

/// max |u(x) − u(y)|/|x − y|^β over node pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderReport {
    pub beta: f64,
    pub seminorm: f64,
    /// Attaining pair, lowest indices first among ties; equal for constant fields.
    pub pair: (usize, usize),
    /// (node count, seminorm) per refinement level recorded so far.
    pub history: Vec<(usize, f64)>,
}

impl HolderReport {
    /// Appends a finer level.
    pub fn refine(&mut self, finer: &HolderReport) {
        self.history.extend_from_slice(&finer.history);
    }
}

pub fn holder_seminorm(field: &Field, beta: f64) -> Result<HolderReport> {
    holder_seminorm_of(field.grid().coords(), field.values(), beta, Execution::Parallel)
}

/// Exact O(n²) sweep over all pairs.
pub fn holder_seminorm_of(coords: &[[f64; 2]], values: &[f64], beta: f64, exec: Execution) -> Result<HolderReport> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Parameter(format!("Hölder exponent must lie in (0, 1], got {beta}")));
    }
    if coords.len() != values.len() || values.len() < 2 {
        return Err(Error::Parameter("need at least two nodes with one value each".into()));
    }
    let n = values.len();
    let rows: Vec<(f64, usize)> = exec::map(exec, n - 1, |i| {
        let mut best = (0.0, usize::MAX);
        for j in i + 1..n {
            let dist = (coords[i][0] - coords[j][0]).hypot(coords[i][1] - coords[j][1]);
            let r = (values[i] - values[j]).abs() / dist.powf(beta);
            if r > best.0 {
                best = (r, j);
            }
        }
        best
    });
    let mut seminorm = 0.0;
    let mut pair = (0, 0);
    for (i, &(r, j)) in rows.iter().enumerate() {
        if r > seminorm {
            seminorm = r;
            pair = (i, j);
        }
    }
    if seminorm == 0.0 {
        pair = (0, 1);
    }
    Ok(HolderReport { beta, seminorm, pair, history: vec![(n, seminorm)] })
}

/// Least-squares slope of the spatial mean over the final part of the horizon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeReport {
    pub slope: f64,
    /// Largest |slope of u(x,·) − slope| over nodes.
    pub max_deviation: f64,
    pub samples: usize,
    pub window: (f64, f64),
}

fn ls_slope(t: &[f64], y: &[f64]) -> f64 {
    let n = t.len() as f64;
    let tm = t.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let (mut num, mut den) = (0.0, 0.0);
    for (a, b) in t.iter().zip(y) {
        num += (a - tm) * (b - ym);
        den += (a - tm) * (a - tm);
    }
    num / den
}

pub fn asymptotic_slope(trajectory: &Trajectory, window_fraction: f64) -> Result<SlopeReport> {
    slope_of(&trajectory.times, &trajectory.snapshots, window_fraction)
}

pub fn slope_of(times: &[f64], snapshots: &[Vec<f64>], window_fraction: f64) -> Result<SlopeReport> {
    if !(window_fraction > 0.0 && window_fraction < 1.0) {
        return Err(Error::Parameter(format!("window fraction must lie in (0, 1), got {window_fraction}")));
    }
    let (t0, t1) = match (times.first(), times.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::InsufficientSamples { found: 0 }),
    };
    let start = t1 - window_fraction * (t1 - t0);
    let picked: Vec<usize> = (0..times.len()).filter(|&k| times[k] >= start).collect();
    if picked.len() < 3 {
        return Err(Error::InsufficientSamples { found: picked.len() });
    }
    let t: Vec<f64> = picked.iter().map(|&k| times[k]).collect();
    let means: Vec<f64> = picked
        .iter()
        .map(|&k| snapshots[k].iter().sum::<f64>() / snapshots[k].len() as f64)
        .collect();
    let slope = ls_slope(&t, &means);
    let nodes = snapshots[picked[0]].len();
    let mut max_deviation: f64 = 0.0;
    for i in 0..nodes {
        let y: Vec<f64> = picked.iter().map(|&k| snapshots[k][i]).collect();
        max_deviation = max_deviation.max((ls_slope(&t, &y) - slope).abs());
    }
    Ok(SlopeReport { slope, max_deviation, samples: picked.len(), window: (start, t1) })
}

/// Result of co-marching an ordered pair with common time steps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairOutcome {
    /// max over nodes and steps of (u¹ − u²)⁺.
    pub violation: f64,
    /// Range of u² − u¹ over nodes and steps.
    pub min_gap: f64,
    pub max_gap: f64,
    /// Largest |u| − (t·sup|f| + sup|g| + ‖u₀‖∞) over both runs, suprema taken
    /// over the nodes and steps seen so far.
    pub envelope_excess: f64,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub pairs: Vec<PairOutcome>,
    pub max_violation: f64,
    pub max_envelope_excess: f64,
}

struct Envelope {
    f_sup: f64,
    g_sup: f64,
    u0_sup: f64,
}

impl Envelope {
    fn new(pr: &ParabolicProblem) -> Self {
        Envelope { f_sup: 0.0, g_sup: 0.0, u0_sup: pr.u0.iter().fold(0.0, |m: f64, v| m.max(v.abs())) }
    }

    fn observe(&mut self, pr: &ParabolicProblem, t: f64, stepper: &Stepper) -> f64 {
        let coords = pr.grid.coords();
        self.f_sup = coords.iter().fold(self.f_sup, |m, &x| m.max(pr.f.eval(x, t).abs()));
        self.g_sup = stepper.boundary_data().iter().fold(self.g_sup, |m, v| m.max(v.abs()));
        let cap = t * self.f_sup + self.g_sup + self.u0_sup;
        stepper.values().iter().fold(f64::NEG_INFINITY, |m, v| m.max(v.abs() - cap))
    }
}

/// Co-marches one ordered pair.
pub fn compare_pair(lower: &ParabolicProblem, upper: &ParabolicProblem, control: &StepControl) -> Result<PairOutcome> {
    control.validate()?;
    if lower.grid.len() != upper.grid.len() || lower.horizon != upper.horizon {
        return Err(Error::Parameter("paired problems need the same grid and horizon".into()));
    }
    let mut a = Stepper::new(lower)?;
    let mut b = Stepper::new(upper)?;
    let (mut ea, mut eb) = (Envelope::new(lower), Envelope::new(upper));
    let mut out = PairOutcome {
        violation: 0.0,
        min_gap: f64::INFINITY,
        max_gap: f64::NEG_INFINITY,
        envelope_excess: f64::NEG_INFINITY,
        steps: 0,
    };
    let mut record = |a: &Stepper, b: &Stepper, out: &mut PairOutcome| {
        for (x, y) in a.values().iter().zip(b.values()) {
            let gap = y - x;
            out.violation = out.violation.max(-gap);
            out.min_gap = out.min_gap.min(gap);
            out.max_gap = out.max_gap.max(gap);
        }
        let t = a.time();
        out.envelope_excess = out.envelope_excess.max(ea.observe(lower, t, a)).max(eb.observe(upper, t, b));
    };
    record(&a, &b, &mut out);
    let horizon = lower.horizon;
    while a.time() < horizon {
        let dt = a.cfl(control).min(b.cfl(control));
        let t_next = if a.time() + dt >= horizon { horizon } else { a.time() + dt };
        a.step_to(t_next, control.execution)?;
        b.step_to(t_next, control.execution)?;
        out.steps += 1;
        record(&a, &b, &mut out);
    }
    Ok(out)
}

/// Runs every pair (in parallel) and collects the worst ordering violation.
pub fn comparison_harness(pairs: &[(ParabolicProblem, ParabolicProblem)], control: &StepControl) -> Result<ComparisonReport> {
    let results = exec::map(control.execution, pairs.len(), |k| compare_pair(&pairs[k].0, &pairs[k].1, control));
    let pairs: Vec<PairOutcome> = results.into_iter().collect::<Result<_>>()?;
    let max_violation = pairs.iter().fold(0.0, |m: f64, o| m.max(o.violation));
    let max_envelope_excess = pairs.iter().fold(f64::NEG_INFINITY, |m, o| m.max(o.envelope_excess));
    Ok(ComparisonReport { pairs, max_violation, max_envelope_excess })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::build_interval_grid;
    use crate::source::SpaceTimeFn;
    use std::sync::Arc;

    #[test]
    fn beta_values() {
        assert_eq!(beta_exponent(2.0, 3.0).unwrap(), 0.5);
        assert_eq!(beta_exponent(2.0, 4.0).unwrap(), 2.0 / 3.0);
        assert_eq!(beta_exponent(3.0, 5.0).unwrap(), 2.0 / 3.0);
        assert!(beta_exponent(3.0, 3.0).is_err());
        assert!(beta_exponent(1.5, 3.0).is_err());
    }

    #[test]
    fn seminorm_examples() {
        let g = Arc::new(build_interval_grid(0.0, 1.0, 50).unwrap());
        let lin = Field::from_fn(g.clone(), |x| x[0]).unwrap();
        let r = holder_seminorm(&lin, 1.0).unwrap();
        assert!((r.seminorm - 1.0).abs() < 1e-12);
        let sq = Field::from_fn(g.clone(), |x| x[0].sqrt()).unwrap();
        let r = holder_seminorm(&sq, 0.5).unwrap();
        assert!((r.seminorm - 1.0).abs() < 1e-12);
        assert_eq!(r.pair.0, 0);
        let c = Field::constant(g, 2.0).unwrap();
        let r = holder_seminorm(&c, 0.5).unwrap();
        assert_eq!(r.seminorm, 0.0);
        assert_ne!(r.pair.0, r.pair.1);
    }

    #[test]
    fn slope_of_linear_growth() {
        let times: Vec<f64> = (0..=10).map(|k| k as f64).collect();
        let snaps: Vec<Vec<f64>> = times.iter().map(|t| vec![-2.0 * t, -2.0 * t + 1.0]).collect();
        let r = slope_of(&times, &snaps, 0.5).unwrap();
        assert!((r.slope + 2.0).abs() < 1e-12 && r.max_deviation < 1e-12);
        assert!(matches!(slope_of(&times[..2], &snaps[..2], 0.5), Err(Error::InsufficientSamples { .. })));
    }

    #[test]
    fn identical_pair_has_no_gap() {
        let g = Arc::new(build_interval_grid(0.0, 1.0, 32).unwrap());
        let pr = ParabolicProblem::with_initial(
            g,
            2.0,
            3.0,
            SpaceTimeFn::steady(|x| (4.0 * x[0]).sin()),
            SpaceTimeFn::constant(1.0),
            |x| 1.0 - x[0] * (1.0 - x[0]),
            0.05,
        )
        .unwrap();
        let o = compare_pair(&pr, &pr, &StepControl::default()).unwrap();
        assert_eq!((o.violation, o.min_gap, o.max_gap), (0.0, 0.0, 0.0));
        assert!(o.envelope_excess <= 1e-8);
    }
}
