//! Sup-convolution in time, u^α(x,t) = max_s { u(x,s) − |t−s|²/α² }, over
//! the stored time mesh, with the checks of its Lipschitz and window bounds.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::parabolic::Trajectory;

/// Nodal values on a time mesh.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeriesField {
    times: Vec<f64>,
    values: Vec<Vec<f64>>,
    coords: Vec<[f64; 2]>,
    dimension: usize,
    sup_norm: f64,
}

impl TimeSeriesField {
    pub fn new(times: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        let nodes = values.first().map_or(0, Vec::len);
        let coords = (0..nodes).map(|i| [i as f64, 0.0]).collect();
        Self::with_coords(times, values, coords, 1)
    }

    pub fn with_coords(
        times: Vec<f64>,
        values: Vec<Vec<f64>>,
        coords: Vec<[f64; 2]>,
        dimension: usize,
    ) -> Result<Self> {
        if times.is_empty() || times.len() != values.len() {
            return Err(Error::Parameter("need one value row per time, and at least one time".into()));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Parameter("time mesh must be finite and strictly increasing".into()));
        }
        let nodes = coords.len();
        if nodes == 0 || values.iter().any(|row| row.len() != nodes) {
            return Err(Error::Parameter("every time row must hold one value per node".into()));
        }
        let mut series = TimeSeriesField { times, values, coords, dimension, sup_norm: 0.0 };
        series.refresh()?;
        Ok(series)
    }

    pub fn from_trajectory(traj: &Trajectory) -> Result<Self> {
        Self::with_coords(
            traj.times.clone(),
            traj.snapshots.clone(),
            traj.grid.coords().to_vec(),
            traj.grid.dimension(),
        )
    }

    fn refresh(&mut self) -> Result<()> {
        let mut sup: f64 = 0.0;
        for v in self.values.iter().flatten() {
            if !v.is_finite() {
                return Err(Error::Parameter("series values must be finite".into()));
            }
            sup = sup.max(v.abs());
        }
        self.sup_norm = sup;
        Ok(())
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }
    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }
    pub fn coords(&self) -> &[[f64; 2]] {
        &self.coords
    }
    pub fn node_count(&self) -> usize {
        self.coords.len()
    }
    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    /// K = √(2‖u‖∞).
    pub fn k(&self) -> f64 {
        (2.0 * self.sup_norm).sqrt()
    }

    /// Multiplies every value by `factor`.
    pub fn scale(&mut self, factor: f64) -> Result<()> {
        for v in self.values.iter_mut().flatten() {
            *v *= factor;
        }
        self.refresh()
    }

    pub fn max_time_step(&self) -> f64 {
        self.times.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// Reads `t, x[, y], u` rows grouped by time, as written by trajectories.
    pub fn read_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let header = lines.next().ok_or_else(|| Error::Io("empty CSV".into()))??;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        let dimension = match cols.as_slice() {
            ["t", "x", "u"] => 1,
            ["t", "x", "y", "u"] => 2,
            _ => return Err(Error::Io(format!("unexpected CSV header '{header}'"))),
        };
        let mut times: Vec<f64> = Vec::new();
        let mut values: Vec<Vec<f64>> = Vec::new();
        let mut coords: Vec<[f64; 2]> = Vec::new();
        for (k, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let nums: std::result::Result<Vec<f64>, _> = line.split(',').map(|s| s.trim().parse::<f64>()).collect();
            let nums = nums.map_err(|e| Error::Io(format!("line {}: {e}", k + 2)))?;
            if nums.len() != dimension + 2 {
                return Err(Error::Io(format!("line {}: expected {} columns", k + 2, dimension + 2)));
            }
            let t = nums[0];
            if times.last() != Some(&t) {
                times.push(t);
                values.push(Vec::new());
            }
            let row = values.last_mut().expect("row pushed above");
            if times.len() == 1 {
                coords.push([nums[1], if dimension == 2 { nums[2] } else { 0.0 }]);
            }
            row.push(nums[dimension + 1]);
        }
        Self::with_coords(times, values, coords, dimension)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{}", if self.dimension == 1 { "t,x,u" } else { "t,x,y,u" })?;
        for (t, row) in self.times.iter().zip(&self.values) {
            for (c, u) in self.coords.iter().zip(row) {
                if self.dimension == 1 {
                    writeln!(w, "{t},{},{u}", c[0])?;
                } else {
                    writeln!(w, "{t},{},{},{u}", c[0], c[1])?;
                }
            }
        }
        Ok(())
    }
}

/// u^α on the full mesh together with the maximizing time indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SupConvolution {
    pub alpha: f64,
    /// K of the original series.
    pub k: f64,
    pub field: TimeSeriesField,
    /// `argmax[n][i]`: index of s*(t_n) at node i.
    pub argmax: Vec<Vec<usize>>,
    /// Time indices with t in (t₀ + Kα, T − Kα).
    pub window: std::ops::Range<usize>,
}

/// Whether candidate (value a at index sa) beats (value b at index sb) for time index n.
#[inline]
fn better(a: f64, sa: usize, b: f64, sb: usize, n: usize, times: &[f64]) -> bool {
    if a != b {
        return a > b;
    }
    if sa == n || sb == n {
        return sa == n && sb != n;
    }
    let (da, db) = ((times[sa] - times[n]).abs(), (times[sb] - times[n]).abs());
    if da != db {
        return da < db;
    }
    sa < sb
}

/// The candidate value u(s) − |t − s|²/α².
#[inline]
pub fn penalized(u: f64, t: f64, s: f64, alpha: f64) -> f64 {
    let d = t - s;
    u - d * d / (alpha * alpha)
}

/// Sup-convolution with search restricted to |s − t| ≤ Kα, outside of which
/// no candidate can beat s = t.
pub fn sup_convolve(series: &TimeSeriesField, alpha: f64, exec: Execution) -> Result<SupConvolution> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Parameter(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    let times = &series.times;
    let k = series.k();
    let reach = k * alpha;
    let (t0, tn) = (times[0], times[times.len() - 1]);
    if tn - t0 <= 2.0 * reach {
        return Err(Error::EmptyWindow { horizon: tn - t0, window: 2.0 * reach });
    }
    let nodes = series.node_count();
    let mut values = Vec::with_capacity(times.len());
    let mut argmax = Vec::with_capacity(times.len());
    for (n, &t) in times.iter().enumerate() {
        let lo = times.partition_point(|&s| s < t - reach);
        let hi = times.partition_point(|&s| s <= t + reach);
        let best: Vec<(f64, usize)> = exec::map(exec, nodes, |i| {
            let mut best = (series.values[n][i], n);
            for m in lo..hi {
                let v = penalized(series.values[m][i], t, times[m], alpha);
                if better(v, m, best.0, best.1, n, times) {
                    best = (v, m);
                }
            }
            best
        });
        values.push(best.iter().map(|b| b.0).collect());
        argmax.push(best.iter().map(|b| b.1).collect());
    }
    let first = times.partition_point(|&s| s <= t0 + reach);
    let last = times.partition_point(|&s| s < tn - reach);
    let field = TimeSeriesField::with_coords(times.clone(), values, series.coords.clone(), series.dimension)?;
    Ok(SupConvolution { alpha, k, field, argmax, window: first..last.max(first) })
}

/// The definition evaluated over every pair of times, with the same tie-break.
pub fn sup_convolve_brute_force(series: &TimeSeriesField, alpha: f64) -> (Vec<Vec<f64>>, Vec<Vec<usize>>) {
    let times = &series.times;
    let mut values = Vec::new();
    let mut argmax = Vec::new();
    for (n, &t) in times.iter().enumerate() {
        let mut row = Vec::new();
        let mut arg = Vec::new();
        for i in 0..series.node_count() {
            let mut best = (series.values[n][i], n);
            for (m, &s) in times.iter().enumerate() {
                let v = penalized(series.values[m][i], t, s, alpha);
                if better(v, m, best.0, best.1, n, times) {
                    best = (v, m);
                }
            }
            row.push(best.0);
            arg.push(best.1);
        }
        values.push(row);
        argmax.push(arg);
    }
    (values, argmax)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LipschitzReport {
    pub max_slope: f64,
    /// 2K/α.
    pub bound: f64,
    /// 10Δt/α².
    pub slack: f64,
    pub pass: bool,
}

/// Largest difference quotient in time of u^α between adjacent times inside
/// the window.
pub fn check_time_lipschitz(conv: &SupConvolution) -> LipschitzReport {
    let times = conv.field.times();
    let values = conv.field.values();
    let mut max_slope: f64 = 0.0;
    let w = &conv.window;
    for n in w.start..w.end.saturating_sub(1) {
        let dt = times[n + 1] - times[n];
        for (a, b) in values[n].iter().zip(&values[n + 1]) {
            max_slope = max_slope.max((b - a).abs() / dt);
        }
    }
    let bound = 2.0 * conv.k / conv.alpha;
    let slack = 10.0 * conv.field.max_time_step() / (conv.alpha * conv.alpha);
    LipschitzReport { max_slope, bound, slack, pass: max_slope <= bound + slack }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    /// max |s*(t) − t|.
    pub max_offset: f64,
    /// Kα + Δt.
    pub limit: f64,
    pub pass: bool,
}

pub fn check_maximizer_window(conv: &SupConvolution) -> WindowReport {
    let times = conv.field.times();
    let mut max_offset: f64 = 0.0;
    for (n, row) in conv.argmax.iter().enumerate() {
        for &m in row {
            max_offset = max_offset.max((times[m] - times[n]).abs());
        }
    }
    let limit = conv.k * conv.alpha + conv.field.max_time_step();
    WindowReport { max_offset, limit, pass: max_offset < limit }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialLayerReport {
    /// First mesh time t₁ ≥ t₀ + Kα.
    pub time: f64,
    /// max over nodes of u^α(x, t₁) − max_{s ≤ t₁ + Kα} u(x, s).
    pub excess: f64,
    pub pass: bool,
}

/// u^α at the first time past Kα against the running max of u up to Kα later.
pub fn check_initial_layer(series: &TimeSeriesField, conv: &SupConvolution) -> InitialLayerReport {
    let times = series.times();
    let reach = conv.k * conv.alpha;
    let n1 = times.partition_point(|&s| s < times[0] + reach).min(times.len() - 1);
    let t1 = times[n1];
    let upto = times.partition_point(|&s| s <= t1 + reach);
    let mut excess = f64::NEG_INFINITY;
    for i in 0..series.node_count() {
        let cap = series.values[..upto].iter().map(|row| row[i]).fold(f64::NEG_INFINITY, f64::max);
        excess = excess.max(conv.field.values()[n1][i] - cap);
    }
    InitialLayerReport { time: t1, excess, pass: excess <= 0.0 }
}
