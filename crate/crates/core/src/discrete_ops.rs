//! Pointwise finite-difference operators.

use std::sync::Arc;

use crate::analysis::beta_exponent_unchecked;
use crate::domain::Grid;
use crate::error::{Error, Result};

/// x^e with an integer fast path.
#[inline]
pub fn pow(x: f64, e: f64) -> f64 {
    if e == 2.0 {
        x * x
    } else if e.fract() == 0.0 && e.abs() <= 32.0 {
        x.powi(e as i32)
    } else {
        x.powf(e)
    }
}

/// The p-Laplacian flux Φ(s) = |s|^{p−2} s.
#[inline]
pub fn flux(s: f64, p: f64) -> f64 {
    if p == 2.0 {
        s
    } else {
        pow(s.abs(), p - 2.0) * s
    }
}

/// Φ′(s) = (p−1)|s|^{p−2}.
#[inline]
pub fn flux_derivative(s: f64, p: f64) -> f64 {
    if p == 2.0 {
        1.0
    } else {
        (p - 1.0) * pow(s.abs(), p - 2.0)
    }
}

/// Nodal values on a grid.
#[derive(Clone, Debug)]
pub struct Field {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl Field {
    pub fn new(grid: Arc<Grid>, values: Vec<f64>) -> Result<Field> {
        if values.len() != grid.len() {
            return Err(Error::Parameter(format!(
                "field has {} values for {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!("non-finite value at node {i}")));
        }
        Ok(Field { grid, values })
    }

    pub fn from_fn(grid: Arc<Grid>, f: impl Fn([f64; 2]) -> f64) -> Result<Field> {
        let values = grid.coords().iter().map(|&c| f(c)).collect();
        Field::new(grid, values)
    }

    pub fn constant(grid: Arc<Grid>, c: f64) -> Result<Field> {
        let n = grid.len();
        Field::new(grid, vec![c; n])
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// One-sided differences along one axis. A missing side means the node sits
/// on the boundary on that side.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AxisStencil {
    pub backward: Option<f64>,
    pub forward: Option<f64>,
    pub h_minus: f64,
    pub h_plus: f64,
}

impl AxisStencil {
    pub fn centered(&self) -> f64 {
        match (self.backward, self.forward) {
            (Some(b), Some(f)) => (b * self.h_minus + f * self.h_plus) / (self.h_minus + self.h_plus),
            (Some(b), None) => b,
            (None, Some(f)) => f,
            (None, None) => 0.0,
        }
    }

    /// Three-point second difference; with one side missing, the half cell
    /// with zero flux through the missing face.
    pub fn second(&self) -> f64 {
        match (self.backward, self.forward) {
            (Some(b), Some(f)) => 2.0 * (f - b) / (self.h_minus + self.h_plus),
            (Some(b), None) => -2.0 * b / self.h_minus,
            (None, Some(f)) => 2.0 * f / self.h_plus,
            (None, None) => 0.0,
        }
    }

    /// Godunov upwind magnitude for a Hamiltonian with its minimum at 0.
    #[inline]
    pub fn upwind(&self) -> f64 {
        let a = self.backward.map_or(0.0, |b| b.max(0.0));
        let c = self.forward.map_or(0.0, |f| (-f).max(0.0));
        a.max(c)
    }

    /// Largest one-sided slope magnitude.
    pub fn max_slope(&self) -> f64 {
        self.backward.map_or(0.0, f64::abs).max(self.forward.map_or(0.0, f64::abs))
    }
}

/// Differences of a field at one node.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StencilSample {
    pub dim: usize,
    pub axes: [AxisStencil; 2],
    /// Centred mixed second difference (2D, 0 when a diagonal is missing).
    pub cross: f64,
}

impl StencilSample {
    pub fn at(grid: &Grid, u: &[f64], node: usize) -> StencilSample {
        let nb = grid.neighbors(node);
        let mut axes = [AxisStencil::default(); 2];
        for (axis, st) in axes.iter_mut().enumerate().take(grid.dimension()) {
            if let Some(m) = nb[axis][0] {
                st.backward = Some((u[node] - u[m.index]) / m.dist);
                st.h_minus = m.dist;
            }
            if let Some(p) = nb[axis][1] {
                st.forward = Some((u[p.index] - u[node]) / p.dist);
                st.h_plus = p.dist;
            }
        }
        let mut cross = 0.0;
        if grid.dimension() == 2 {
            if let [Some(mm), Some(mp), Some(pm), Some(pp)] = *grid.diagonals(node) {
                let h = grid.spacing();
                cross = (u[pp] - u[pm] - u[mp] + u[mm]) / (4.0 * h * h);
            }
        }
        StencilSample { dim: grid.dimension(), axes, cross }
    }

    /// Interior 1D stencil from two neighbour values.
    pub fn line(left: f64, centre: f64, right: f64, h: f64) -> StencilSample {
        let mut s = StencilSample { dim: 1, ..Default::default() };
        s.axes[0] = AxisStencil {
            backward: Some((centre - left) / h),
            forward: Some((right - centre) / h),
            h_minus: h,
            h_plus: h,
        };
        s
    }

    pub fn centered_gradient(&self) -> [f64; 2] {
        [self.axes[0].centered(), if self.dim == 2 { self.axes[1].centered() } else { 0.0 }]
    }

    /// Largest nodal gradient magnitude seen by the upwind or centred stencils.
    pub fn max_slope(&self) -> f64 {
        let mut s = 0.0;
        for a in &self.axes[..self.dim] {
            s += a.max_slope().powi(2);
        }
        s.sqrt()
    }
}

/// Godunov discretization of |Du|^q.
#[inline]
pub fn hamiltonian(stencil: &StencilSample, q: f64) -> f64 {
    if stencil.dim == 1 {
        return pow(stencil.axes[0].upwind(), q);
    }
    let s: f64 = stencil.axes[..stencil.dim].iter().map(|a| a.upwind().powi(2)).sum();
    pow(s.sqrt(), q)
}

/// div(|Du|^{p−2}Du). In 1D the conservative flux difference, which is
/// monotone; in 2D the expanded form.
pub fn p_laplacian(stencil: &StencilSample, p: f64) -> f64 {
    if stencil.dim != 1 {
        return p_laplacian_expanded(stencil, p);
    }
    let a = &stencil.axes[0];
    let right = a.forward.map_or(0.0, |f| flux(f, p));
    let left = a.backward.map_or(0.0, |b| flux(b, p));
    let width = match (a.backward, a.forward) {
        (Some(_), Some(_)) => 0.5 * (a.h_minus + a.h_plus),
        (Some(_), None) => 0.5 * a.h_minus,
        (None, Some(_)) => 0.5 * a.h_plus,
        (None, None) => return 0.0,
    };
    (right - left) / width
}

/// |Dc|^{p−2}(Tr D²u + (p−2)⟨D²u ĝ, ĝ⟩) with ĝ = Dc/|Dc| and ĝ = 0 at Dc = 0.
pub fn p_laplacian_expanded(stencil: &StencilSample, p: f64) -> f64 {
    let g = stencil.centered_gradient();
    let m = [
        [stencil.axes[0].second(), stencil.cross],
        [stencil.cross, if stencil.dim == 2 { stencil.axes[1].second() } else { 0.0 }],
    ];
    let trace = m[0][0] + m[1][1];
    let norm = g[0].hypot(g[1]);
    if norm == 0.0 {
        return if p == 2.0 { trace } else { 0.0 };
    }
    let e = [g[0] / norm, g[1] / norm];
    let directional = e[0] * (m[0][0] * e[0] + m[0][1] * e[1]) + e[1] * (m[1][0] * e[0] + m[1][1] * e[1]);
    pow(norm, p - 2.0) * (trace + (p - 2.0) * directional)
}

/// −div(|Du|^{p−2}Du) + |Du|^q − f at a node, so that u_t = −residual.
pub fn spatial_residual(field: &Field, node: usize, p: f64, q: f64, f_value: f64) -> f64 {
    let s = StencilSample::at(field.grid(), field.values(), node);
    residual_of(&s, p, q, f_value)
}

#[inline]
pub fn residual_of(stencil: &StencilSample, p: f64, q: f64, f_value: f64) -> f64 {
    -p_laplacian(stencil, p) + hamiltonian(stencil, q) - f_value
}

/// Gradient of the boundary-layer profile u ≈ −(M/β) d^β at distance h/2,
/// with M the exact layer constant ((p−1)(1−β))^{1−β} for |u′|^q ≈ div.
pub fn layer_gradient(h: f64, p: f64, q: f64) -> f64 {
    let beta = beta_exponent_unchecked(p, q);
    (2.0 * (p - 1.0) * (1.0 - beta) / h).powf(1.0 - beta)
}

/// Diffusive inflow through the faces of a boundary node that leave the
/// domain, assuming the singular boundary layer attains the wall.
pub fn wall_inflow(grid: &Grid, node: usize, p: f64, q: f64) -> f64 {
    let nb = grid.neighbors(node);
    let mut total = 0.0;
    for sides in nb.iter().take(grid.dimension()) {
        let inward = match sides {
            [None, Some(n)] | [Some(n), None] => n.dist,
            _ => continue,
        };
        total += flux(layer_gradient(inward, p, q), p) / (0.5 * inward);
    }
    total
}
