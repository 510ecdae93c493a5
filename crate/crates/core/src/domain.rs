//! Discrete domains: the interval and the disc, with the distance to the boundary.

use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Geometry the grid was built from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DomainKind {
    Interval { a: f64, b: f64 },
    Disc { radius: f64 },
}

/// A neighbouring node along one axis and its Euclidean distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Neighbor {
    pub index: usize,
    pub dist: f64,
}

/// Axis neighbours of a node: `[axis][side]`, side 0 is the minus side.
pub type AxisNeighbors = [[Option<Neighbor>; 2]; 2];

/// Immutable node set with boundary flags and distance values.
#[derive(Clone, Debug)]
pub struct Grid {
    kind: DomainKind,
    dim: usize,
    coords: Vec<[f64; 2]>,
    h: f64,
    boundary: Vec<bool>,
    dist: Vec<f64>,
    delta: f64,
    neighbors: Vec<AxisNeighbors>,
    // (−,−), (−,+), (+,−), (+,+) lattice diagonals, 2D only.
    diagonals: Vec<[Option<usize>; 4]>,
    collar: Vec<usize>,
    core: Vec<usize>,
    boundary_nodes: Vec<usize>,
    min_spacing: f64,
}

/// Uniform interval grid with `n` cells on `[a, b]`.
pub fn build_interval_grid(a: f64, b: f64, n: usize) -> Result<Grid> {
    if !(a.is_finite() && b.is_finite()) || b <= a {
        return Err(Error::Domain(format!("interval requires b > a, got [{a}, {b}]")));
    }
    if n < 4 {
        return Err(Error::Domain(format!("interval needs n ≥ 4 cells, got {n}")));
    }
    let h = (b - a) / n as f64;
    let coords: Vec<[f64; 2]> = (0..=n)
        .map(|i| {
            let x = if i == n { b } else { a + i as f64 * h };
            [x, 0.0]
        })
        .collect();
    let boundary: Vec<bool> = (0..=n).map(|i| i == 0 || i == n).collect();
    let dist: Vec<f64> = coords
        .iter()
        .zip(&boundary)
        .map(|(c, &bd)| if bd { 0.0 } else { (c[0] - a).min(b - c[0]) })
        .collect();
    let neighbors = (0..=n)
        .map(|i| {
            let minus = (i > 0).then(|| Neighbor { index: i - 1, dist: coords[i][0] - coords[i - 1][0] });
            let plus = (i < n).then(|| Neighbor { index: i + 1, dist: coords[i + 1][0] - coords[i][0] });
            [[minus, plus], [None, None]]
        })
        .collect();
    let delta = default_delta(b - a, h);
    Ok(Grid::assemble(
        DomainKind::Interval { a, b },
        1,
        coords,
        h,
        boundary,
        dist,
        delta,
        neighbors,
        vec![[None; 4]; n + 1],
    ))
}

/// Lattice of spacing `2·radius/n_per_axis` restricted to the closed disc.
///
/// A node is on the boundary when one of its four lattice neighbours falls
/// outside the disc, or when it lies within h/2 of the circle (so that no
/// projected node ends up closer than h/2 to an interior one). Boundary
/// nodes are projected radially onto the circle.
pub fn build_disc_grid(radius: f64, n_per_axis: usize) -> Result<Grid> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Domain(format!("disc radius must be positive, got {radius}")));
    }
    if n_per_axis < 8 {
        return Err(Error::Domain(format!("disc needs n_per_axis ≥ 8, got {n_per_axis}")));
    }
    let h = 2.0 * radius / n_per_axis as f64;
    let lattice = |i: usize| -radius + i as f64 * h;
    let inside = |i: usize, j: usize| {
        let (x, y) = (lattice(i), lattice(j));
        (x * x + y * y).sqrt() <= radius * (1.0 + 1e-12)
    };
    let mut index = HashMap::new();
    let mut cells = Vec::new();
    for j in 0..=n_per_axis {
        for i in 0..=n_per_axis {
            if inside(i, j) {
                index.insert((i, j), cells.len());
                cells.push((i, j));
            }
        }
    }
    let present = |i: isize, j: isize| -> Option<usize> {
        if i < 0 || j < 0 {
            return None;
        }
        index.get(&(i as usize, j as usize)).copied()
    };
    let mut coords = Vec::with_capacity(cells.len());
    let mut boundary = Vec::with_capacity(cells.len());
    for &(i, j) in &cells {
        let (ii, jj) = (i as isize, j as isize);
        let (mut x, mut y) = (lattice(i), lattice(j));
        let on_boundary = x.hypot(y) >= radius - 0.5 * h
            || [(1, 0), (-1, 0), (0, 1), (0, -1)]
                .iter()
                .any(|&(di, dj)| present(ii + di, jj + dj).is_none());
        if on_boundary {
            let r = (x * x + y * y).sqrt();
            x *= radius / r;
            y *= radius / r;
        }
        coords.push([x, y]);
        boundary.push(on_boundary);
    }
    let interior = boundary.iter().filter(|b| !**b).count();
    if interior < 5 {
        return Err(Error::Domain(format!("disc has only {interior} interior nodes")));
    }
    let dist: Vec<f64> = coords
        .iter()
        .zip(&boundary)
        .map(|(c, &bd)| if bd { 0.0 } else { radius - c[0].hypot(c[1]) })
        .collect();
    let euclid = |a: usize, b: usize| (coords[a][0] - coords[b][0]).hypot(coords[a][1] - coords[b][1]);
    let mut neighbors = Vec::with_capacity(cells.len());
    let mut diagonals = Vec::with_capacity(cells.len());
    for (k, &(i, j)) in cells.iter().enumerate() {
        let (ii, jj) = (i as isize, j as isize);
        let nb = |di: isize, dj: isize| {
            present(ii + di, jj + dj).map(|index| Neighbor { index, dist: euclid(k, index) })
        };
        neighbors.push([[nb(-1, 0), nb(1, 0)], [nb(0, -1), nb(0, 1)]]);
        diagonals.push([
            present(ii - 1, jj - 1),
            present(ii - 1, jj + 1),
            present(ii + 1, jj - 1),
            present(ii + 1, jj + 1),
        ]);
    }
    let delta = default_delta(2.0 * radius, h);
    Ok(Grid::assemble(
        DomainKind::Disc { radius },
        2,
        coords,
        h,
        boundary,
        dist,
        delta,
        neighbors,
        diagonals,
    ))
}

fn default_delta(diameter: f64, h: f64) -> f64 {
    (0.2 * diameter).min(10.0 * h)
}

impl Grid {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        kind: DomainKind,
        dim: usize,
        coords: Vec<[f64; 2]>,
        h: f64,
        boundary: Vec<bool>,
        dist: Vec<f64>,
        delta: f64,
        neighbors: Vec<AxisNeighbors>,
        diagonals: Vec<[Option<usize>; 4]>,
    ) -> Grid {
        let boundary_nodes = (0..coords.len()).filter(|&i| boundary[i]).collect();
        let min_spacing = neighbors
            .iter()
            .flat_map(|n| n.iter().flatten().flatten())
            .fold(f64::INFINITY, |m, nb| m.min(nb.dist));
        let mut g = Grid {
            kind,
            dim,
            coords,
            h,
            boundary,
            dist,
            delta,
            neighbors,
            diagonals,
            collar: Vec::new(),
            core: Vec::new(),
            boundary_nodes,
            min_spacing,
        };
        g.partition();
        g
    }

    fn partition(&mut self) {
        let limit = self.delta + 0.5 * self.h;
        self.collar.clear();
        self.core.clear();
        for i in 0..self.len() {
            if self.boundary[i] {
                continue;
            }
            if self.dist[i] <= limit {
                self.collar.push(i);
            } else {
                self.core.push(i);
            }
        }
    }

    /// Same grid with a different collar width.
    pub fn with_delta(mut self, delta: f64) -> Result<Grid> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::Domain(format!("collar width must be positive, got {delta}")));
        }
        self.delta = delta;
        self.partition();
        Ok(self)
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }
    pub fn dimension(&self) -> usize {
        self.dim
    }
    pub fn len(&self) -> usize {
        self.coords.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
    pub fn spacing(&self) -> f64 {
        self.h
    }
    /// Smallest distance between stencil neighbours.
    pub fn min_spacing(&self) -> f64 {
        self.min_spacing
    }
    pub fn coords(&self) -> &[[f64; 2]] {
        &self.coords
    }
    pub fn coord(&self, i: usize) -> [f64; 2] {
        self.coords[i]
    }
    pub fn is_boundary(&self, i: usize) -> bool {
        self.boundary[i]
    }
    pub fn boundary_flags(&self) -> &[bool] {
        &self.boundary
    }
    pub fn boundary_nodes(&self) -> &[usize] {
        &self.boundary_nodes
    }
    pub fn distance(&self, i: usize) -> f64 {
        self.dist[i]
    }
    pub fn distances(&self) -> &[f64] {
        &self.dist
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn neighbors(&self, i: usize) -> &AxisNeighbors {
        &self.neighbors[i]
    }
    pub fn diagonals(&self, i: usize) -> &[Option<usize>; 4] {
        &self.diagonals[i]
    }
    /// Interior nodes with d ≤ δ + h/2.
    pub fn collar(&self) -> &[usize] {
        &self.collar
    }
    /// Interior nodes with d > δ + h/2.
    pub fn core(&self) -> &[usize] {
        &self.core
    }

    pub fn diameter(&self) -> f64 {
        match self.kind {
            DomainKind::Interval { a, b } => b - a,
            DomainKind::Disc { radius } => 2.0 * radius,
        }
    }

    /// Largest distance to the boundary over the continuous domain.
    pub fn inradius(&self) -> f64 {
        0.5 * self.diameter()
    }

    /// First node of maximal distance to the boundary.
    pub fn deepest_node(&self) -> usize {
        let mut best = 0;
        for i in 1..self.len() {
            if self.dist[i] > self.dist[best] {
                best = i;
            }
        }
        best
    }

    /// |Dd| at interior nodes, 0 at boundary nodes. The gradient is the
    /// least-squares plane through the axis neighbours, using their actual
    /// (possibly projected) positions; on the interval it is the centred
    /// difference.
    pub fn distance_gradient_norms(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| {
                if self.boundary[i] {
                    return 0.0;
                }
                let (mut a, mut b, mut c, mut rx, mut ry) = (0.0, 0.0, 0.0, 0.0, 0.0);
                for nb in self.neighbors[i].iter().take(self.dim).flatten().flatten() {
                    let dx = self.coords[nb.index][0] - self.coords[i][0];
                    let dy = self.coords[nb.index][1] - self.coords[i][1];
                    let dd = self.dist[nb.index] - self.dist[i];
                    a += dx * dx;
                    b += dx * dy;
                    c += dy * dy;
                    rx += dx * dd;
                    ry += dy * dd;
                }
                if self.dim == 1 {
                    return (rx / a).abs();
                }
                let det = a * c - b * b;
                let gx = (c * rx - b * ry) / det;
                let gy = (a * ry - b * rx) / det;
                gx.hypot(gy)
            })
            .collect()
    }

    /// Writes `index, x[, y], d, is_boundary` rows.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        if self.dim == 1 {
            writeln!(w, "index,x,d,is_boundary")?;
        } else {
            writeln!(w, "index,x,y,d,is_boundary")?;
        }
        for i in 0..self.len() {
            let c = self.coords[i];
            if self.dim == 1 {
                writeln!(w, "{},{},{},{}", i, c[0], self.dist[i], self.boundary[i])?;
            } else {
                writeln!(w, "{},{},{},{},{}", i, c[0], c[1], self.dist[i], self.boundary[i])?;
            }
        }
        Ok(())
    }
}
