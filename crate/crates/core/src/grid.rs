//! Uniform periodic 2D grids and the fields living on them.
//!
//! Nodes follow the open periodic convention: `x_i = x_min + i*dx` for
//! `i = 0..n_x-1` with `dx = (x_max - x_min)/n_x`, so the right/top endpoint
//! is identified with the left/bottom one and never stored. This keeps FFT
//! solves and discrete norms free of a double-counted seam.

use crate::error::{Error, Result};

/// Minimum node count per direction; the Hermite reconstruction stencil needs
/// at least 7 distinct points on a line, and grids require one more.
pub const MIN_NODES: usize = 8;

/// Periodic index map: `i` and `i + n` address the same node.
#[inline]
pub fn pidx(i: isize, n: usize) -> usize {
    i.rem_euclid(n as isize) as usize
}

/// Uniform periodic rectangular grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid2D {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
}

impl Grid2D {
    pub fn new(
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        nx: usize,
        ny: usize,
    ) -> Result<Self> {
        if !(x_max > x_min) {
            return Err(Error::DegenerateDomain(format!(
                "x_max ({x_max}) must exceed x_min ({x_min})"
            )));
        }
        if !(y_max > y_min) {
            return Err(Error::DegenerateDomain(format!(
                "y_max ({y_max}) must exceed y_min ({y_min})"
            )));
        }
        if nx < MIN_NODES {
            return Err(Error::TooFewNodes {
                axis: "x",
                n: nx,
                min: MIN_NODES,
            });
        }
        if ny < MIN_NODES {
            return Err(Error::TooFewNodes {
                axis: "y",
                n: ny,
                min: MIN_NODES,
            });
        }
        let dx = (x_max - x_min) / nx as f64;
        let dy = (y_max - y_min) / ny as f64;
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
            dx,
            dy,
        })
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        self.y_min + j as f64 * self.dy
    }

    /// Flat index of node (i, j); storage is row-major (x fastest).
    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.nx && j < self.ny);
        j * self.nx + i
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn cell_area(&self) -> f64 {
        self.dx * self.dy
    }

    #[inline]
    pub fn length_x(&self) -> f64 {
        self.x_max - self.x_min
    }

    #[inline]
    pub fn length_y(&self) -> f64 {
        self.y_max - self.y_min
    }
}

/// Node values of a scalar quantity (density / distribution / vorticity /
/// potential) on a [`Grid2D`]. Row-major storage; rows are contiguous,
/// columns are accessed through strided copies.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    grid: Grid2D,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn constant(grid: Grid2D, c: f64) -> Self {
        Self {
            grid,
            values: vec![c; grid.len()],
        }
    }

    /// Sample `f(x, y)` at every node. Rejects non-finite samples, naming the
    /// offending node.
    pub fn sample(grid: Grid2D, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        for j in 0..grid.ny {
            let y = grid.y(j);
            for i in 0..grid.nx {
                let x = grid.x(i);
                let v = f(x, y);
                if !v.is_finite() {
                    return Err(Error::NonFiniteSample {
                        i,
                        j,
                        x,
                        y,
                        value: v,
                    });
                }
                values.push(v);
            }
        }
        Ok(Self { grid, values })
    }

    pub fn from_values(grid: Grid2D, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.len(), "value count must be nx*ny");
        Self { grid, values }
    }

    #[inline]
    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.grid.idx(i, j);
        self.values[k] = v;
    }

    /// Contiguous view of row `j` (fixed y, all x).
    #[inline]
    pub fn row(&self, j: usize) -> &[f64] {
        let start = j * self.grid.nx;
        &self.values[start..start + self.grid.nx]
    }

    #[inline]
    pub fn row_mut(&mut self, j: usize) -> &mut [f64] {
        let start = j * self.grid.nx;
        &mut self.values[start..start + self.grid.nx]
    }

    /// Copy column `i` (fixed x, all y) into `buf`.
    pub fn fill_column(&self, i: usize, buf: &mut [f64]) {
        assert_eq!(buf.len(), self.grid.ny);
        for (j, b) in buf.iter_mut().enumerate() {
            *b = self.values[j * self.grid.nx + i];
        }
    }

    pub fn store_column(&mut self, i: usize, buf: &[f64]) {
        assert_eq!(buf.len(), self.grid.ny);
        for (j, b) in buf.iter().enumerate() {
            self.values[j * self.grid.nx + i] = *b;
        }
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// First node holding a non-finite value, if any.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.values
            .iter()
            .position(|v| !v.is_finite())
            .map(|k| (k % self.grid.nx, k / self.grid.nx))
    }
}

impl std::ops::Index<(usize, usize)> for ScalarField {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.values[self.grid.idx(i, j)]
    }
}

/// Node-wise advection components plus their exact global maxima, which the
/// CFL condition and the Lax–Friedrichs splitting consume.
#[derive(Clone, Debug)]
pub struct VelocityField {
    grid: Grid2D,
    u_x: Vec<f64>,
    u_y: Vec<f64>,
    alpha_x: f64,
    alpha_y: f64,
}

impl VelocityField {
    /// The maxima are recomputed here so they can never go stale.
    pub fn new(grid: Grid2D, u_x: Vec<f64>, u_y: Vec<f64>) -> Self {
        assert_eq!(u_x.len(), grid.len());
        assert_eq!(u_y.len(), grid.len());
        let alpha_x = u_x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let alpha_y = u_y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Self {
            grid,
            u_x,
            u_y,
            alpha_x,
            alpha_y,
        }
    }

    pub fn from_fn(grid: Grid2D, f: impl Fn(f64, f64) -> (f64, f64)) -> Self {
        let mut u_x = Vec::with_capacity(grid.len());
        let mut u_y = Vec::with_capacity(grid.len());
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                let (a, b) = f(grid.x(i), grid.y(j));
                u_x.push(a);
                u_y.push(b);
            }
        }
        Self::new(grid, u_x, u_y)
    }

    pub fn constant(grid: Grid2D, ux: f64, uy: f64) -> Self {
        Self::new(grid, vec![ux; grid.len()], vec![uy; grid.len()])
    }

    #[inline]
    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    #[inline]
    pub fn u_x(&self) -> &[f64] {
        &self.u_x
    }

    #[inline]
    pub fn u_y(&self) -> &[f64] {
        &self.u_y
    }

    #[inline]
    pub fn alpha_x(&self) -> f64 {
        self.alpha_x
    }

    #[inline]
    pub fn alpha_y(&self) -> f64 {
        self.alpha_y
    }
}
