//! First-order monotone MPP fluxes and the parametrized flux limiter.
//!
//! The limiter blends the RK-accumulated high-order fluxes with a first-order
//! monotone flux pair, edge by edge, so the final conservative update stays
//! inside the global bounds taken from the initial data. Limiting parameters
//! are found by decoupling the per-node overshoot/undershoot inequalities:
//! every edge whose flux correction pushes the node toward a bound shares the
//! node's headroom proportionally, and each edge finally takes the minimum of
//! the allowances granted by its two adjacent nodes.

use crate::error::{Error, Result};
use crate::grid::{pidx, ScalarField, VelocityField};

/// Global solution bounds `[lower, upper]`, taken from the analytic extrema
/// of the active benchmark's initial data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower <= upper) {
            return Err(Error::InvalidConfig(format!(
                "bounds lower ({lower}) must not exceed upper ({upper})"
            )));
        }
        Ok(Self { lower, upper })
    }

    #[inline]
    pub fn range(&self) -> f64 {
        self.upper - self.lower
    }

    /// Absolute tolerance for the post-update bound check.
    #[inline]
    pub fn tolerance(&self) -> f64 {
        1e-12 * self.upper.abs().max(self.lower.abs()).max(1.0)
    }
}

/// Interface fluxes in both directions on a periodic grid:
/// `h[j*nx + i]` holds the x-flux at edge `(i+1/2, j)` and
/// `g[j*nx + i]` the y-flux at edge `(i, j+1/2)`.
#[derive(Clone, Debug)]
pub struct EdgeFluxes {
    pub nx: usize,
    pub ny: usize,
    pub h: Vec<f64>,
    pub g: Vec<f64>,
}

impl EdgeFluxes {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        Self {
            nx,
            ny,
            h: vec![0.0; nx * ny],
            g: vec![0.0; nx * ny],
        }
    }

    /// `self += w * other`, the RK accumulation primitive.
    pub fn add_scaled(&mut self, other: &EdgeFluxes, w: f64) {
        debug_assert_eq!((self.nx, self.ny), (other.nx, other.ny));
        for (a, b) in self.h.iter_mut().zip(&other.h) {
            *a += w * b;
        }
        for (a, b) in self.g.iter_mut().zip(&other.g) {
            *a += w * b;
        }
    }
}

/// Per-edge limiting parameters, same layout as [`EdgeFluxes`].
#[derive(Clone, Debug)]
pub struct ThetaField {
    pub nx: usize,
    pub ny: usize,
    /// theta at x-edges (i+1/2, j)
    pub x: Vec<f64>,
    /// theta at y-edges (i, j+1/2)
    pub y: Vec<f64>,
}

impl ThetaField {
    pub fn ones(nx: usize, ny: usize) -> Self {
        Self {
            nx,
            ny,
            x: vec![1.0; nx * ny],
            y: vec![1.0; nx * ny],
        }
    }

    pub fn min_value(&self) -> f64 {
        self.x
            .iter()
            .chain(self.y.iter())
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Output of [`limiter_thetas`]: the per-edge scalings plus the largest
/// clamp applied to a headroom value (nonzero means the first-order update
/// left the bounds, i.e. the monotone CFL condition was exceeded).
#[derive(Clone, Debug)]
pub struct LimiterOutcome {
    pub theta: ThetaField,
    pub max_clamp: f64,
}

/// First-order monotone Lax–Friedrichs fluxes built from the stream
/// potential, for the models with a 2D Poisson solve (`U = (-phi_y, phi_x)`).
///
/// With `alpha_x = max |phi_{i,j+1}-phi_{i,j}|/dy` and
/// `alpha_y = max |phi_{i+1,j}-phi_{i,j}|/dx`, the edge coefficients split
/// into a nonnegative factor on the left/lower node and a nonpositive one on
/// the right/upper node, and their flux differences telescope exactly on
/// constants (the discrete divergence-free condition).
pub fn first_order_fluxes_potential(phi: &ScalarField, rho: &ScalarField) -> EdgeFluxes {
    let grid = *rho.grid();
    assert_eq!(phi.grid(), rho.grid(), "fields must share a grid");
    let (nx, ny) = (grid.nx, grid.ny);
    let (dx, dy) = (grid.dx, grid.dy);

    let mut alpha_x = 0.0f64;
    let mut alpha_y = 0.0f64;
    for j in 0..ny {
        let jp = pidx(j as isize + 1, ny);
        for i in 0..nx {
            let ip = pidx(i as isize + 1, nx);
            alpha_x = alpha_x.max(((phi.get(i, jp) - phi.get(i, j)) / dy).abs());
            alpha_y = alpha_y.max(((phi.get(ip, j) - phi.get(i, j)) / dx).abs());
        }
    }

    let mut out = EdgeFluxes::zeros(nx, ny);
    for j in 0..ny {
        let jp = pidx(j as isize + 1, ny);
        let jm = pidx(j as isize - 1, ny);
        for i in 0..nx {
            let ip = pidx(i as isize + 1, nx);
            let im = pidx(i as isize - 1, nx);
            let k = j * nx + i;

            // x-flux at (i+1/2, j)
            let u_minus = 0.5 * (alpha_x - (phi.get(i, jp) - phi.get(i, j)) / dy);
            let u_plus = 0.5 * (-alpha_x - (phi.get(ip, j) - phi.get(ip, jm)) / dy);
            out.h[k] = u_minus * rho.get(i, j) + u_plus * rho.get(ip, j);

            // y-flux at (i, j+1/2)
            let v_minus = 0.5 * (alpha_y + (phi.get(ip, j) - phi.get(i, j)) / dx);
            let v_plus = 0.5 * (-alpha_y + (phi.get(i, jp) - phi.get(im, jp)) / dx);
            out.g[k] = v_minus * rho.get(i, j) + v_plus * rho.get(i, jp);
        }
    }
    out
}

/// First-order monotone fluxes from a global Lax–Friedrichs split of the
/// node velocities, for models whose velocity is constant along each line in
/// its own direction (Vlasov–Poisson: `U = (v, E(x))`; constant advection).
pub fn first_order_fluxes_lf(u: &VelocityField, rho: &ScalarField) -> EdgeFluxes {
    let grid = *rho.grid();
    assert_eq!(u.grid(), rho.grid(), "fields must share a grid");
    let (nx, ny) = (grid.nx, grid.ny);
    let (ax, ay) = (u.alpha_x(), u.alpha_y());

    let mut out = EdgeFluxes::zeros(nx, ny);
    for j in 0..ny {
        let jp = pidx(j as isize + 1, ny);
        for i in 0..nx {
            let ip = pidx(i as isize + 1, nx);
            let k = j * nx + i;
            let ux = u.u_x()[k];
            out.h[k] = 0.5 * (ux + ax) * rho.get(i, j) + 0.5 * (ux - ax) * rho.get(ip, j);
            let uy = u.u_y()[k];
            out.g[k] = 0.5 * (uy + ay) * rho.get(i, j) + 0.5 * (uy - ay) * rho.get(i, jp);
        }
    }
    out
}

/// Conservative flux-difference update `rho - lx*dH - ly*dG`.
pub fn flux_difference_update(
    rho: &ScalarField,
    fluxes: &EdgeFluxes,
    lambda_x: f64,
    lambda_y: f64,
) -> ScalarField {
    let grid = *rho.grid();
    let (nx, ny) = (grid.nx, grid.ny);
    let mut out = ScalarField::constant(grid, 0.0);
    for j in 0..ny {
        let jm = pidx(j as isize - 1, ny);
        for i in 0..nx {
            let im = pidx(i as isize - 1, nx);
            let k = j * nx + i;
            let dh = fluxes.h[k] - fluxes.h[j * nx + im];
            let dg = fluxes.g[k] - fluxes.g[jm * nx + i];
            out.values_mut()[k] = rho.values()[k] - lambda_x * dh - lambda_y * dg;
        }
    }
    out
}

/// Decouple one side (maximum or minimum) of the per-node inequality: the
/// edges with positive `f` share `gamma` by a common scaling, the others are
/// unconstrained. `gamma >= 0` is the caller's responsibility.
pub(crate) fn decouple_side(gamma: f64, f: &[f64; 4]) -> [f64; 4] {
    let sum_pos: f64 = f.iter().filter(|v| **v > 0.0).sum();
    if sum_pos <= 0.0 {
        return [1.0; 4];
    }
    let scale = (gamma / sum_pos).min(1.0);
    let mut out = [1.0; 4];
    for (o, v) in out.iter_mut().zip(f) {
        if *v > 0.0 {
            *o = scale;
        }
    }
    out
}

/// Edge slot order within a node: left, right, down, up.
const L: usize = 0;
const R: usize = 1;
const D: usize = 2;
const U: usize = 3;

/// Compute the per-edge limiting parameters for the final-stage blend.
///
/// For each node the first-order update fixes the headroom to both bounds;
/// the flux corrections `F` (high-order minus first-order, oriented so that
/// positive values push the node up) are then scaled so neither bound can be
/// crossed, and each edge takes the minimum allowance of its two nodes.
/// Headroom is clamped at zero when the first-order update itself sits
/// marginally outside the bounds; `max_clamp` reports the worst such excess.
pub fn limiter_thetas(
    rho_n: &ScalarField,
    low: &EdgeFluxes,
    high: &EdgeFluxes,
    lambda_x: f64,
    lambda_y: f64,
    bounds: &Bounds,
) -> LimiterOutcome {
    let grid = *rho_n.grid();
    let (nx, ny) = (grid.nx, grid.ny);
    assert_eq!((low.nx, low.ny), (nx, ny));
    assert_eq!((high.nx, high.ny), (nx, ny));

    // per-node allowances for the four edge slots
    let mut lambda = vec![[1.0f64; 4]; nx * ny];
    let mut max_clamp = 0.0f64;

    for j in 0..ny {
        let jm = pidx(j as isize - 1, ny);
        for i in 0..nx {
            let im = pidx(i as isize - 1, nx);
            let k = j * nx + i;
            let k_im = j * nx + im;
            let k_jm = jm * nx + i;

            let rho_fo = rho_n.values()[k]
                - lambda_x * (low.h[k] - low.h[k_im])
                - lambda_y * (low.g[k] - low.g[k_jm]);

            let mut gamma_max = bounds.upper - rho_fo;
            let mut gamma_min = rho_fo - bounds.lower;
            if gamma_max < 0.0 {
                max_clamp = max_clamp.max(-gamma_max);
                gamma_max = 0.0;
            }
            if gamma_min < 0.0 {
                max_clamp = max_clamp.max(-gamma_min);
                gamma_min = 0.0;
            }

            // oriented flux corrections: positive F pushes rho_{i,j} upward
            let f = [
                lambda_x * (high.h[k_im] - low.h[k_im]),
                -lambda_x * (high.h[k] - low.h[k]),
                lambda_y * (high.g[k_jm] - low.g[k_jm]),
                -lambda_y * (high.g[k] - low.g[k]),
            ];

            let lam_max = decouple_side(gamma_max, &f);
            let neg = [-f[0], -f[1], -f[2], -f[3]];
            let lam_min = decouple_side(gamma_min, &neg);
            for s in 0..4 {
                lambda[k][s] = lam_max[s].min(lam_min[s]);
            }
        }
    }

    // each edge takes the stricter of its two adjacent nodes
    let mut theta = ThetaField::ones(nx, ny);
    for j in 0..ny {
        let jp = pidx(j as isize + 1, ny);
        for i in 0..nx {
            let ip = pidx(i as isize + 1, nx);
            let k = j * nx + i;
            theta.x[k] = lambda[k][R].min(lambda[j * nx + ip][L]);
            theta.y[k] = lambda[k][U].min(lambda[jp * nx + i][D]);
        }
    }

    LimiterOutcome { theta, max_clamp }
}

/// Blend high-order and first-order fluxes with the given per-edge scalings
/// and apply the conservative update. `theta == 1` short-circuits to the
/// unmodified high-order flux so an inactive limiter is bitwise neutral.
pub fn blend_update(
    rho_n: &ScalarField,
    low: &EdgeFluxes,
    high: &EdgeFluxes,
    theta: &ThetaField,
    lambda_x: f64,
    lambda_y: f64,
) -> ScalarField {
    let grid = *rho_n.grid();
    let (nx, ny) = (grid.nx, grid.ny);
    let blended = |t: f64, hi: f64, lo: f64| if t == 1.0 { hi } else { t * (hi - lo) + lo };

    let mut out = ScalarField::constant(grid, 0.0);
    for j in 0..ny {
        let jm = pidx(j as isize - 1, ny);
        for i in 0..nx {
            let im = pidx(i as isize - 1, nx);
            let k = j * nx + i;
            let k_im = j * nx + im;
            let k_jm = jm * nx + i;

            let h_r = blended(theta.x[k], high.h[k], low.h[k]);
            let h_l = blended(theta.x[k_im], high.h[k_im], low.h[k_im]);
            let g_u = blended(theta.y[k], high.g[k], low.g[k]);
            let g_d = blended(theta.y[k_jm], high.g[k_jm], low.g[k_jm]);

            out.values_mut()[k] =
                rho_n.values()[k] - lambda_x * (h_r - h_l) - lambda_y * (g_u - g_d);
        }
    }
    out
}

/// [`blend_update`] followed by the hard bound check; a violation beyond
/// [`Bounds::tolerance`] names the offending node and aborts the run.
pub fn apply_limited_update(
    rho_n: &ScalarField,
    low: &EdgeFluxes,
    high: &EdgeFluxes,
    theta: &ThetaField,
    lambda_x: f64,
    lambda_y: f64,
    bounds: &Bounds,
) -> Result<ScalarField> {
    let out = blend_update(rho_n, low, high, theta, lambda_x, lambda_y);
    let tol = bounds.tolerance();
    let nx = rho_n.grid().nx;
    for (k, &v) in out.values().iter().enumerate() {
        let excess = (bounds.lower - v).max(v - bounds.upper);
        if excess > tol {
            return Err(Error::BoundViolation {
                i: k % nx,
                j: k / nx,
                value: v,
                lower: bounds.lower,
                upper: bounds.upper,
                excess,
            });
        }
    }
    Ok(out)
}
