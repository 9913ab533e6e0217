//! CFL time-step control, dimension-by-dimension flux sweeps, and RK4
//! stepping with stage-accumulated fluxes.
//!
//! Each RK stage re-solves the model's field equation from the stage density
//! (the coupled system is treated by the method of lines), and the final
//! update is written in flux-difference form with the (1,2,2,1)/6 stage
//! accumulation so the MPP limiter can rescale it edge by edge against a
//! first-order monotone flux built from the step's initial data.

use crate::error::{Error, Result};
use crate::grid::{Grid2D, ScalarField, VelocityField};
use crate::limiter::{
    apply_limited_update, flux_difference_update, limiter_thetas, Bounds, EdgeFluxes,
};
use crate::models::{Model, ModelFields};
use crate::reconstruction::{reconstruct_line, Scheme, WenoConfig};

/// RK4 linear-stability limit on the CFL number.
pub const RK4_MAX_CFL: f64 = 2.0 / 3.0;

/// Scheme selection, limiter switch and CFL number for a run.
#[derive(Clone, Copy, Debug)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub limiter: bool,
    pub cfl: f64,
    pub weno: WenoConfig,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self {
            scheme: Scheme::HermiteLinear,
            limiter: true,
            cfl: 0.6,
            weno: WenoConfig::default(),
        }
    }
}

impl SchemeConfig {
    pub fn new(scheme: Scheme, limiter: bool, cfl: f64, weno: WenoConfig) -> Result<Self> {
        if !(cfl > 0.0 && cfl <= RK4_MAX_CFL) {
            return Err(Error::InvalidConfig(format!(
                "cfl must lie in (0, 2/3] for RK4 linear stability, got {cfl}"
            )));
        }
        Ok(Self {
            scheme,
            limiter,
            cfl,
            weno,
        })
    }
}

/// CFL time step `dt = cfl / (alpha_x/dx + alpha_y/dy)`.
///
/// Truncation of the final step onto `t_final` (and onto snapshot times) is
/// the run loop's job. Errors when both maxima vanish: a static field has
/// nothing to transport and the caller should skip stepping.
pub fn compute_dt(alpha_x: f64, alpha_y: f64, grid: &Grid2D, cfl: f64) -> Result<f64> {
    let denom = alpha_x / grid.dx + alpha_y / grid.dy;
    if !(denom > 0.0) {
        return Err(Error::StaticField);
    }
    Ok(cfl / denom)
}

/// High-order interface fluxes in both directions: rows reconstruct
/// `h_i = u_x * rho` upwind along x, columns `g_j = u_y * rho` along y.
pub fn spatial_fluxes(rho: &ScalarField, u: &VelocityField, cfg: &SchemeConfig) -> EdgeFluxes {
    let grid = *rho.grid();
    assert_eq!(u.grid(), rho.grid(), "fields must share a grid");
    let (nx, ny) = (grid.nx, grid.ny);
    let mut out = EdgeFluxes::zeros(nx, ny);

    // x-direction: rows are contiguous
    let mut hline = vec![0.0; nx];
    let mut uline = vec![0.0; nx];
    let mut gp = vec![0.0; nx];
    let mut flux = vec![0.0; nx];
    for j in 0..ny {
        let row = rho.row(j);
        let urow = &u.u_x()[j * nx..(j + 1) * nx];
        for i in 0..nx {
            hline[i] = urow[i] * row[i];
            uline[i] = urow[i];
        }
        reconstruct_line(&hline, &uline, cfg.scheme, &cfg.weno, &mut gp, &mut flux);
        out.h[j * nx..(j + 1) * nx].copy_from_slice(&flux);
    }

    // y-direction: gather columns
    let mut hcol = vec![0.0; ny];
    let mut ucol = vec![0.0; ny];
    let mut gpc = vec![0.0; ny];
    let mut fcol = vec![0.0; ny];
    for i in 0..nx {
        for j in 0..ny {
            let k = j * nx + i;
            hcol[j] = u.u_y()[k] * rho.values()[k];
            ucol[j] = u.u_y()[k];
        }
        reconstruct_line(&hcol, &ucol, cfg.scheme, &cfg.weno, &mut gpc, &mut fcol);
        for j in 0..ny {
            out.g[j * nx + i] = fcol[j];
        }
    }
    out
}

/// Semi-discrete tendency `L(rho) = -(dH/dx + dG/dy)` from interface fluxes.
pub fn tendency(rho: &ScalarField, fluxes: &EdgeFluxes) -> ScalarField {
    let grid = *rho.grid();
    let (nx, ny) = (grid.nx, grid.ny);
    let (rdx, rdy) = (1.0 / grid.dx, 1.0 / grid.dy);
    let mut out = ScalarField::constant(grid, 0.0);
    for j in 0..ny {
        let jm = crate::grid::pidx(j as isize - 1, ny);
        for i in 0..nx {
            let im = crate::grid::pidx(i as isize - 1, nx);
            let k = j * nx + i;
            let dh = fluxes.h[k] - fluxes.h[j * nx + im];
            let dg = fluxes.g[k] - fluxes.g[jm * nx + i];
            out.values_mut()[k] = -(dh * rdx + dg * rdy);
        }
    }
    out
}

fn axpy(rho: &ScalarField, coeff: f64, l: &ScalarField) -> ScalarField {
    let mut out = rho.clone();
    for (o, v) in out.values_mut().iter_mut().zip(l.values()) {
        *o += coeff * v;
    }
    out
}

/// One RK4 step and the limiter activity it recorded (`theta_min == 1` when
/// the limiter is off or inactive).
#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub rho: ScalarField,
    pub theta_min: f64,
    /// Worst headroom clamp from the limiter (see [`limiter_thetas`]).
    pub limiter_clamp: f64,
}

/// Advance one RK4 step, recomputing the model velocity at every stage.
///
/// Convenience wrapper over [`rk4_step_with`] that builds the stage-0 fields
/// itself; the run loop normally has them already (it needed the CFL maxima).
pub fn rk4_step(
    rho_n: &ScalarField,
    model: &Model,
    cfg: &SchemeConfig,
    dt: f64,
    bounds: Option<&Bounds>,
) -> Result<StepOutcome> {
    let fields0 = model.velocity(rho_n);
    rk4_step_with(rho_n, &fields0, model, cfg, dt, bounds)
}

/// Advance one RK4 step from precomputed stage-0 model fields.
///
/// With the limiter on, the first-order monotone flux pair is built once from
/// the step's initial data `(rho_n, fields0)` and the accumulated high-order
/// fluxes are rescaled toward it before the final flux-difference update.
pub fn rk4_step_with(
    rho_n: &ScalarField,
    fields0: &ModelFields,
    model: &Model,
    cfg: &SchemeConfig,
    dt: f64,
    bounds: Option<&Bounds>,
) -> Result<StepOutcome> {
    let grid = *rho_n.grid();
    let (lambda_x, lambda_y) = (dt / grid.dx, dt / grid.dy);

    // stage 0
    let h0 = spatial_fluxes(rho_n, &fields0.velocity, cfg);
    let l0 = tendency(rho_n, &h0);

    // stage 1
    let rho1 = axpy(rho_n, 0.5 * dt, &l0);
    let f1 = model.velocity(&rho1);
    let h1 = spatial_fluxes(&rho1, &f1.velocity, cfg);
    let l1 = tendency(&rho1, &h1);

    // stage 2
    let rho2 = axpy(rho_n, 0.5 * dt, &l1);
    let f2 = model.velocity(&rho2);
    let h2 = spatial_fluxes(&rho2, &f2.velocity, cfg);
    let l2 = tendency(&rho2, &h2);

    // stage 3
    let rho3 = axpy(rho_n, dt, &l2);
    let f3 = model.velocity(&rho3);
    let h3 = spatial_fluxes(&rho3, &f3.velocity, cfg);

    // accumulated fluxes (1, 2, 2, 1)/6
    let mut hrk = EdgeFluxes::zeros(grid.nx, grid.ny);
    hrk.add_scaled(&h0, 1.0 / 6.0);
    hrk.add_scaled(&h1, 2.0 / 6.0);
    hrk.add_scaled(&h2, 2.0 / 6.0);
    hrk.add_scaled(&h3, 1.0 / 6.0);

    let (rho_next, theta_min, limiter_clamp) = match (cfg.limiter, bounds) {
        (true, Some(b)) => {
            let low = model.first_order_fluxes(rho_n, fields0);
            let out = limiter_thetas(rho_n, &low, &hrk, lambda_x, lambda_y, b);
            let rho_next =
                apply_limited_update(rho_n, &low, &hrk, &out.theta, lambda_x, lambda_y, b)?;
            (rho_next, out.theta.min_value(), out.max_clamp)
        }
        _ => (
            flux_difference_update(rho_n, &hrk, lambda_x, lambda_y),
            1.0,
            0.0,
        ),
    };

    if let Some((i, j)) = rho_next.first_non_finite() {
        return Err(Error::NonFinite {
            i,
            j,
            op: "rk4 step",
        });
    }

    Ok(StepOutcome {
        rho: rho_next,
        theta_min,
        limiter_clamp,
    })
}
