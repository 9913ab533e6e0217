//! Bindings of the generic transport kernel to the physical systems, plus
//! the benchmark catalogue: initial data, domains, analytic bounds and (where
//! available) exact solutions.
//!
//! A [`Model`] turns a stage density into the advection field the integrator
//! needs: trivially for constant advection, through a 1D Poisson solve and
//! the charge integral for Vlasov–Poisson (`U = (v, E(x))`), and through a 2D
//! Poisson solve with spectral curl for the guiding-center and vorticity
//! models (`U = (-phi_y, phi_x)`).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::{Grid2D, ScalarField, VelocityField};
use crate::limiter::{first_order_fluxes_lf, first_order_fluxes_potential, Bounds, EdgeFluxes};
use crate::poisson::{electric_field, SpectralPlan1D, SpectralPlan2D};

/// Physical system a run is bound to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelKind {
    /// Fixed advection field; the accuracy cases.
    AdvectionConst { ux: f64, uy: f64 },
    /// Phase space (x, v): `U = (v, E(x))` with `E` from the 1D Poisson solve
    /// of the neutralized charge.
    VlasovPoisson,
    /// `U = (-phi_y, phi_x)`, `-laplace(phi) = rho`.
    GuidingCenter,
    /// Vorticity–stream form; same velocity construction as guiding-center.
    IncompressibleEuler,
}

/// Everything the integrator needs from the model at one stage: the advection
/// field, plus the potential (2D solves) or electric field (Vlasov–Poisson)
/// it was derived from, which feed the limiter and the diagnostics.
#[derive(Clone, Debug)]
pub struct ModelFields {
    pub velocity: VelocityField,
    pub phi: Option<ScalarField>,
    pub efield: Option<Vec<f64>>,
}

/// A [`ModelKind`] bound to a grid, with transform plans cached.
pub struct Model {
    kind: ModelKind,
    grid: Grid2D,
    plan_1d: Option<SpectralPlan1D>,
    plan_2d: Option<SpectralPlan2D>,
    /// Node velocities for the kinds where they never change.
    fixed: Option<VelocityField>,
}

impl Model {
    pub fn new(kind: ModelKind, grid: Grid2D) -> Self {
        let (plan_1d, plan_2d, fixed) = match kind {
            ModelKind::AdvectionConst { ux, uy } => {
                (None, None, Some(VelocityField::constant(grid, ux, uy)))
            }
            ModelKind::VlasovPoisson => (
                Some(SpectralPlan1D::new(grid.nx, grid.length_x())),
                None,
                None,
            ),
            ModelKind::GuidingCenter | ModelKind::IncompressibleEuler => {
                (None, Some(SpectralPlan2D::new(&grid)), None)
            }
        };
        Self {
            kind,
            grid,
            plan_1d,
            plan_2d,
            fixed,
        }
    }

    #[inline]
    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    #[inline]
    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    #[inline]
    pub fn is_vlasov(&self) -> bool {
        matches!(self.kind, ModelKind::VlasovPoisson)
    }

    /// Build the advection field from the current density / distribution /
    /// vorticity. Pure in its inputs; called once per RK stage.
    pub fn velocity(&self, rho: &ScalarField) -> ModelFields {
        assert_eq!(rho.grid(), &self.grid, "field grid mismatch");
        match self.kind {
            ModelKind::AdvectionConst { .. } => ModelFields {
                velocity: self.fixed.as_ref().unwrap().clone(),
                phi: None,
                efield: None,
            },
            ModelKind::VlasovPoisson => {
                let e = self.vlasov_efield(rho);
                let (nx, ny) = (self.grid.nx, self.grid.ny);
                let mut u_x = vec![0.0; nx * ny];
                let mut u_y = vec![0.0; nx * ny];
                for j in 0..ny {
                    let v = self.grid.y(j);
                    for i in 0..nx {
                        u_x[j * nx + i] = v;
                        u_y[j * nx + i] = e[i];
                    }
                }
                ModelFields {
                    velocity: VelocityField::new(self.grid, u_x, u_y),
                    phi: None,
                    efield: Some(e),
                }
            }
            ModelKind::GuidingCenter | ModelKind::IncompressibleEuler => {
                let plan = self.plan_2d.as_ref().unwrap();
                let (phi, phi_x, phi_y) = plan.solve_poisson_gradient(rho);
                let u_x: Vec<f64> = phi_y.values().iter().map(|v| -v).collect();
                let u_y = phi_x.values().to_vec();
                ModelFields {
                    velocity: VelocityField::new(self.grid, u_x, u_y),
                    phi: Some(phi),
                    efield: None,
                }
            }
        }
    }

    /// Electric field line `E(x_i)` of the Vlasov–Poisson model: midpoint
    /// charge integral, neutralizing background, spectral solve.
    pub fn vlasov_efield(&self, f: &ScalarField) -> Vec<f64> {
        let plan = self
            .plan_1d
            .as_ref()
            .expect("electric field only defined for the Vlasov-Poisson model");
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let dv = self.grid.dy;
        let mut charge = vec![0.0; nx];
        for (i, c) in charge.iter_mut().enumerate() {
            let mut s = 0.0;
            for j in 0..ny {
                s += f.values()[j * nx + i];
            }
            *c = dv * s;
        }
        let phi = plan.solve_poisson(&charge);
        electric_field(plan, &phi)
    }

    /// First-order monotone flux pair for the limiter, built from the step's
    /// initial data: potential-based Lax–Friedrichs for the 2D-Poisson
    /// models, split-velocity Lax–Friedrichs for Vlasov–Poisson and constant
    /// advection (whose velocity is constant along each line).
    pub fn first_order_fluxes(&self, rho: &ScalarField, fields: &ModelFields) -> EdgeFluxes {
        match self.kind {
            ModelKind::AdvectionConst { .. } | ModelKind::VlasovPoisson => {
                first_order_fluxes_lf(&fields.velocity, rho)
            }
            ModelKind::GuidingCenter | ModelKind::IncompressibleEuler => {
                let phi = fields
                    .phi
                    .as_ref()
                    .expect("potential missing from model fields");
                first_order_fluxes_potential(phi, rho)
            }
        }
    }
}

/// A benchmark preset: initial data, domain, analytic bounds, defaults.
#[derive(Clone, Debug)]
pub struct Case {
    pub name: &'static str,
    pub kind: ModelKind,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub default_nx: usize,
    pub default_ny: usize,
    pub default_t_final: f64,
    pub bounds: Bounds,
    /// Preset whose paper-scale horizon is far beyond desk scale; run
    /// truncated horizons for routine checks.
    pub long_run: bool,
    pub summary: &'static str,
    init: fn(f64, f64) -> f64,
    exact: Option<fn(f64, f64, f64) -> f64>,
}

impl Case {
    /// Grid over the case domain at the given resolution.
    pub fn grid(&self, nx: usize, ny: usize) -> Result<Grid2D> {
        Grid2D::new(self.x_min, self.x_max, self.y_min, self.y_max, nx, ny)
    }

    /// Exact nodal sampling of the initial condition.
    pub fn initial_field(&self, grid: Grid2D) -> Result<ScalarField> {
        ScalarField::sample(grid, self.init)
    }

    pub fn model(&self, grid: Grid2D) -> Model {
        Model::new(self.kind, grid)
    }

    /// Exact solution at time `t`, for the cases that have one.
    pub fn exact(&self) -> Option<fn(f64, f64, f64) -> f64> {
        self.exact
    }

    pub fn init_fn(&self) -> fn(f64, f64) -> f64 {
        self.init
    }
}

fn inv_sqrt_2pi() -> f64 {
    1.0 / (2.0 * PI).sqrt()
}

// --- initial conditions ---------------------------------------------------

fn init_sin4(x: f64, y: f64) -> f64 {
    x.sin().powi(4) + y.sin().powi(4)
}

fn exact_sin4(x: f64, y: f64, t: f64) -> f64 {
    init_sin4(x - t, y - t)
}

fn init_chirp(x: f64, _y: f64) -> f64 {
    (4.0 * x * (x - 2.0 * PI)).sin()
}

fn exact_chirp(x: f64, _y: f64, t: f64) -> f64 {
    (4.0 * (x - t) * (x - 2.0 * PI - t)).sin()
}

fn init_vp_smooth(x: f64, v: f64) -> f64 {
    inv_sqrt_2pi() * (0.5 * x).cos().powi(4) * (-0.5 * v * v).exp()
}

fn init_landau_strong(x: f64, v: f64) -> f64 {
    inv_sqrt_2pi() * (1.0 + 0.5 * (0.5 * x).cos()) * (-0.5 * v * v).exp()
}

fn two_stream_profile(v: f64) -> f64 {
    let (u, vth) = (0.99, 0.3);
    let c = 1.0 / (2.0 * vth * (2.0 * PI).sqrt());
    c * ((-((v - u) * (v - u)) / (2.0 * vth * vth)).exp()
        + (-((v + u) * (v + u)) / (2.0 * vth * vth)).exp())
}

fn init_two_stream(x: f64, v: f64) -> f64 {
    let k = 2.0 / 13.0;
    two_stream_profile(v) * (1.0 + 0.05 * (k * x).cos())
}

fn bump_on_tail_profile(v: f64) -> f64 {
    let (np, nb, vb, vt) = (0.9, 0.2, 4.5, 0.5);
    let c = inv_sqrt_2pi();
    np * c * (-0.5 * v * v).exp() + nb * c * (-((v - vb) * (v - vb)) / (2.0 * vt * vt)).exp()
}

fn init_bump_on_tail(x: f64, v: f64) -> f64 {
    bump_on_tail_profile(v) * (1.0 + 0.04 * (0.3 * x).cos())
}

fn init_kelvin_helmholtz(x: f64, y: f64) -> f64 {
    y.sin() + 0.015 * (0.5 * x).cos()
}

fn init_euler_stationary(x: f64, y: f64) -> f64 {
    -2.0 * x.sin() * y.sin()
}

fn exact_euler_stationary(x: f64, y: f64, _t: f64) -> f64 {
    init_euler_stationary(x, y)
}

/// Discontinuous vortex-patch data; nodes exactly on a jump take the inside
/// value (closed rectangles).
fn init_vortex_patch(x: f64, y: f64) -> f64 {
    let in_x = (PI / 2.0..=3.0 * PI / 2.0).contains(&x);
    if in_x && (PI / 4.0..=3.0 * PI / 4.0).contains(&y) {
        -1.0
    } else if in_x && (5.0 * PI / 4.0..=7.0 * PI / 4.0).contains(&y) {
        1.0
    } else {
        0.0
    }
}

/// The benchmark catalogue.
pub fn all_cases() -> Vec<Case> {
    let c = inv_sqrt_2pi();
    vec![
        Case {
            name: "advect2d_sin4",
            kind: ModelKind::AdvectionConst { ux: 1.0, uy: 1.0 },
            x_min: 0.0,
            x_max: 2.0 * PI,
            y_min: 0.0,
            y_max: 2.0 * PI,
            default_nx: 128,
            default_ny: 128,
            default_t_final: 1.0,
            bounds: Bounds {
                lower: 0.0,
                upper: 2.0,
            },
            long_run: false,
            summary: "2D linear advection of sin^4(x)+sin^4(y); accuracy case",
            init: init_sin4,
            exact: Some(exact_sin4),
        },
        Case {
            name: "advect1d_chirp",
            kind: ModelKind::AdvectionConst { ux: 1.0, uy: 0.0 },
            x_min: 0.0,
            x_max: 2.0 * PI,
            y_min: 0.0,
            y_max: 2.0 * PI,
            default_nx: 160,
            default_ny: 16,
            default_t_final: 1.5,
            bounds: Bounds {
                lower: -1.0,
                upper: 1.0,
            },
            long_run: false,
            summary: "1D advection of the oscillatory chirp sin(4x(x-2pi))",
            init: init_chirp,
            exact: Some(exact_chirp),
        },
        Case {
            name: "vp_smooth",
            kind: ModelKind::VlasovPoisson,
            x_min: 0.0,
            x_max: 4.0 * PI,
            y_min: -4.0 * PI,
            y_max: 4.0 * PI,
            default_nx: 128,
            default_ny: 256,
            default_t_final: 1.0,
            bounds: Bounds {
                lower: 0.0,
                upper: c,
            },
            long_run: false,
            summary: "smooth Vlasov-Poisson accuracy case cos^4(x/2)*Maxwellian",
            init: init_vp_smooth,
            exact: None,
        },
        Case {
            name: "landau_strong",
            kind: ModelKind::VlasovPoisson,
            x_min: 0.0,
            x_max: 4.0 * PI,
            y_min: -2.0 * PI,
            y_max: 2.0 * PI,
            default_nx: 256,
            default_ny: 256,
            default_t_final: 50.0,
            bounds: Bounds {
                lower: c * 0.5 * (-2.0 * PI * PI).exp(),
                upper: c * 1.5,
            },
            long_run: false,
            summary: "strong Landau damping, alpha = 0.5, k = 0.5",
            init: init_landau_strong,
            exact: None,
        },
        Case {
            name: "two_stream_sym",
            kind: ModelKind::VlasovPoisson,
            x_min: 0.0,
            x_max: 13.0 * PI,
            y_min: -2.0 * PI,
            y_max: 2.0 * PI,
            default_nx: 256,
            default_ny: 256,
            default_t_final: 70.0,
            bounds: Bounds {
                lower: two_stream_profile(2.0 * PI) * (1.0 - 0.05),
                upper: two_stream_profile(0.99) * (1.0 + 0.05),
            },
            long_run: true,
            summary: "symmetric two-stream instability, u = 0.99, v_th = 0.3",
            init: init_two_stream,
            exact: None,
        },
        Case {
            name: "bump_on_tail",
            kind: ModelKind::VlasovPoisson,
            x_min: 0.0,
            x_max: 2.0 * PI / 0.3,
            y_min: -3.0 * PI,
            y_max: 3.0 * PI,
            default_nx: 256,
            default_ny: 256,
            default_t_final: 1000.0,
            bounds: Bounds {
                lower: bump_on_tail_profile(-3.0 * PI) * (1.0 - 0.04),
                upper: bump_on_tail_profile(0.0) * (1.0 + 0.04),
            },
            long_run: true,
            summary: "bump-on-tail instability; paper-scale horizon t = 1000",
            init: init_bump_on_tail,
            exact: None,
        },
        Case {
            name: "kelvin_helmholtz",
            kind: ModelKind::GuidingCenter,
            x_min: 0.0,
            x_max: 4.0 * PI,
            y_min: 0.0,
            y_max: 2.0 * PI,
            default_nx: 256,
            default_ny: 256,
            default_t_final: 40.0,
            bounds: Bounds {
                lower: -1.015,
                upper: 1.015,
            },
            long_run: false,
            summary: "Kelvin-Helmholtz instability of the guiding-center model",
            init: init_kelvin_helmholtz,
            exact: None,
        },
        Case {
            name: "euler_stationary",
            kind: ModelKind::IncompressibleEuler,
            x_min: 0.0,
            x_max: 2.0 * PI,
            y_min: 0.0,
            y_max: 2.0 * PI,
            default_nx: 128,
            default_ny: 128,
            default_t_final: 1.0,
            bounds: Bounds {
                lower: -2.0,
                upper: 2.0,
            },
            long_run: false,
            summary: "stationary incompressible Euler vortex -2 sin(x) sin(y)",
            init: init_euler_stationary,
            exact: Some(exact_euler_stationary),
        },
        Case {
            name: "vortex_patch",
            kind: ModelKind::IncompressibleEuler,
            x_min: 0.0,
            x_max: 2.0 * PI,
            y_min: 0.0,
            y_max: 2.0 * PI,
            default_nx: 256,
            default_ny: 256,
            default_t_final: 10.0,
            bounds: Bounds {
                lower: -1.0,
                upper: 1.0,
            },
            long_run: false,
            summary: "vortex patch with discontinuous +-1 rectangles",
            init: init_vortex_patch,
            exact: None,
        },
    ]
}

/// Look up a benchmark preset by name.
pub fn case(name: &str) -> Result<Case> {
    let cases = all_cases();
    cases
        .iter()
        .find(|c| c.name == name)
        .cloned()
        .ok_or_else(|| Error::UnknownCase {
            name: name.to_string(),
            valid: cases
                .iter()
                .map(|c| c.name)
                .collect::<Vec<_>>()
                .join(", "),
        })
}
