//! Conservative finite-difference solver for 2D incompressible transport
//! equations: the Vlasov–Poisson system, the 2D guiding-center model and the
//! incompressible Euler equations in vorticity–stream form.
//!
//! The spatial discretization is a fifth-order conservative finite-difference
//! scheme with a Hermite linear reconstruction of the interface fluxes (a
//! Hermite WENO reconstruction is available for comparison). Time stepping is
//! classical RK4 with stage-accumulated fluxes, so the final update can be
//! written in flux-difference form and blended edge-by-edge with a first-order
//! monotone flux through a parametrized maximum-principle-preserving (MPP)
//! limiter. Poisson solves and velocity construction are spectral (FFT) on
//! periodic grids.
//!
//! Module map:
//! - [`grid`]: uniform periodic grids, scalar and velocity fields
//! - [`reconstruction`]: 1D interface-value reconstructions and upwind fluxes
//! - [`poisson`]: periodic spectral Poisson solves and differentiation
//! - [`limiter`]: first-order monotone fluxes and the MPP flux limiter
//! - [`integrator`]: CFL control, flux sweeps, RK4 stepping
//! - [`models`]: bindings of the transport kernel to the physical systems,
//!   benchmark initial data and bounds
//! - [`diagnostics`]: conserved-quantity tracking and convergence orders
//! - [`snapshot`]: plain-text field snapshot format

pub mod diagnostics;
pub mod error;
pub mod grid;
pub mod integrator;
pub mod limiter;
pub mod models;
pub mod poisson;
pub mod reconstruction;
pub mod snapshot;

pub use error::{Error, Result};
pub use grid::{Grid2D, ScalarField, VelocityField};
pub use integrator::{compute_dt, rk4_step, rk4_step_with, SchemeConfig, StepOutcome};
pub use limiter::{Bounds, EdgeFluxes};
pub use models::{Case, Model, ModelFields, ModelKind};
pub use reconstruction::{Scheme, WenoConfig};
