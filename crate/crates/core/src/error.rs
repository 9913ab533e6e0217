//! Error type shared across the solver.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Domain extents do not define a usable grid.
    #[error("degenerate domain: {0}")]
    DegenerateDomain(String),

    /// Node count too small for the reconstruction stencil.
    #[error("{axis} node count {n} is below the minimum {min} required by the reconstruction stencil")]
    TooFewNodes {
        axis: &'static str,
        n: usize,
        min: usize,
    },

    /// An initial-condition sample produced a non-finite value.
    #[error("non-finite sample {value} at node ({i}, {j}) = ({x}, {y})")]
    NonFiniteSample {
        i: usize,
        j: usize,
        x: f64,
        y: f64,
        value: f64,
    },

    /// A field update produced a non-finite value (blow-up).
    #[error("non-finite value at node ({i}, {j}) after {op}")]
    NonFinite {
        i: usize,
        j: usize,
        op: &'static str,
    },

    /// The limited update left the configured bounds; indicates a limiter bug
    /// or a first-order flux that is not monotone for the given time step.
    #[error(
        "bound violation at node ({i}, {j}): value {value:e} outside [{lower:e}, {upper:e}] by {excess:e}"
    )]
    BoundViolation {
        i: usize,
        j: usize,
        value: f64,
        lower: f64,
        upper: f64,
        excess: f64,
    },

    /// Both velocity maxima are zero; there is no transport to integrate.
    #[error("static velocity field: alpha_x and alpha_y are both zero")]
    StaticField,

    /// Unknown benchmark case name.
    #[error("unknown case `{name}`; valid cases: {valid}")]
    UnknownCase { name: String, valid: String },

    /// Invalid configuration value; the message names the offending key.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
