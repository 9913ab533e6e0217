//! One-dimensional fifth-order interface-flux reconstruction from point
//! values `h_i = U_i * rho_i` on a periodic line.
//!
//! Two reconstructions are provided: the Hermite linear one (the default
//! scheme) and a Hermite WENO one kept for comparison. Both combine the
//! point values with `G'`, the derivative of the primitive function of `h`
//! evaluated at interfaces, which a sixth-order central stencil supplies.
//! In the conservative finite-difference correspondence the `h_i` play the
//! role of cell averages of the flux function, so polynomial exactness is
//! stated in terms of cell averages throughout.
//!
//! The left value `h^-_{i+1/2}` is reconstructed from the left of the
//! interface; the right value `h^+_{i+1/2}` is its exact mirror image. Both
//! sides share one index-mapped kernel so the mirror identity holds
//! bitwise.

use crate::error::{Error, Result};
use crate::grid::pidx;

/// Minimum line length: the primitive-derivative stencil spans i-2..i+3.
pub const MIN_LINE: usize = 7;

/// Interface reconstruction scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    HermiteLinear,
    HermiteWeno,
}

/// Parameters of the Hermite WENO reconstruction.
///
/// `epsilon` guards the smoothness-indicator denominators; the linear
/// weights are those that make the weighted combination reduce to the
/// Hermite linear reconstruction on smooth data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WenoConfig {
    pub epsilon: f64,
    /// (c_l, c_c, c_r); must sum to 1.
    pub linear_weights: [f64; 3],
}

impl Default for WenoConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-6,
            linear_weights: [1.0 / 9.0, 4.0 / 9.0, 4.0 / 9.0],
        }
    }
}

impl WenoConfig {
    pub fn with_epsilon(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "weno epsilon must be positive, got {epsilon}"
            )));
        }
        Ok(Self {
            epsilon,
            ..Self::default()
        })
    }
}

#[inline]
fn at(h: &[f64], i: isize) -> f64 {
    h[pidx(i, h.len())]
}

/// `G'_{i+1/2}`: sixth-order approximation of the interface point value of
/// the primitive derivative, from the cell averages `h`.
///
/// Coefficients (1, -8, 37, 37, -8, 1)/60; exact for cell averages of
/// polynomials through degree five.
pub fn primitive_derivative(h: &[f64], i: usize) -> f64 {
    debug_assert!(h.len() >= MIN_LINE);
    let i = i as isize;
    ((at(h, i + 3) + at(h, i - 2)) - 8.0 * (at(h, i + 2) + at(h, i - 1))
        + 37.0 * (at(h, i + 1) + at(h, i)))
        / 60.0
}

/// Fill `out[i] = G'_{i+1/2}` for every interface of the periodic line.
pub fn fill_primitive_derivatives(h: &[f64], out: &mut [f64]) {
    assert_eq!(h.len(), out.len());
    for (i, o) in out.iter_mut().enumerate() {
        *o = primitive_derivative(h, i);
    }
}

/// Index maps that express the right-side reconstruction as the mirror image
/// of the left-side one about the interface x_{i+1/2}: cells reflect as
/// i+k -> i+1-k and interfaces as m+1/2 -> (2i-m)+1/2.
#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

impl Side {
    /// Cell offset map: logical offset k (as seen from the upwind side)
    /// to the physical index.
    #[inline]
    fn cell(self, i: isize, k: isize) -> isize {
        match self {
            Side::Left => i + k,
            Side::Right => i + 1 - k,
        }
    }

    /// Interface map for G': the left side reads `G'` at interface index
    /// `i + k`; reflection about x_{i+1/2} sends interface index m to
    /// `2i - m`, so the right side reads index `i - k`.
    #[inline]
    fn face(self, i: isize, k: isize) -> isize {
        match self {
            Side::Left => i + k,
            Side::Right => i - k,
        }
    }
}

/// Shared Hermite linear kernel; `gp` must hold `G'_{m+1/2}` at index m.
#[inline]
fn hermite_linear_side(h: &[f64], gp: &[f64], i: usize, side: Side) -> f64 {
    let i = i as isize;
    let hm1 = at(h, side.cell(i, -1));
    let h0 = at(h, side.cell(i, 0));
    let hp1 = at(h, side.cell(i, 1));
    let gm = at(gp, side.face(i, -2)); // G' at logical -3/2
    let gpv = at(gp, side.face(i, 1)); // G' at logical +3/2
    (-8.0 * hm1 + 19.0 * h0 + 19.0 * hp1 + 3.0 * gm - 6.0 * gpv) / 27.0
}

/// Shared Hermite WENO kernel.
#[inline]
fn hermite_weno_side(h: &[f64], gp: &[f64], i: usize, side: Side, cfg: &WenoConfig) -> f64 {
    let i = i as isize;
    let hm1 = at(h, side.cell(i, -1));
    let h0 = at(h, side.cell(i, 0));
    let hp1 = at(h, side.cell(i, 1));
    let gm = at(gp, side.face(i, -2)); // G' at logical -3/2
    let gpv = at(gp, side.face(i, 1)); // G' at logical +3/2

    // candidate values at the interface
    let cand_l = -2.0 * hm1 + 2.0 * h0 + gm;
    let cand_c = (-hm1 + 5.0 * h0 + 2.0 * hp1) / 6.0;
    let cand_r = (h0 + 5.0 * hp1 - 2.0 * gpv) / 4.0;

    // smoothness indicators, measured on the cell [x_{i-1/2}, x_{i+1/2}]
    let beta = smoothness_indicators(hm1, h0, hp1, gm, gpv);

    let eps = cfg.epsilon;
    let [cl, cc, cr] = cfg.linear_weights;
    let al = cl / ((eps + beta[0]) * (eps + beta[0]));
    let ac = cc / ((eps + beta[1]) * (eps + beta[1]));
    let ar = cr / ((eps + beta[2]) * (eps + beta[2]));
    let asum = al + ac + ar;
    (al * cand_l + ac * cand_c + ar * cand_r) / asum
}

/// Smoothness indicators (beta_l, beta_c, beta_r) of the three candidate
/// polynomials, in the upwind-side local frame. Each equals
/// `b^2 + (13/3) c^2` for the candidate written as `a + b*xi + c*xi^2`,
/// which the closed forms below reproduce exactly; all three vanish on
/// constant data.
#[inline]
fn smoothness_indicators(hm1: f64, h0: f64, hp1: f64, gm: f64, gpv: f64) -> [f64; 3] {
    let bl = {
        let s1 = hm1 - h0;
        let s2 = -3.0 * hm1 + h0 + 2.0 * gm;
        13.0 / 16.0 * s1 * s1 + 3.0 / 16.0 * (s1 - 4.0 * s2) * (s1 - 4.0 * s2)
    };
    let bc = {
        let s1 = hp1 - hm1;
        let s2 = hp1 - 2.0 * h0 + hm1;
        0.25 * s1 * s1 + 13.0 / 12.0 * s2 * s2
    };
    let br = {
        let s1 = hp1 - h0;
        let s2 = -3.0 * hp1 + h0 + 2.0 * gpv;
        13.0 / 16.0 * s1 * s1 + 3.0 / 16.0 * (s1 - 4.0 * s2) * (s1 - 4.0 * s2)
    };
    [bl, bc, br]
}

fn gp_for(h: &[f64]) -> Vec<f64> {
    let mut gp = vec![0.0; h.len()];
    fill_primitive_derivatives(h, &mut gp);
    gp
}

/// `h^-_{i+1/2}`: Hermite linear reconstruction from the left.
pub fn hermite_linear_left(h: &[f64], i: usize) -> f64 {
    hermite_linear_side(h, &gp_for(h), i, Side::Left)
}

/// `h^+_{i+1/2}`: Hermite linear reconstruction from the right (mirror of
/// [`hermite_linear_left`] about the interface).
pub fn hermite_linear_right(h: &[f64], i: usize) -> f64 {
    hermite_linear_side(h, &gp_for(h), i, Side::Right)
}

/// `h^-_{i+1/2}`: Hermite WENO reconstruction from the left.
pub fn hermite_weno_left(h: &[f64], i: usize, cfg: &WenoConfig) -> f64 {
    hermite_weno_side(h, &gp_for(h), i, Side::Left, cfg)
}

/// `h^+_{i+1/2}`: Hermite WENO reconstruction from the right.
pub fn hermite_weno_right(h: &[f64], i: usize, cfg: &WenoConfig) -> f64 {
    hermite_weno_side(h, &gp_for(h), i, Side::Right, cfg)
}

/// WENO weights (omega_l, omega_c, omega_r) at interface i+1/2 from the left;
/// exposed for the weight-range and constant-data invariants.
pub fn weno_weights_left(h: &[f64], i: usize, cfg: &WenoConfig) -> [f64; 3] {
    let gp = gp_for(h);
    let i = i as isize;
    let hm1 = at(h, i - 1);
    let h0 = at(h, i);
    let hp1 = at(h, i + 1);
    let gm = at(&gp, i - 2);
    let gpv = at(&gp, i + 1);
    let beta = smoothness_indicators(hm1, h0, hp1, gm, gpv);
    let eps = cfg.epsilon;
    let a: Vec<f64> = cfg
        .linear_weights
        .iter()
        .zip(beta.iter())
        .map(|(c, b)| c / ((eps + b) * (eps + b)))
        .collect();
    let s = a[0] + a[1] + a[2];
    [a[0] / s, a[1] / s, a[2] / s]
}

/// Smoothness indicators at interface i+1/2 from the left, for the
/// symmetry and oracle tests.
pub fn betas_left(h: &[f64], i: usize) -> [f64; 3] {
    let gp = gp_for(h);
    let i = i as isize;
    smoothness_indicators(
        at(h, i - 1),
        at(h, i),
        at(h, i + 1),
        at(&gp, i - 2),
        at(&gp, i + 1),
    )
}

/// Upwind flux `h_hat_{i+1/2}` from point values and node velocities: the
/// left reconstruction where the interface mean velocity is positive, the
/// right one otherwise (ties included).
pub fn upwind_flux(h: &[f64], u: &[f64], i: usize, scheme: Scheme, cfg: &WenoConfig) -> f64 {
    assert_eq!(h.len(), u.len());
    let gp = gp_for(h);
    upwind_flux_with(h, &gp, u, i, scheme, cfg)
}

/// Upwind flux with a precomputed `G'` line; the sweep entry point.
#[inline]
pub fn upwind_flux_with(
    h: &[f64],
    gp: &[f64],
    u: &[f64],
    i: usize,
    scheme: Scheme,
    cfg: &WenoConfig,
) -> f64 {
    let n = h.len();
    let mean_u = 0.5 * (u[i] + u[pidx(i as isize + 1, n)]);
    let side = if mean_u > 0.0 { Side::Left } else { Side::Right };
    match scheme {
        Scheme::HermiteLinear => hermite_linear_side(h, gp, i, side),
        Scheme::HermiteWeno => hermite_weno_side(h, gp, i, side, cfg),
    }
}

/// Reconstruct the upwind flux at every interface of a periodic line.
pub fn reconstruct_line(
    h: &[f64],
    u: &[f64],
    scheme: Scheme,
    cfg: &WenoConfig,
    gp_scratch: &mut [f64],
    out: &mut [f64],
) {
    let n = h.len();
    assert!(n >= MIN_LINE, "line length {n} below stencil minimum {MIN_LINE}");
    assert_eq!(u.len(), n);
    assert_eq!(gp_scratch.len(), n);
    assert_eq!(out.len(), n);
    fill_primitive_derivatives(h, gp_scratch);
    for i in 0..n {
        out[i] = upwind_flux_with(h, gp_scratch, u, i, scheme, cfg);
    }
}
