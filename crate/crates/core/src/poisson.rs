//! Periodic Poisson solves and spectral differentiation via the FFT.
//!
//! The 1D solver feeds the Vlasov–Poisson electric field; the 2D solver
//! supplies the stream potential of the guiding-center and vorticity models.
//! Sources have their mean removed before the solve (the zero mode has no
//! periodic solution; for Vlasov–Poisson this is the neutralizing ion
//! background), and the solved potential has its zero mode pinned to zero.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::grid::{Grid2D, ScalarField};

/// Differentiation / transform axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Forward/inverse transform pair with the folded wavenumbers
/// `k_m = 2*pi*fold(m)/L`, `fold(m) = m` for `m <= n/2`, `m - n` above.
pub struct SpectralPlan1D {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    k: Vec<f64>,
}

impl SpectralPlan1D {
    pub fn new(n: usize, length: f64) -> Self {
        assert!(n >= 2 && length > 0.0);
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let k = (0..n)
            .map(|m| {
                let f = if m <= n / 2 {
                    m as f64
                } else {
                    m as f64 - n as f64
                };
                2.0 * std::f64::consts::PI * f / length
            })
            .collect();
        Self { n, fwd, inv, k }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    fn forward(&self, line: &[f64]) -> Vec<Complex64> {
        assert_eq!(line.len(), self.n);
        let mut buf: Vec<Complex64> = line.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.fwd.process(&mut buf);
        buf
    }

    fn inverse_real(&self, mut buf: Vec<Complex64>) -> Vec<f64> {
        self.inv.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        buf.iter().map(|c| c.re * scale).collect()
    }

    /// Solve `-phi'' = rho - mean(rho)` on the periodic line; the returned
    /// potential has zero mean.
    pub fn solve_poisson(&self, rho: &[f64]) -> Vec<f64> {
        let mut hat = self.forward(rho);
        hat[0] = Complex64::new(0.0, 0.0); // remove mean / pin zero mode
        for (m, h) in hat.iter_mut().enumerate().skip(1) {
            let k2 = self.k[m] * self.k[m];
            *h /= k2;
        }
        self.inverse_real(hat)
    }

    /// Derivative of the trigonometric interpolant; the Nyquist mode is
    /// zeroed for even `n` (real-signal convention).
    pub fn derivative(&self, f: &[f64]) -> Vec<f64> {
        let mut hat = self.forward(f);
        for (m, h) in hat.iter_mut().enumerate() {
            *h *= Complex64::new(0.0, self.k[m]);
        }
        if self.n % 2 == 0 {
            hat[self.n / 2] = Complex64::new(0.0, 0.0);
        }
        self.inverse_real(hat)
    }
}

/// Electric field `E = -phi'` on a periodic line; zero mean by construction.
pub fn electric_field(plan: &SpectralPlan1D, phi: &[f64]) -> Vec<f64> {
    let mut e = plan.derivative(phi);
    for v in &mut e {
        *v = -*v;
    }
    e
}

/// Transform plans for a full periodic 2D grid.
pub struct SpectralPlan2D {
    nx: usize,
    ny: usize,
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
    fwd_y: Arc<dyn Fft<f64>>,
    inv_y: Arc<dyn Fft<f64>>,
    kx: Vec<f64>,
    ky: Vec<f64>,
}

fn wavenumbers(n: usize, length: f64) -> Vec<f64> {
    (0..n)
        .map(|m| {
            let f = if m <= n / 2 {
                m as f64
            } else {
                m as f64 - n as f64
            };
            2.0 * std::f64::consts::PI * f / length
        })
        .collect()
}

impl SpectralPlan2D {
    pub fn new(grid: &Grid2D) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            nx: grid.nx,
            ny: grid.ny,
            fwd_x: planner.plan_fft_forward(grid.nx),
            inv_x: planner.plan_fft_inverse(grid.nx),
            fwd_y: planner.plan_fft_forward(grid.ny),
            inv_y: planner.plan_fft_inverse(grid.ny),
            kx: wavenumbers(grid.nx, grid.length_x()),
            ky: wavenumbers(grid.ny, grid.length_y()),
        }
    }

    /// Full 2D forward transform (rows then columns), unnormalized.
    fn forward2d(&self, field: &ScalarField) -> Vec<Complex64> {
        let (nx, ny) = (self.nx, self.ny);
        let mut buf: Vec<Complex64> = field
            .values()
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        for j in 0..ny {
            self.fwd_x.process(&mut buf[j * nx..(j + 1) * nx]);
        }
        let mut col = vec![Complex64::new(0.0, 0.0); ny];
        for i in 0..nx {
            for j in 0..ny {
                col[j] = buf[j * nx + i];
            }
            self.fwd_y.process(&mut col);
            for j in 0..ny {
                buf[j * nx + i] = col[j];
            }
        }
        buf
    }

    /// Inverse of [`Self::forward2d`] including the 1/(nx*ny) normalization;
    /// returns the real part on the grid.
    fn inverse2d(&self, mut buf: Vec<Complex64>, grid: Grid2D) -> ScalarField {
        let (nx, ny) = (self.nx, self.ny);
        let mut col = vec![Complex64::new(0.0, 0.0); ny];
        for i in 0..nx {
            for j in 0..ny {
                col[j] = buf[j * nx + i];
            }
            self.inv_y.process(&mut col);
            for j in 0..ny {
                buf[j * nx + i] = col[j];
            }
        }
        for j in 0..ny {
            self.inv_x.process(&mut buf[j * nx..(j + 1) * nx]);
        }
        let scale = 1.0 / (nx * ny) as f64;
        ScalarField::from_values(grid, buf.iter().map(|c| c.re * scale).collect())
    }

    /// Solve `-laplace(phi) = rho - mean(rho)` on the periodic grid; the
    /// result has zero mean.
    pub fn solve_poisson(&self, rho: &ScalarField) -> ScalarField {
        let mut hat = self.forward2d(rho);
        self.divide_by_k2(&mut hat);
        self.inverse2d(hat, *rho.grid())
    }

    fn divide_by_k2(&self, hat: &mut [Complex64]) {
        for j in 0..self.ny {
            let ky2 = self.ky[j] * self.ky[j];
            for i in 0..self.nx {
                let k2 = self.kx[i] * self.kx[i] + ky2;
                let idx = j * self.nx + i;
                if k2 == 0.0 {
                    hat[idx] = Complex64::new(0.0, 0.0);
                } else {
                    hat[idx] /= k2;
                }
            }
        }
    }

    /// Spectral derivative of the trigonometric interpolant along `axis`.
    pub fn derivative(&self, field: &ScalarField, axis: Axis) -> ScalarField {
        let grid = *field.grid();
        match axis {
            Axis::X => {
                let plan = SpectralPlan1D {
                    n: self.nx,
                    fwd: self.fwd_x.clone(),
                    inv: self.inv_x.clone(),
                    k: self.kx.clone(),
                };
                let mut out = ScalarField::constant(grid, 0.0);
                for j in 0..self.ny {
                    let d = plan.derivative(field.row(j));
                    out.row_mut(j).copy_from_slice(&d);
                }
                out
            }
            Axis::Y => {
                let plan = SpectralPlan1D {
                    n: self.ny,
                    fwd: self.fwd_y.clone(),
                    inv: self.inv_y.clone(),
                    k: self.ky.clone(),
                };
                let mut out = ScalarField::constant(grid, 0.0);
                let mut col = vec![0.0; self.ny];
                for i in 0..self.nx {
                    field.fill_column(i, &mut col);
                    let d = plan.derivative(&col);
                    out.store_column(i, &d);
                }
                out
            }
        }
    }

    /// Solve the Poisson problem and return `(phi, phi_x, phi_y)` from one
    /// forward transform; agrees with `solve_poisson` + `derivative` to
    /// rounding. The gradient components zero their Nyquist modes like
    /// [`SpectralPlan1D::derivative`].
    pub fn solve_poisson_gradient(
        &self,
        rho: &ScalarField,
    ) -> (ScalarField, ScalarField, ScalarField) {
        let grid = *rho.grid();
        let mut hat = self.forward2d(rho);
        self.divide_by_k2(&mut hat);

        let (nx, ny) = (self.nx, self.ny);
        let mut hat_x = vec![Complex64::new(0.0, 0.0); nx * ny];
        let mut hat_y = vec![Complex64::new(0.0, 0.0); nx * ny];
        for j in 0..ny {
            let iky = Complex64::new(0.0, if ny % 2 == 0 && j == ny / 2 { 0.0 } else { self.ky[j] });
            for i in 0..nx {
                let ikx =
                    Complex64::new(0.0, if nx % 2 == 0 && i == nx / 2 { 0.0 } else { self.kx[i] });
                let idx = j * nx + i;
                hat_x[idx] = hat[idx] * ikx;
                hat_y[idx] = hat[idx] * iky;
            }
        }
        let phi = self.inverse2d(hat, grid);
        let phi_x = self.inverse2d(hat_x, grid);
        let phi_y = self.inverse2d(hat_y, grid);
        (phi, phi_x, phi_y)
    }

    /// `-laplace(field)` through the transform; the residual-check oracle.
    pub fn neg_laplacian(&self, field: &ScalarField) -> ScalarField {
        let grid = *field.grid();
        let mut hat = self.forward2d(field);
        for j in 0..self.ny {
            let ky2 = self.ky[j] * self.ky[j];
            for i in 0..self.nx {
                hat[j * self.nx + i] *= self.kx[i] * self.kx[i] + ky2;
            }
        }
        self.inverse2d(hat, grid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn roundtrip_identity_1d() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [8usize, 12, 32, 45] {
            let plan = SpectralPlan1D::new(n, 2.0 * PI);
            let line: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let back = plan.inverse_real(plan.forward(&line));
            assert!(max_abs_diff(&line, &back) < 1e-12);
        }
    }

    #[test]
    fn poisson_1d_cosine() {
        // -phi'' = cos(x) on [0, 2pi] -> phi = cos(x)
        let n = 32;
        let plan = SpectralPlan1D::new(n, 2.0 * PI);
        let rho: Vec<f64> = (0..n).map(|i| (2.0 * PI * i as f64 / n as f64).cos()).collect();
        let phi = plan.solve_poisson(&rho);
        assert!(max_abs_diff(&phi, &rho) < 1e-13);
    }

    #[test]
    fn poisson_1d_constant_source() {
        let n = 16;
        let plan = SpectralPlan1D::new(n, 2.0 * PI);
        let phi = plan.solve_poisson(&vec![4.2; n]);
        assert!(phi.iter().all(|v| v.abs() < 1e-13));
    }

    #[test]
    fn poisson_1d_strong_landau_charge() {
        // rho = 1 + 0.5 cos(x/2) on [0, 4pi] -> phi = 2 cos(x/2),
        // E = -phi' = sin(x/2); the analytic strong-Landau initial field
        let n = 64;
        let length = 4.0 * PI;
        let plan = SpectralPlan1D::new(n, length);
        let x = |i: usize| length * i as f64 / n as f64;
        let rho: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * (0.5 * x(i)).cos()).collect();
        let phi = plan.solve_poisson(&rho);
        let expect: Vec<f64> = (0..n).map(|i| 2.0 * (0.5 * x(i)).cos()).collect();
        assert!(max_abs_diff(&phi, &expect) < 1e-12);

        let e = electric_field(&plan, &phi);
        let e_expect: Vec<f64> = (0..n).map(|i| (0.5 * x(i)).sin()).collect();
        assert!(max_abs_diff(&e, &e_expect) < 1e-12);
        let emax = e.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!((emax - 1.0).abs() < 1e-12);
    }

    #[test]
    fn electric_field_trivial_lines() {
        let n = 32;
        let plan = SpectralPlan1D::new(n, 2.0 * PI);
        let phi: Vec<f64> = (0..n).map(|i| (2.0 * PI * i as f64 / n as f64).cos()).collect();
        let e = electric_field(&plan, &phi);
        let expect: Vec<f64> = (0..n).map(|i| (2.0 * PI * i as f64 / n as f64).sin()).collect();
        assert!(max_abs_diff(&e, &expect) < 1e-12);

        let zero = electric_field(&plan, &vec![0.0; n]);
        assert!(zero.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn derivative_1d_resolved_mode() {
        // d/dx sin(7x) = 7 cos(7x) exactly on a 32-point grid
        let n = 32;
        let plan = SpectralPlan1D::new(n, 2.0 * PI);
        let f: Vec<f64> = (0..n).map(|i| (7.0 * 2.0 * PI * i as f64 / n as f64).sin()).collect();
        let d = plan.derivative(&f);
        let expect: Vec<f64> =
            (0..n).map(|i| 7.0 * (7.0 * 2.0 * PI * i as f64 / n as f64).cos()).collect();
        assert!(max_abs_diff(&d, &expect) < 1e-11);
    }

    #[test]
    fn poisson_2d_product_mode() {
        // -laplace(sin x sin y) = 2 sin x sin y
        let g = Grid2D::new(0.0, 2.0 * PI, 0.0, 2.0 * PI, 32, 32).unwrap();
        let plan = SpectralPlan2D::new(&g);
        let rho = ScalarField::sample(g, |x, y| 2.0 * x.sin() * y.sin()).unwrap();
        let phi = plan.solve_poisson(&rho);
        let expect = ScalarField::sample(g, |x, y| x.sin() * y.sin()).unwrap();
        assert!(max_abs_diff(phi.values(), expect.values()) < 1e-12);
    }

    #[test]
    fn poisson_2d_kelvin_helmholtz_mode() {
        // rho = sin(y) + 0.015 cos(x/2) on [0,4pi]x[0,2pi]
        //   -> phi = sin(y) + 0.06 cos(x/2)
        let g = Grid2D::new(0.0, 4.0 * PI, 0.0, 2.0 * PI, 64, 32).unwrap();
        let plan = SpectralPlan2D::new(&g);
        let rho = ScalarField::sample(g, |x, y| y.sin() + 0.015 * (0.5 * x).cos()).unwrap();
        let phi = plan.solve_poisson(&rho);
        let expect = ScalarField::sample(g, |x, y| y.sin() + 0.06 * (0.5 * x).cos()).unwrap();
        assert!(max_abs_diff(phi.values(), expect.values()) < 1e-12);
    }

    #[test]
    fn poisson_2d_zero_source() {
        let g = Grid2D::new(0.0, 2.0 * PI, 0.0, 2.0 * PI, 16, 16).unwrap();
        let plan = SpectralPlan2D::new(&g);
        let phi = plan.solve_poisson(&ScalarField::constant(g, 0.0));
        assert!(phi.values().iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn derivative_2d_axes() {
        let g = Grid2D::new(0.0, 2.0 * PI, 0.0, 2.0 * PI, 32, 24).unwrap();
        let plan = SpectralPlan2D::new(&g);
        let f = ScalarField::sample(g, |x, _| x.sin()).unwrap();
        let dx = plan.derivative(&f, Axis::X);
        let expect = ScalarField::sample(g, |x, _| x.cos()).unwrap();
        assert!(max_abs_diff(dx.values(), expect.values()) < 1e-12);
        // y-derivative of an x-only field vanishes
        let dy = plan.derivative(&f, Axis::Y);
        assert!(dy.values().iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn residual_and_linearity_random_sources() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let g = Grid2D::new(0.0, 2.0 * PI, 0.0, 4.0, 24, 16).unwrap();
        let plan = SpectralPlan2D::new(&g);
        for _ in 0..5 {
            let raw: Vec<f64> = (0..g.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mean = raw.iter().sum::<f64>() / raw.len() as f64;
            let src: Vec<f64> = raw.iter().map(|v| v - mean).collect();
            let rho = ScalarField::from_values(g, src.clone());
            let phi = plan.solve_poisson(&rho);
            // mean of the potential is pinned to the zero mode
            let pmean = phi.values().iter().sum::<f64>() / phi.values().len() as f64;
            assert!(pmean.abs() < 1e-13);
            // residual: -laplace(phi) reproduces the zero-mean source
            let res = plan.neg_laplacian(&phi);
            let scale = src.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(max_abs_diff(res.values(), &src) <= 1e-10 * scale.max(1.0));

            // linearity
            let raw2: Vec<f64> = (0..g.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let rho2 = ScalarField::from_values(g, raw2.clone());
            let phi2 = plan.solve_poisson(&rho2);
            let combo = ScalarField::from_values(
                g,
                rho.values()
                    .iter()
                    .zip(rho2.values())
                    .map(|(a, b)| 2.0 * a - 3.0 * b)
                    .collect(),
            );
            let phi_combo = plan.solve_poisson(&combo);
            let manual: Vec<f64> = phi
                .values()
                .iter()
                .zip(phi2.values())
                .map(|(a, b)| 2.0 * a - 3.0 * b)
                .collect();
            assert!(max_abs_diff(phi_combo.values(), &manual) < 1e-11);
        }
    }

    #[test]
    fn gradient_path_matches_composed_ops() {
        let g = Grid2D::new(0.0, 4.0 * PI, 0.0, 2.0 * PI, 48, 20).unwrap();
        let plan = SpectralPlan2D::new(&g);
        let rho = ScalarField::sample(g, |x, y| {
            y.sin() + 0.015 * (0.5 * x).cos() + 0.1 * (x - 2.0 * y).sin()
        })
        .unwrap();
        let (phi, phi_x, phi_y) = plan.solve_poisson_gradient(&rho);
        let phi_ref = plan.solve_poisson(&rho);
        let phi_x_ref = plan.derivative(&phi_ref, Axis::X);
        let phi_y_ref = plan.derivative(&phi_ref, Axis::Y);
        assert!(max_abs_diff(phi.values(), phi_ref.values()) < 1e-12);
        assert!(max_abs_diff(phi_x.values(), phi_x_ref.values()) < 1e-12);
        assert!(max_abs_diff(phi_y.values(), phi_y_ref.values()) < 1e-12);
    }
}
