//! Conserved-quantity tracking, electric-field norms, extrema and
//! convergence-order computation.
//!
//! All reductions use compensated summation in a fixed order, so diagnostic
//! values are deterministic and the conservation checks are not polluted by
//! summation rounding.

use crate::grid::ScalarField;

/// Compensated (Kahan) accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    #[inline]
    pub fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

fn ksum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = KahanSum::default();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Discrete L^p norm `(dx dy sum |f|^p)^(1/p)` for p in {1, 2}.
pub fn lp_norm(field: &ScalarField, p: u32) -> f64 {
    let area = field.grid().cell_area();
    match p {
        1 => area * ksum(field.values().iter().map(|v| v.abs())),
        2 => (area * ksum(field.values().iter().map(|v| v * v))).sqrt(),
        _ => panic!("lp_norm supports p in {{1, 2}}, got {p}"),
    }
}

/// Max-norm of the nodal values.
pub fn linf_norm(field: &ScalarField) -> f64 {
    field.values().iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Signed mass `dx dy sum f`.
pub fn mass(field: &ScalarField) -> f64 {
    field.grid().cell_area() * ksum(field.values().iter().copied())
}

/// Kinetic part of the Vlasov–Poisson energy, `dx dv sum f v^2`; the second
/// grid direction is velocity.
pub fn vp_kinetic_energy(f: &ScalarField) -> f64 {
    let g = f.grid();
    let mut acc = KahanSum::default();
    for j in 0..g.ny {
        let v2 = g.y(j) * g.y(j);
        for &fv in f.row(j) {
            acc.add(fv * v2);
        }
    }
    g.cell_area() * acc.value()
}

/// Electric part of the energy, `dx sum E^2`.
pub fn field_energy(e: &[f64], dx: f64) -> f64 {
    dx * ksum(e.iter().map(|v| v * v))
}

/// Total Vlasov–Poisson energy: kinetic plus electric.
pub fn vp_energy(f: &ScalarField, e: &[f64]) -> f64 {
    vp_kinetic_energy(f) + field_energy(e, f.grid().dx)
}

/// Entropy `dx dv sum s(f)` with `s(f) = f ln f` for positive `f` and 0
/// otherwise, so unlimited runs with negative values stay finite.
pub fn vp_entropy(f: &ScalarField) -> f64 {
    let s = ksum(
        f.values()
            .iter()
            .map(|&v| if v > 0.0 { v * v.ln() } else { 0.0 }),
    );
    f.grid().cell_area() * s
}

/// `(sqrt(dx sum E^2), max |E|)`.
pub fn efield_norms(e: &[f64], dx: f64) -> (f64, f64) {
    let l2 = field_energy(e, dx).sqrt();
    let linf = e.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (l2, linf)
}

/// Orders `log2(e_k / e_{k+1})` between successive errors from doubled
/// meshes; `None` where either error is not positive (order undefined) and
/// for the first entry.
pub fn convergence_orders(errors: &[f64]) -> Vec<Option<f64>> {
    let mut orders = vec![None; errors.len()];
    for k in 1..errors.len() {
        if errors[k - 1] > 0.0 && errors[k] > 0.0 {
            orders[k] = Some((errors[k - 1] / errors[k]).log2());
        }
    }
    orders
}

/// One diagnostics row. Optional entries are model-dependent (electric-field
/// and energy/entropy columns apply to Vlasov–Poisson only) or step-dependent
/// (`dt` and `theta_min` are absent on the initial row).
#[derive(Clone, Debug)]
pub struct DiagnosticsRecord {
    pub step: u64,
    pub time: f64,
    pub dt: Option<f64>,
    pub l1_rel: f64,
    pub l2_rel: f64,
    pub mass_rel: f64,
    pub energy_rel: Option<f64>,
    pub kinetic_rel: Option<f64>,
    pub entropy_rel: Option<f64>,
    pub efield_l2: Option<f64>,
    pub efield_linf: Option<f64>,
    pub min: f64,
    pub max: f64,
    pub theta_min: Option<f64>,
}

/// Caches the t = 0 values of the tracked quantities and produces relative
/// deviations `(Q(t) - Q(0)) / |Q(0)|` against them.
pub struct Tracker {
    vlasov: bool,
    l1_0: f64,
    l2_0: f64,
    mass_0: f64,
    energy_0: f64,
    kinetic_0: f64,
    entropy_0: f64,
}

fn rel(q: f64, q0: f64) -> f64 {
    if q0.abs() > 0.0 {
        (q - q0) / q0.abs()
    } else {
        q - q0
    }
}

impl Tracker {
    /// `efield` must be supplied exactly when the run is Vlasov–Poisson.
    pub fn new(initial: &ScalarField, efield: Option<&[f64]>) -> Self {
        let vlasov = efield.is_some();
        let (energy_0, kinetic_0, entropy_0) = if let Some(e) = efield {
            (
                vp_energy(initial, e),
                vp_kinetic_energy(initial),
                vp_entropy(initial),
            )
        } else {
            (0.0, 0.0, 0.0)
        };
        Self {
            vlasov,
            l1_0: lp_norm(initial, 1),
            l2_0: lp_norm(initial, 2),
            mass_0: mass(initial),
            energy_0,
            kinetic_0,
            entropy_0,
        }
    }

    pub fn record(
        &self,
        step: u64,
        time: f64,
        dt: Option<f64>,
        field: &ScalarField,
        efield: Option<&[f64]>,
        theta_min: Option<f64>,
    ) -> DiagnosticsRecord {
        let (energy_rel, kinetic_rel, entropy_rel, efield_l2, efield_linf) =
            if let (true, Some(e)) = (self.vlasov, efield) {
                let (el2, elinf) = efield_norms(e, field.grid().dx);
                (
                    Some(rel(vp_energy(field, e), self.energy_0)),
                    Some(rel(vp_kinetic_energy(field), self.kinetic_0)),
                    Some(rel(vp_entropy(field), self.entropy_0)),
                    Some(el2),
                    Some(elinf),
                )
            } else {
                (None, None, None, None, None)
            };
        DiagnosticsRecord {
            step,
            time,
            dt,
            l1_rel: rel(lp_norm(field, 1), self.l1_0),
            l2_rel: rel(lp_norm(field, 2), self.l2_0),
            mass_rel: rel(mass(field), self.mass_0),
            energy_rel,
            kinetic_rel,
            entropy_rel,
            efield_l2,
            efield_linf,
            min: field.min_value(),
            max: field.max_value(),
            theta_min,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid2D;
    use std::f64::consts::PI;

    #[test]
    fn lp_norms_of_simple_fields() {
        let g = Grid2D::new(0.0, 2.0, 0.0, 3.0, 16, 16).unwrap();
        let ones = ScalarField::constant(g, 1.0);
        // area 6: L1 = 6, L2 = sqrt(6)
        assert!((lp_norm(&ones, 1) - 6.0).abs() < 1e-13);
        assert!((lp_norm(&ones, 2) - 6.0f64.sqrt()).abs() < 1e-13);

        // sin(x) on [0,2pi]^2: L2 = sqrt(2 pi^2); the periodic nodal sum of
        // sin^2 is exact
        let g = Grid2D::new(0.0, 2.0 * PI, 0.0, 2.0 * PI, 32, 32).unwrap();
        let s = ScalarField::sample(g, |x, _| x.sin()).unwrap();
        assert!((lp_norm(&s, 2) - (2.0 * PI * PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn vp_energy_examples() {
        // f == 0, E = sin(x) on [0, 2pi]: energy = integral sin^2 = pi
        let g = Grid2D::new(0.0, 2.0 * PI, -1.0, 1.0, 32, 8).unwrap();
        let zero = ScalarField::constant(g, 0.0);
        let e: Vec<f64> = (0..32).map(|i| g.x(i).sin()).collect();
        assert!((vp_energy(&zero, &e) - PI).abs() < 1e-12);

        // uniform Maxwellian, E == 0: kinetic = L_x * (second moment ~ 1)
        let g = Grid2D::new(0.0, 2.0 * PI, -2.0 * PI, 2.0 * PI, 16, 256).unwrap();
        let c = 1.0 / (2.0 * PI).sqrt();
        let f = ScalarField::sample(g, |_, v| c * (-0.5 * v * v).exp()).unwrap();
        let kin = vp_kinetic_energy(&f);
        assert!(
            (kin - 2.0 * PI).abs() < 1e-6,
            "kinetic {kin} vs {}",
            2.0 * PI
        );
        // doubling f doubles the kinetic term
        let f2 = ScalarField::from_values(g, f.values().iter().map(|v| 2.0 * v).collect());
        assert!((vp_kinetic_energy(&f2) - 2.0 * kin).abs() < 1e-10);
    }

    #[test]
    fn entropy_convention() {
        let g = Grid2D::new(0.0, 1.0, 0.0, 1.0, 8, 8).unwrap();
        // f == 1 -> 0
        assert_eq!(vp_entropy(&ScalarField::constant(g, 1.0)), 0.0);
        // f == e on unit area -> e
        let e = std::f64::consts::E;
        assert!((vp_entropy(&ScalarField::constant(g, e)) - e).abs() < 1e-12);
        // negatives contribute zero, no NaN
        let mut vals = vec![0.5; g.len()];
        vals[3] = -2.0;
        vals[9] = 0.0;
        let f = ScalarField::from_values(g, vals);
        assert!(vp_entropy(&f).is_finite());
    }

    #[test]
    fn efield_norm_examples() {
        // E = sin(x/2) on [0, 4pi]: L2 = sqrt(2 pi), Linf = 1
        let n = 64;
        let dx = 4.0 * PI / n as f64;
        let e: Vec<f64> = (0..n).map(|i| (0.5 * i as f64 * dx).sin()).collect();
        let (l2, linf) = efield_norms(&e, dx);
        assert!((l2 - (2.0 * PI).sqrt()).abs() < 1e-12);
        assert!((linf - 1.0).abs() < 1e-12);

        let zero = vec![0.0; n];
        assert_eq!(efield_norms(&zero, dx), (0.0, 0.0));

        let c = vec![-0.3; n];
        let (l2, linf) = efield_norms(&c, dx);
        assert!((l2 - 0.3 * (4.0 * PI).sqrt()).abs() < 1e-12);
        assert!((linf - 0.3).abs() < 1e-15);
    }

    #[test]
    fn convergence_order_values() {
        // paper-table pairs frozen as oracles
        let o = convergence_orders(&[5.00e-4, 1.90e-5]);
        assert!((o[1].unwrap() - 4.72).abs() < 0.01);
        let o = convergence_orders(&[8.86e-7, 2.93e-8]);
        assert!((o[1].unwrap() - 4.92).abs() < 0.01);
        // exact halving chain
        let o = convergence_orders(&[1.0, 1.0 / 32.0]);
        assert!((o[1].unwrap() - 5.0).abs() < 1e-13);
        // degenerate errors yield undefined orders
        let o = convergence_orders(&[0.0, 1.0, -2.0]);
        assert_eq!(o, vec![None, None, None]);
    }

    #[test]
    fn tracker_relative_deviations() {
        let g = Grid2D::new(0.0, 2.0 * PI, 0.0, 2.0 * PI, 16, 16).unwrap();
        let f = ScalarField::sample(g, |x, y| 1.0 + 0.2 * (x + y).sin()).unwrap();
        let tr = Tracker::new(&f, None);
        let r = tr.record(0, 0.0, None, &f, None, None);
        assert_eq!(r.l1_rel, 0.0);
        assert_eq!(r.mass_rel, 0.0);
        assert!(r.energy_rel.is_none() && r.efield_l2.is_none());

        let doubled = ScalarField::from_values(g, f.values().iter().map(|v| 2.0 * v).collect());
        let r = tr.record(1, 0.1, Some(0.1), &doubled, None, Some(1.0));
        assert!((r.mass_rel - 1.0).abs() < 1e-12);
    }
}
