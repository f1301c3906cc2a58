//! Integrals over curves, the unit circle, and radii, each with an error estimate.

pub(crate) mod adaptive;
mod contour;
mod periodic;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

pub use contour::{contour_integral, contour_integrate, ModulusPower, PointIntegrand};
pub use periodic::{boundary_integral, periodic_integral};

/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Default evaluation budget per integral.
pub const DEFAULT_BUDGET: usize = 1_000_000;
/// Grid size of the coarse search in [`circle_max`].
pub const CIRCLE_MAX_GRID: usize = 512;
/// Grid maxima within this fraction of the best are refined.
pub const CIRCLE_MAX_REFINE: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    pub fn exact(value: f64) -> Self {
        QuadratureResult { value, error_estimate: 0.0, evaluations: 1, converged: true }
    }

    /// Converts a non-converged result into a numerical-failure error.
    pub fn require_converged(self, what: &str) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(LabError::NumericalFailure {
                message: format!("{what} did not converge after {} evaluations", self.evaluations),
                error_estimate: self.error_estimate,
            })
        }
    }
}

/// Accuracy request: `error_estimate ≤ tol·(1 + |value|)` within `budget` evaluations.
/// Refinement aims for the relative target `tol·|value|` first.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadOptions {
    pub tol: f64,
    pub budget: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { tol: DEFAULT_TOL, budget: DEFAULT_BUDGET }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        QuadOptions { tol, ..Default::default() }
    }

    /// Refinement target. Purely relative, so that results for `f` and `λf` take the
    /// same refinement path and scale exactly.
    pub(crate) fn refined(&self, err: f64, value: f64) -> bool {
        err <= self.tol * value.abs()
    }

    /// The accuracy contract `err ≤ tol·(1 + |value|)`, used once refinement has stopped.
    pub(crate) fn acceptable(&self, err: f64, value: f64) -> bool {
        err <= self.tol * (1.0 + value.abs())
    }
}

/// `∫₀¹ g(r) dr` by adaptive Gauss–Kronrod.
pub fn radial_integral(g: impl Fn(f64) -> f64 + Sync, opts: &QuadOptions) -> Result<QuadratureResult> {
    let pieces = [adaptive::Piece::new(0.0, 1.0, g)];
    let r = adaptive::integrate(&pieces, opts);
    if !r.value.is_finite() {
        return Err(LabError::NumericalFailure {
            message: "radial integrand is not finite on [0, 1]".into(),
            error_estimate: f64::INFINITY,
        });
    }
    Ok(r)
}

/// `max_θ |f(re^{iθ})|^p`.
///
/// A 512-point grid brackets every local maximum of a trigonometric modulus of degree up
/// to 64 (Bernstein's inequality bounds its derivative by 64·max, so a maximum cannot sit
/// more than half a grid step from a grid node that is within about 0.2% of it). Grid
/// maxima within 10⁻³ of the best are then polished by golden-section search to `tol`
/// in angle. The result is a lower bound of the true maximum.
pub fn circle_max(
    f: impl Fn(num_complex::Complex64) -> num_complex::Complex64,
    r: f64,
    p: f64,
    tol: f64,
) -> f64 {
    use num_complex::Complex64;
    use std::f64::consts::PI;
    if r == 0.0 {
        return f(Complex64::new(0.0, 0.0)).norm().powf(p);
    }
    let g = |t: f64| f(Complex64::from_polar(r, t)).norm();
    let n = CIRCLE_MAX_GRID;
    let h = 2.0 * PI / n as f64;
    let vals: Vec<f64> = (0..n).map(|j| g(j as f64 * h)).collect();
    let (best_j, best) =
        vals.iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (j, v)| if v > acc.1 { (j, v) } else { acc });
    let mut out = best;
    for j in 0..n {
        let v = vals[j];
        let prev = vals[(j + n - 1) % n];
        let next = vals[(j + 1) % n];
        let peak = v >= prev && v >= next && (v > prev || v > next);
        if j == best_j || (peak && v >= best * (1.0 - CIRCLE_MAX_REFINE)) {
            out = out.max(golden_max(&g, (j as f64 - 1.0) * h, (j as f64 + 1.0) * h, tol));
        }
    }
    out.powf(p)
}

fn golden_max(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    let tol = tol.max(1e-13);
    while (b - a).abs() > tol {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
    }
    gc.max(gd).max(g(0.5 * (a + b)))
}

/// Composite Simpson with one Richardson step, for validating the adaptive engines in
/// tests. `n` is the node count of the coarse rule (rounded up to an odd number ≥ 9).
pub fn oracle_integral(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let mut m = n.max(9) - 1;
    if m % 2 == 1 {
        m += 1;
    }
    let simpson = |m: usize| {
        let h = (b - a) / m as f64;
        let inner: f64 = (1..m).map(|i| if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h)).sum();
        h / 3.0 * (f(a) + inner + f(b))
    };
    let coarse = simpson(m);
    let fine = simpson(2 * m);
    (16.0 * fine - coarse) / 15.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn oracle_examples() {
        assert!((oracle_integral(|_| 1.0, 0.0, 2.0 * PI, 9) - 2.0 * PI).abs() < 1e-14);
        assert_eq!(oracle_integral(|x| x * x * x, 0.0, 1.0, 9), 0.25);
        let v = oracle_integral(|t: f64| (2.0 * t.cos()).powi(2), 0.0, 2.0 * PI, 201);
        assert!((v - 4.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn radial_examples() {
        let o = QuadOptions::default();
        assert!((radial_integral(|_| 3.5, &o).unwrap().value - 3.5).abs() < 1e-14);
        assert!((radial_integral(|r| r * r, &o).unwrap().value - 1.0 / 3.0).abs() < 1e-14);
        let g = |r: f64| circle_max(|z| z, r, 2.0, 1e-12);
        assert!((radial_integral(g, &o).unwrap().value - 1.0 / 3.0).abs() < 1e-10);
        assert!(
            radial_integral(|r| 1.0 / (1.0 - r), &o).is_err()
                || !radial_integral(|r| 1.0 / (1.0 - r), &o).unwrap().converged
        );
    }

    #[test]
    fn circle_max_examples() {
        let c = Complex64::new(0.6, -0.8);
        assert!((circle_max(|_| c, 0.5, 3.0, 1e-12) - 1.0).abs() < 1e-14);
        assert!((circle_max(|z| z * z * z, 0.7, 1.5, 1e-12) - 0.7f64.powf(4.5)).abs() < 1e-13);
        let v = circle_max(|z| z + z.conj(), 1.0, 2.0, 1e-12);
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn circle_max_finds_off_grid_peak() {
        // single sharp peak between grid nodes
        let t0 = 0.123_456_7;
        let w = Complex64::from_polar(0.97, -t0);
        let f = |z: Complex64| Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - w * z);
        let v = circle_max(f, 1.0, 1.0, 1e-12);
        assert!((v - 1.0 / 0.03).abs() < 1e-8);
    }
}
