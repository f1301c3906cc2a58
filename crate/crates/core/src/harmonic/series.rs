use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

/// Tolerance used when checking that a series represents a real-valued function.
pub const REAL_VALUED_TOL: f64 = 1e-10;
/// Radius of the sampling circle for the real-valuedness check.
const REAL_CHECK_RADIUS: f64 = 0.7;
const REAL_CHECK_POINTS: usize = 64;

/// Truncated coefficient form of a harmonic function `f = h + conj(g)` on the unit disk,
/// with `h(z) = Σ a_k z^k` and `g(z) = Σ b_k z^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct HarmonicSeries {
    a: Vec<Complex64>,
    #[serde(default)]
    b: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawSeries {
    #[serde(default)]
    a: Vec<Complex64>,
    #[serde(default)]
    b: Vec<Complex64>,
}

impl TryFrom<RawSeries> for HarmonicSeries {
    type Error = LabError;

    fn try_from(raw: RawSeries) -> Result<Self> {
        HarmonicSeries::new(raw.a, raw.b)
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

impl HarmonicSeries {
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        if a.iter().chain(b.iter()).any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(LabError::domain("harmonic series coefficients must be finite"));
        }
        Ok(HarmonicSeries { a, b })
    }

    /// Analytic polynomial `h` with `g = 0`.
    pub fn analytic(a: Vec<Complex64>) -> Result<Self> {
        Self::new(a, Vec::new())
    }

    /// Builds a series from real coefficient lists, convenient for tests and examples.
    pub fn from_real(a: &[f64], b: &[f64]) -> Self {
        HarmonicSeries {
            a: a.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            b: b.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        HarmonicSeries { a: vec![c], b: Vec::new() }
    }

    pub fn analytic_coeffs(&self) -> &[Complex64] {
        &self.a
    }

    pub fn coanalytic_coeffs(&self) -> &[Complex64] {
        &self.b
    }

    pub fn degree(&self) -> usize {
        self.a.len().max(self.b.len()).saturating_sub(1)
    }

    /// `b[0] = 0` (or `g` absent).
    pub fn is_normalized(&self) -> bool {
        self.b.first().is_none_or(|c| *c == Complex64::new(0.0, 0.0))
    }

    pub fn is_analytic(&self) -> bool {
        self.b.iter().all(|c| c.norm_sqr() == 0.0)
    }

    /// Evaluates `h(z) + conj(g(z))` by Horner's scheme.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_h(z) + self.eval_g(z).conj()
    }

    pub fn eval_h(&self, z: Complex64) -> Complex64 {
        horner(&self.a, z)
    }

    pub fn eval_g(&self, z: Complex64) -> Complex64 {
        horner(&self.b, z)
    }

    /// Moves the constant of `g` into `h`, leaving `b[0] = 0`.
    pub fn normalize(&self) -> Self {
        let mut out = self.clone();
        if let Some(b0) = out.b.first_mut() {
            let shift = b0.conj();
            *b0 = Complex64::new(0.0, 0.0);
            if out.a.is_empty() {
                out.a.push(shift);
            } else {
                out.a[0] += shift;
            }
        }
        out
    }

    /// The analytic part `h` as a series in its own right.
    pub fn analytic_part(&self) -> Self {
        HarmonicSeries { a: self.a.clone(), b: Vec::new() }
    }

    /// The function `g` (not its conjugate) as an analytic series.
    pub fn coanalytic_part(&self) -> Self {
        HarmonicSeries { a: self.b.clone(), b: Vec::new() }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        HarmonicSeries {
            a: self.a.iter().map(|c| c * lambda).collect(),
            b: self.b.iter().map(|c| c * lambda).collect(),
        }
    }

    /// `z ↦ f(e^{iα} z)`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let rot = |(k, c): (usize, &Complex64)| c * Complex64::from_polar(1.0, k as f64 * alpha);
        HarmonicSeries {
            a: self.a.iter().enumerate().map(rot).collect(),
            b: self.b.iter().enumerate().map(rot).collect(),
        }
    }

    /// `Σ_k (|a_k|² + |b_k|²) r^{2k}`; equals `M_2(r, f)²` when the series is normalized.
    pub fn parseval_sum(&self, r: f64) -> f64 {
        let r2 = r * r;
        let part = |c: &[Complex64]| {
            let mut w = 1.0;
            c.iter()
                .map(|x| {
                    let t = x.norm_sqr() * w;
                    w *= r2;
                    t
                })
                .sum::<f64>()
        };
        part(&self.a) + part(&self.b)
    }

    /// Cross term `4π Re(a₀ b₀)` that the boundary Parseval identity picks up when `b₀ ≠ 0`:
    /// `∫_T |f|² |dz| = 2π Σ(|a_k|²+|b_k|²) + 4π Re(a₀ b₀)`.
    pub fn parseval_cross_term(&self) -> f64 {
        match (self.a.first(), self.b.first()) {
            (Some(a0), Some(b0)) => 4.0 * std::f64::consts::PI * (a0 * b0).re,
            _ => 0.0,
        }
    }

    /// Largest imaginary part on the check circle `|z| = 0.7`.
    pub fn max_imaginary_part(&self) -> f64 {
        (0..REAL_CHECK_POINTS)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / REAL_CHECK_POINTS as f64;
                self.eval(Complex64::from_polar(REAL_CHECK_RADIUS, t)).im.abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn is_real_valued(&self) -> bool {
        let scale = 1.0 + self.a.iter().chain(self.b.iter()).map(|c| c.norm()).sum::<f64>();
        self.max_imaginary_part() <= REAL_VALUED_TOL * scale
    }

    /// Harmonic conjugate `V` of a real-valued `U`, normalized by `V(0) = 0`.
    ///
    /// A real `U` has `a_k = b_k` for `k ≥ 1`, so `U = U(0) + 2 Re Σ c_k z^k`. Then
    /// `U + iV = U(0) + 2 Σ c_k z^k` and `V` has coefficients `-i c_k` in both parts.
    pub fn conjugate(&self) -> Result<Self> {
        if !self.is_real_valued() {
            return Err(LabError::domain(format!(
                "harmonic conjugate needs a real-valued function (max |Im| = {:e} on |z| = 0.7)",
                self.max_imaginary_part()
            )));
        }
        let n = self.a.len().max(self.b.len());
        let zero = Complex64::new(0.0, 0.0);
        let mut coeffs = vec![zero; n];
        for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
            let ak = self.a.get(k).copied().unwrap_or(zero);
            let bk = self.b.get(k).copied().unwrap_or(zero);
            // average both halves so rounding noise in one does not leak
            let c = 0.5 * (ak + bk);
            *slot = Complex64::new(0.0, -1.0) * c;
        }
        Ok(HarmonicSeries { a: coeffs.clone(), b: coeffs })
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::TAU;

    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let one = HarmonicSeries::from_real(&[1.0], &[]);
        assert_eq!(one.eval(c(0.3, 0.4)), c(1.0, 0.0));

        let twice_re = HarmonicSeries::from_real(&[0.0, 1.0], &[0.0, 1.0]);
        let z = Complex64::from_polar(0.6, 1.1);
        let v = twice_re.eval(z);
        assert!((v.re - 2.0 * 0.6 * 1.1f64.cos()).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);

        let sq = HarmonicSeries::from_real(&[0.0, 0.0, 1.0], &[]);
        assert!((sq.eval(c(0.0, 0.5)) - c(-0.25, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn eval_at_origin_is_a0_plus_conj_b0() {
        let f = HarmonicSeries::new(vec![c(1.0, 2.0), c(3.0, 0.0)], vec![c(0.5, 0.5)]).unwrap();
        assert_eq!(f.eval(c(0.0, 0.0)), c(1.5, 1.5));
    }

    #[test]
    fn normalize_examples() {
        let f = HarmonicSeries::new(vec![c(1.0, 0.0)], vec![c(0.0, 1.0)]).unwrap();
        let n = f.normalize();
        assert_eq!(n.analytic_coeffs(), &[c(1.0, -1.0)]);
        assert_eq!(n.coanalytic_coeffs(), &[c(0.0, 0.0)]);
        assert_eq!(n.normalize(), n);

        let g = HarmonicSeries::from_real(&[0.0, 1.0], &[2.0, 3.0]).normalize();
        assert_eq!(g, HarmonicSeries::from_real(&[2.0, 1.0], &[0.0, 3.0]));
    }

    #[test]
    fn rejects_non_finite_coefficients() {
        assert!(HarmonicSeries::new(vec![c(f64::NAN, 0.0)], vec![]).is_err());
    }

    #[test]
    fn conjugate_examples() {
        // Re z -> Im z
        let u = HarmonicSeries::from_real(&[0.0, 0.5], &[0.0, 0.5]);
        let v = u.conjugate().unwrap();
        let z = c(0.3, -0.2);
        assert!((v.eval(z).re - z.im).abs() < 1e-15);

        let five = HarmonicSeries::from_real(&[5.0], &[]);
        let v = five.conjugate().unwrap();
        assert_eq!(v.eval(z), c(0.0, 0.0));

        let complex_valued = HarmonicSeries::from_real(&[0.0, 1.0], &[]);
        assert!(matches!(complex_valued.conjugate(), Err(LabError::Domain(_))));
    }

    #[test]
    fn conjugate_of_re_z_cubed_satisfies_cauchy_riemann() {
        use rand::{Rng, SeedableRng};
        let u = HarmonicSeries::from_real(&[0.0, 0.0, 0.0, 0.5], &[0.0, 0.0, 0.0, 0.5]);
        let v = u.conjugate().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let h = 1e-5;
        for _ in 0..50 {
            let z = Complex64::from_polar(rng.random_range(0.0..0.9), rng.random_range(0.0..TAU));
            let d = |s: &HarmonicSeries, dz: Complex64| (s.eval(z + dz).re - s.eval(z - dz).re) / (2.0 * h);
            let (ux, uy) = (d(&u, c(h, 0.0)), d(&u, c(0.0, h)));
            let (vx, vy) = (d(&v, c(h, 0.0)), d(&v, c(0.0, h)));
            assert!((ux - vy).abs() < 1e-8, "u_x = v_y at {z}");
            assert!((uy + vx).abs() < 1e-8, "u_y = -v_x at {z}");
        }
        // closed form: V = Im z³
        let z = c(0.4, 0.3);
        assert!((v.eval(z).re - (z * z * z).im).abs() < 1e-14);
    }

    #[test]
    fn double_conjugate_is_negated_minus_mean() {
        let u = HarmonicSeries::new(
            vec![c(2.0, 0.0), c(1.0, -0.5), c(0.25, 0.75)],
            vec![c(0.0, 0.0), c(1.0, -0.5), c(0.25, 0.75)],
        )
        .unwrap();
        let vv = u.conjugate().unwrap().conjugate().unwrap();
        assert_eq!(vv.analytic_coeffs()[0], c(0.0, 0.0));
        for k in 1..3 {
            assert_eq!(vv.analytic_coeffs()[k], -u.analytic_coeffs()[k]);
            assert_eq!(vv.coanalytic_coeffs()[k], -u.coanalytic_coeffs()[k]);
        }
    }

    #[test]
    fn parseval_cross_term_for_unnormalized_series() {
        let f = HarmonicSeries::from_real(&[1.0], &[2.0]);
        // f ≡ 3, ∫_T 9 = 18π; Σ|.|² = 5 gives 10π, cross term 8π.
        let pi = std::f64::consts::PI;
        let total = 2.0 * pi * f.parseval_sum(1.0) + f.parseval_cross_term();
        assert!((total - 18.0 * pi).abs() < 1e-12);
    }
}
