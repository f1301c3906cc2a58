//! Harmonic functions on the unit disk: representation, evaluation, extension, measurement.

pub mod function;
pub mod series;
pub mod trace;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use function::{FunctionSpec, NamedFunction, Part, PoissonData, Singularity};
pub use series::HarmonicSeries;
pub use trace::BoundaryTrace;

use crate::curves::ConvexCurve;
use crate::error::{LabError, Result};
use crate::quadrature::{self, periodic_integral, QuadOptions};

/// Poisson kernel `(1 − r²)/(1 − 2r cos(θ − t) + r²)`.
pub fn poisson_kernel(r: f64, theta_minus_t: f64) -> f64 {
    (1.0 - r * r) / (1.0 - 2.0 * r * theta_minus_t.cos() + r * r)
}

/// Harmonic extension `(1/2π) ∫ P_r(θ − t) f(e^{it}) dt` at `z = re^{iθ}`, `r < 1`.
///
/// Sampled traces extend through their trigonometric interpolant, which is exactly
/// harmonic and reproduces every trigonometric polynomial of degree below `n/2`.
/// Closed-form traces are integrated against the kernel, with the kernel peak at `θ`
/// added to the trace's singular angles.
pub fn poisson_extend(trace: &BoundaryTrace, z: Complex64, opts: &QuadOptions) -> Result<Complex64> {
    let r = z.norm();
    if !(r < 1.0) {
        return Err(LabError::domain(format!("poisson_extend needs |z| < 1 (got {r})")));
    }
    match trace {
        BoundaryTrace::Sampled { .. } => Ok(trace.interpolant()?.eval(z)),
        BoundaryTrace::ClosedForm { function, singularities, .. } => {
            if r == 0.0 {
                return mean_of_trace(function, singularities, opts);
            }
            let theta = z.arg();
            let mut sing = singularities.clone();
            sing.push(Singularity { angle: theta.rem_euclid(2.0 * PI), exponent: 0.0 });
            let part = |pick: fn(Complex64) -> f64| -> Result<f64> {
                let g = |t: f64| poisson_kernel(r, theta - t) * pick(function.trace_value(t));
                let q = periodic_integral(&g, &sing, opts)?.require_converged("poisson_extend")?;
                Ok(q.value / (2.0 * PI))
            };
            Ok(Complex64::new(part(|c| c.re)?, part(|c| c.im)?))
        }
    }
}

fn mean_of_trace(f: &FunctionSpec, sing: &[Singularity], opts: &QuadOptions) -> Result<Complex64> {
    let re = periodic_integral(&|t| f.trace_value(t).re, sing, opts)?.require_converged("trace mean")?;
    let im = periodic_integral(&|t| f.trace_value(t).im, sing, opts)?.require_converged("trace mean")?;
    Ok(Complex64::new(re.value, im.value) / (2.0 * PI))
}

/// `M_p(r, f) = ((1/2π) ∫₀^{2π} |f(re^{iθ})|^p dθ)^{1/p}` for `0 ≤ r ≤ 1`.
pub fn integral_mean(f: &FunctionSpec, r: f64, p: f64, opts: &QuadOptions) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) || !(p > 0.0) {
        return Err(LabError::domain(format!("integral_mean needs 0 ≤ r ≤ 1, p > 0 (r={r}, p={p})")));
    }
    if r == 0.0 {
        return Ok(f.eval(Complex64::new(0.0, 0.0)).norm());
    }
    let q = if r == 1.0 {
        quadrature::boundary_integral(&f.exact_trace(), p, opts)?
    } else {
        let circle = ConvexCurve::Circle { center: Complex64::new(0.0, 0.0), radius: r };
        let mut q = quadrature::contour_integral(f, p, &circle, opts)?;
        q.value /= r;
        q
    };
    let q = q.require_converged("integral_mean")?;
    Ok((q.value / (2.0 * PI)).powf(1.0 / p))
}

/// `(1/m) Σ φ(z₀ + ρ e^{2πij/m}) − φ(z₀)`: nonnegative (up to quadrature error) when `φ`
/// is subharmonic. Returns `+∞` when `φ(z₀) = −∞`.
pub fn submean_defect(phi: impl Fn(Complex64) -> f64, z0: Complex64, rho: f64, m: usize) -> Result<f64> {
    if m < 16 {
        return Err(LabError::domain(format!("submean_defect needs m ≥ 16 (got {m})")));
    }
    if !(rho > 0.0) || z0.norm() + rho >= 1.0 {
        return Err(LabError::domain("submean_defect needs a disk inside the unit disk"));
    }
    let center = phi(z0);
    if center == f64::NEG_INFINITY {
        return Ok(f64::INFINITY);
    }
    let mean =
        (0..m).map(|j| phi(z0 + Complex64::from_polar(rho, 2.0 * PI * j as f64 / m as f64))).sum::<f64>()
            / m as f64;
    Ok(mean - center)
}

/// `log(|h(z)| + |g(z)|)` for the two parts of a harmonic series.
pub fn log_sum_modulus(f: &HarmonicSeries) -> impl Fn(Complex64) -> f64 + '_ {
    move |z| (f.eval_h(z).norm() + f.eval_g(z).norm()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn poisson_examples() {
        let o = QuadOptions::default();
        let vals: Vec<_> = (0..8).map(|j| c(j as f64, 0.5)).collect();
        let tr = BoundaryTrace::sampled(vals).unwrap();
        let v = poisson_extend(&tr, c(0.0, 0.0), &o).unwrap();
        assert!((v - c(3.5, 0.5)).norm() < 1e-14);

        let cos = FunctionSpec::poisson_of(16, |t| t.cos()).unwrap();
        let z = Complex64::from_polar(0.8, 0.7);
        let tr = cos.boundary_trace(16).unwrap();
        assert!((poisson_extend(&tr, z, &o).unwrap().re - 0.8 * 0.7f64.cos()).abs() < 1e-14);

        let cos3 = FunctionSpec::poisson_of(32, |t| 2.0 * (3.0 * t).cos()).unwrap();
        let tr = cos3.boundary_trace(32).unwrap();
        let oracle =
            HarmonicSeries::from_real(&[0.0, 0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 1.0]).eval(c(0.5, 0.0));
        assert!((poisson_extend(&tr, c(0.5, 0.0), &o).unwrap() - oracle).norm() < 1e-14);
        assert!((oracle.re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn poisson_of_closed_form_trace() {
        // cauchy kernel is analytic, so its Poisson extension is itself
        let f = FunctionSpec::named(NamedFunction::CauchyKernel { w: c(0.5, 0.3) }).unwrap();
        let tr = f.boundary_trace(64).unwrap();
        let o = QuadOptions::with_tol(1e-11);
        for z in [c(0.0, 0.0), c(0.3, -0.4), c(-0.85, 0.1)] {
            let v = poisson_extend(&tr, z, &o).unwrap();
            assert!((v - f.eval(z)).norm() < 1e-9, "{z}");
        }
        assert!(poisson_extend(&tr, c(1.0, 0.0), &o).is_err());
    }

    #[test]
    fn integral_mean_examples() {
        let o = QuadOptions::default();
        let c3 = FunctionSpec::series(HarmonicSeries::constant(c(0.0, -3.0)));
        assert!((integral_mean(&c3, 0.4, 1.7, &o).unwrap() - 3.0).abs() < 1e-12);
        let z = FunctionSpec::series(HarmonicSeries::from_real(&[0.0, 1.0], &[]));
        assert!((integral_mean(&z, 0.5, 2.0, &o).unwrap() - 0.5).abs() < 1e-13);
        let two_re = FunctionSpec::series(HarmonicSeries::from_real(&[0.0, 1.0], &[0.0, 1.0]));
        assert!((integral_mean(&two_re, 1.0, 2.0, &o).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn submean_examples() {
        let re = |z: Complex64| z.re;
        let d = submean_defect(re, c(0.2, 0.1), 0.3, 64).unwrap();
        assert!(d.abs() < 1e-15);
        let logmod = |z: Complex64| z.norm().ln();
        assert!(submean_defect(logmod, c(0.5, 0.0), 0.1, 64).unwrap() >= 0.0);
        assert_eq!(submean_defect(logmod, c(0.0, 0.0), 0.1, 64).unwrap(), f64::INFINITY);
        assert!(submean_defect(re, c(0.0, 0.0), 0.1, 8).is_err());
        assert!(submean_defect(re, c(0.9, 0.0), 0.2, 32).is_err());
    }

    #[test]
    fn log_sum_modulus_submean() {
        use rand::{Rng, SeedableRng};
        let f =
            HarmonicSeries::new(vec![c(-0.3, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
                .unwrap();
        let phi = log_sum_modulus(&f);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let z0 = Complex64::from_polar(rng.random_range(0.0..0.8), rng.random_range(0.0..6.3));
            let rho = rng.random_range(0.001..(0.99 - z0.norm()));
            let d = submean_defect(&phi, z0, rho, 256).unwrap();
            // dense-sampling oracle
            let dense = submean_defect(&phi, z0, rho, 8192).unwrap();
            assert!(d >= -1e-9 && dense >= -1e-9, "z0={z0} rho={rho} d={d} dense={dense}");
        }
    }
}
