use std::sync::Arc;

use num_complex::Complex64;

use super::adaptive::{self, Piece};
use super::periodic::{end_pieces, periodic_integral};
use super::{QuadOptions, QuadratureResult};
use crate::curves::{arc_panels, ConvexCurve};
use crate::error::{LabError, Result};
use crate::harmonic::{FunctionSpec, Singularity};

/// Longest panel handed to the adaptive engine before refinement.
const MAX_PANEL_LEN: f64 = 0.25;
/// A curve endpoint this close to a boundary singularity is treated as sitting on it.
const ENDPOINT_MATCH: f64 = 1e-9;

/// A real integrand over points of the closed disk.
pub trait PointIntegrand: Sync {
    fn value(&self, z: Complex64) -> f64;

    /// Value at `anchor + offset`, for anchors at boundary singularities.
    fn value_near(&self, anchor: Complex64, offset: Complex64) -> f64 {
        self.value(anchor + offset)
    }

    /// Value on the unit circle at angle `t`.
    fn boundary_value(&self, t: f64) -> f64 {
        self.value(Complex64::from_polar(1.0, t))
    }

    /// Singular points on the unit circle, with exponents of the integrand itself.
    fn singularities(&self) -> Vec<Singularity> {
        Vec::new()
    }
}

/// `|f(z)|^p`.
pub struct ModulusPower<'a> {
    pub f: &'a FunctionSpec,
    pub p: f64,
}

impl PointIntegrand for ModulusPower<'_> {
    fn value(&self, z: Complex64) -> f64 {
        self.f.eval(z).norm().powf(self.p)
    }

    fn value_near(&self, anchor: Complex64, offset: Complex64) -> f64 {
        self.f.eval_near(anchor, offset).norm().powf(self.p)
    }

    fn boundary_value(&self, t: f64) -> f64 {
        self.f.trace_value(t).norm().powf(self.p)
    }

    fn singularities(&self) -> Vec<Singularity> {
        self.f
            .singularities()
            .into_iter()
            .map(|s| Singularity { angle: s.angle, exponent: s.exponent * self.p })
            .collect()
    }
}

/// `∫_C |f|^p |dz|`.
pub fn contour_integral(
    f: &FunctionSpec,
    p: f64,
    curve: &ConvexCurve,
    opts: &QuadOptions,
) -> Result<QuadratureResult> {
    if !(p > 0.0) {
        return Err(LabError::domain(format!("exponent p must be positive (got {p})")));
    }
    f.validate()?;
    contour_integrate(curve, &ModulusPower { f, p }, opts)
}

/// `∫_C φ |dz|` for any point integrand.
///
/// The unit circle is integrated as a periodic boundary integral. Segment endpoints that
/// sit on a boundary singularity get a graded end piece evaluated relative to the
/// singular point; everything else goes through adaptive Gauss–Kronrod on arc panels.
pub fn contour_integrate(
    curve: &ConvexCurve,
    integrand: &dyn PointIntegrand,
    opts: &QuadOptions,
) -> Result<QuadratureResult> {
    let singularities = integrand.singularities();
    if curve.is_unit_circle() {
        let g = |t: f64| integrand.boundary_value(t);
        return periodic_integral(&g, &singularities, opts);
    }

    let mut pieces: Vec<Piece<'_>> = Vec::new();
    match *curve {
        ConvexCurve::Segment { a, b } => {
            let at = |e: Complex64| -> Result<Option<f64>> {
                if e.norm() < 1.0 - ENDPOINT_MATCH {
                    return Ok(None);
                }
                let hit = singularities
                    .iter()
                    .filter(|s| (s.point() - e).norm() < ENDPOINT_MATCH)
                    .map(|s| s.exponent)
                    .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |y| y.max(x))));
                if let Some(alpha) = hit {
                    if alpha >= 1.0 {
                        return Err(LabError::domain(format!(
                            "integrand exponent {alpha} at curve endpoint {e} is not integrable"
                        )));
                    }
                }
                Ok(hit)
            };
            let (ga, gb) = (at(a)?, at(b)?);
            if ga.is_none() && gb.is_none() {
                push_panels(&mut pieces, curve, integrand);
            } else {
                let mid = 0.5 * (a + b);
                let half = (b - a).norm() * 0.5;
                for (end, other, grade) in [(a, mid, ga), (b, mid, gb)] {
                    let dir = (other - end) / (other - end).norm();
                    match grade {
                        Some(alpha) => {
                            let h = Arc::new(move |x: f64| integrand.value_near(end, dir * x));
                            pieces.extend(end_pieces(h, half, alpha));
                        }
                        None => {
                            pieces.push(Piece::new(0.0, half, move |x: f64| integrand.value(end + dir * x)));
                        }
                    }
                }
            }
        }
        _ => push_panels(&mut pieces, curve, integrand),
    }
    Ok(adaptive::integrate(&pieces, opts))
}

fn push_panels<'a>(pieces: &mut Vec<Piece<'a>>, curve: &ConvexCurve, integrand: &'a dyn PointIntegrand) {
    for panel in arc_panels(curve, MAX_PANEL_LEN) {
        pieces.push(Piece::new(panel.t0, panel.t1, move |t: f64| {
            integrand.value(panel.point(t)) * panel.speed(t)
        }));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{HarmonicSeries, NamedFunction, Part};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        let o = QuadOptions::default();
        let one = FunctionSpec::series(HarmonicSeries::from_real(&[1.0], &[]));
        for &p in &[0.3, 1.0, 2.5] {
            let r = contour_integral(&one, p, &ConvexCurve::circle(c(0.0, 0.0), 0.4).unwrap(), &o).unwrap();
            assert!((r.value - 2.0 * PI * 0.4).abs() < 1e-13);
        }
        for k in 0..5u32 {
            let m = FunctionSpec::named(NamedFunction::Monomial { k, part: Part::Analytic }).unwrap();
            let rho: f64 = 0.7;
            let r = contour_integral(&m, 2.0, &ConvexCurve::circle(c(0.0, 0.0), rho).unwrap(), &o).unwrap();
            assert!((r.value - 2.0 * PI * rho.powi(2 * k as i32 + 1)).abs() < 1e-12);
        }
        let two_re = FunctionSpec::series(HarmonicSeries::from_real(&[0.0, 1.0], &[0.0, 1.0]));
        let r = contour_integral(&two_re, 2.0, &ConvexCurve::diameter(), &o).unwrap();
        assert!((r.value - 8.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn polygon_is_sum_of_edges() {
        let o = QuadOptions::with_tol(1e-12);
        let f = FunctionSpec::series(
            HarmonicSeries::new(
                vec![c(0.2, 0.1), c(1.0, -0.3), c(0.0, 0.7)],
                vec![c(0.0, 0.0), c(-0.4, 0.2), c(0.3, 0.3)],
            )
            .unwrap(),
        );
        let poly = ConvexCurve::regular_polygon(7, c(0.1, -0.05), 0.6, 0.3).unwrap();
        let ConvexCurve::Polygon { ref vertices } = poly else { unreachable!() };
        let whole = contour_integral(&f, 1.3, &poly, &o).unwrap().value;
        let edges: f64 = (0..vertices.len())
            .map(|i| {
                let seg = ConvexCurve::segment(vertices[i], vertices[(i + 1) % vertices.len()]).unwrap();
                contour_integral(&f, 1.3, &seg, &o).unwrap().value
            })
            .sum();
        assert!((whole - edges).abs() < 1e-10);
    }

    #[test]
    fn cayley_on_the_diameter_matches_beta_identity() {
        let o = QuadOptions::default();
        for &p in &[0.5f64, 0.7, 0.9] {
            let f = FunctionSpec::named(NamedFunction::CayleyPower { p }).unwrap();
            let r = contour_integral(&f, p, &ConvexCurve::diameter(), &o).unwrap();
            let s = p * p;
            let exact = 2.0 * PI * s / (PI * s).sin();
            assert!(r.converged);
            assert!((r.value - exact).abs() < 1e-6 * exact, "p = {p}: {} vs {exact}", r.value);
        }
    }

    #[test]
    fn unit_circle_routes_to_boundary_integral() {
        let f = FunctionSpec::named(NamedFunction::CayleyPower { p: 0.6 }).unwrap();
        let r = contour_integral(&f, 1.0, &ConvexCurve::unit_circle(), &QuadOptions::default()).unwrap();
        assert!((r.value - 2.0 * PI).abs() < 1e-7);
    }

    #[test]
    fn monotone_in_radius() {
        let f = FunctionSpec::series(
            HarmonicSeries::new(
                vec![c(0.3, 0.0), c(1.0, 0.5), c(0.0, -0.4), c(0.2, 0.2)],
                vec![c(0.0, 0.0), c(0.1, 0.0), c(0.6, 0.0)],
            )
            .unwrap(),
        );
        let o = QuadOptions::default();
        let mut prev = 0.0;
        for j in 1..20 {
            let rho = j as f64 / 20.0;
            let v =
                contour_integral(&f, 1.5, &ConvexCurve::circle(c(0.0, 0.0), rho).unwrap(), &o).unwrap().value;
            assert!(v >= prev);
            prev = v;
        }
    }
}
