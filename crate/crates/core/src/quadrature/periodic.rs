use std::f64::consts::PI;
use std::sync::Arc;

use super::adaptive::{self, Piece};
use super::{QuadOptions, QuadratureResult};
use crate::error::{LabError, Result};
use crate::harmonic::function::canonical_angle;
use crate::harmonic::{BoundaryTrace, Singularity};

/// Largest trapezoid grid tried for smooth periodic integrands.
pub(crate) const MAX_TRAPEZOID_NODES: usize = 1 << 16;
const MIN_TRAPEZOID_NODES: usize = 32;
/// Uniform panels handed to the adaptive engine when trapezoid doubling stalls.
const FALLBACK_PANELS: usize = 64;
/// Number of dyadic levels used to grade toward a bounded near-singular point.
pub(crate) const DYADIC_LEVELS: usize = 40;
/// Inner cutoff of the graded map. Below it the integrand is replaced by its leading
/// term `h(x₀)(x₀/x)^α`, integrated in closed form.
const TAIL_CUTOFF: f64 = 1e-280;

/// Grading exponent for the substitution `x = L·u^κ` near a singularity of integrand
/// exponent `alpha`. With `κ ≥ 2/(1−α)` the transformed integrand vanishes at `u = 0`.
pub(crate) fn grading_power(alpha: f64) -> f64 {
    (2.0 / (1.0 - alpha)).max(2.0)
}

/// Pieces covering `x ∈ (0, len]`, where `x` is the distance from a singular end and
/// `h(x)` already includes the arc-length factor.
pub(crate) fn end_pieces<'a>(
    h: Arc<dyn Fn(f64) -> f64 + Send + Sync + 'a>,
    len: f64,
    alpha: f64,
) -> Vec<Piece<'a>> {
    if alpha > 0.0 {
        let kappa = grading_power(alpha);
        let x0 = TAIL_CUTOFF.min(0.5 * len);
        let span = len - x0;
        let tail = h(x0) * x0 / (1.0 - alpha);
        let graded = {
            let h = Arc::clone(&h);
            Piece::new(0.0, 1.0, move |u: f64| {
                h(x0 + span * u.powf(kappa)) * span * kappa * u.powf(kappa - 1.0)
            })
        };
        vec![graded, Piece::new(0.0, 1.0, move |_| tail)]
    } else {
        let mut out = Vec::with_capacity(DYADIC_LEVELS + 1);
        let mut hi = len;
        for _ in 0..DYADIC_LEVELS {
            let lo = 0.5 * hi;
            let h = Arc::clone(&h);
            out.push(Piece::new(lo, hi, move |x| h(x)));
            hi = lo;
        }
        out.push(Piece::new(0.0, hi, move |x| h(x)));
        out
    }
}

fn trapezoid_doubling(g: &(dyn Fn(f64) -> f64 + Sync), opts: &QuadOptions) -> QuadratureResult {
    let max_nodes = MAX_TRAPEZOID_NODES.min(opts.budget.max(MIN_TRAPEZOID_NODES));
    let mut n = MIN_TRAPEZOID_NODES;
    let mut sum: f64 = (0..n).map(|j| g(2.0 * PI * j as f64 / n as f64)).sum();
    let mut prev = 2.0 * PI * sum / n as f64;
    let mut evaluations = n;
    let mut last_err = f64::INFINITY;
    loop {
        if 2 * n > max_nodes {
            return QuadratureResult {
                value: prev,
                error_estimate: last_err,
                evaluations,
                converged: opts.acceptable(last_err, prev),
            };
        }
        // the odd nodes of the doubled grid
        let odd: f64 = (0..n).map(|j| g(2.0 * PI * (2 * j + 1) as f64 / (2 * n) as f64)).sum();
        evaluations += n;
        sum += odd;
        n *= 2;
        let cur = 2.0 * PI * sum / n as f64;
        let err = (cur - prev).abs();
        if !cur.is_finite() {
            return QuadratureResult {
                value: cur,
                error_estimate: f64::INFINITY,
                evaluations,
                converged: false,
            };
        }
        if opts.refined(err, cur) {
            return QuadratureResult { value: cur, error_estimate: err, evaluations, converged: true };
        }
        prev = cur;
        last_err = err;
    }
}

/// `∫₀^{2π} g(t) dt` for a 2π-periodic `g`.
///
/// Without singularities the trapezoid rule is doubled until two successive grids agree;
/// if that stalls, adaptive Gauss–Kronrod on uniform panels takes over.
/// Otherwise the circle is cut at the singular angles; each half-panel next to an angle
/// with positive integrand exponent is mapped by `t = θ ± L·u^κ`, and next to a bounded
/// near-singular angle it is split dyadically, before adaptive Gauss–Kronrod takes over.
pub fn periodic_integral(
    g: &(dyn Fn(f64) -> f64 + Sync),
    singularities: &[Singularity],
    opts: &QuadOptions,
) -> Result<QuadratureResult> {
    if singularities.is_empty() {
        let t = trapezoid_doubling(g, opts);
        if t.converged || !t.value.is_finite() {
            return Ok(t);
        }
        // non-smooth integrand (e.g. |u|^p across a zero of u): adaptive panels
        let h = 2.0 * PI / FALLBACK_PANELS as f64;
        let pieces: Vec<_> =
            (0..FALLBACK_PANELS).map(|j| Piece::new(j as f64 * h, (j + 1) as f64 * h, g)).collect();
        let mut a = adaptive::integrate(&pieces, opts);
        a.evaluations += t.evaluations;
        return Ok(a);
    }
    for s in singularities {
        if s.exponent >= 1.0 {
            return Err(LabError::domain(format!(
                "integrand exponent {} at angle {} is not integrable",
                s.exponent, s.angle
            )));
        }
    }
    let mut sing: Vec<Singularity> = singularities
        .iter()
        .map(|s| Singularity { angle: s.angle.rem_euclid(2.0 * PI), exponent: s.exponent })
        .collect();
    sing.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    sing.dedup_by(|b, a| {
        if (a.angle - b.angle).abs() < 1e-14 {
            a.exponent = a.exponent.max(b.exponent);
            true
        } else {
            false
        }
    });

    let mut pieces = Vec::new();
    let m = sing.len();
    for i in 0..m {
        let start = sing[i];
        let end = sing[(i + 1) % m];
        let mut gap = end.angle - start.angle;
        if gap <= 0.0 {
            gap += 2.0 * PI;
        }
        let half = 0.5 * gap;
        // forward from `start`, backward from `end`, each from its canonical representative
        let s0 = canonical_angle(start.angle);
        let e0 = canonical_angle(end.angle);
        pieces.extend(end_pieces(Arc::new(move |x: f64| g(s0 + x)), half, start.exponent));
        pieces.extend(end_pieces(Arc::new(move |x: f64| g(e0 - x)), half, end.exponent));
    }
    Ok(adaptive::integrate(&pieces, opts))
}

/// `∫_T |f|^p |dz|` for a boundary trace.
pub fn boundary_integral(trace: &BoundaryTrace, p: f64, opts: &QuadOptions) -> Result<QuadratureResult> {
    if !(p > 0.0) {
        return Err(LabError::domain(format!("exponent p must be positive (got {p})")));
    }
    match trace {
        BoundaryTrace::Sampled { .. } => {
            let s = trace.interpolant()?;
            let g = move |t: f64| s.eval(num_complex::Complex64::from_polar(1.0, t)).norm().powf(p);
            periodic_integral(&g, &[], opts)
        }
        BoundaryTrace::ClosedForm { function, singularities, .. } => {
            let scaled: Vec<Singularity> = singularities
                .iter()
                .map(|s| Singularity { angle: s.angle, exponent: s.exponent * p })
                .collect();
            if let Some(bad) = scaled.iter().find(|s| s.exponent >= 1.0) {
                return Err(LabError::domain(format!(
                    "|f|^p is not integrable at angle {}: p × exponent = {} ≥ 1",
                    bad.angle, bad.exponent
                )));
            }
            let f = function.as_ref();
            let g = |t: f64| f.trace_value(t).norm().powf(p);
            periodic_integral(&g, &scaled, opts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{FunctionSpec, HarmonicSeries, NamedFunction};
    use num_complex::Complex64;

    #[test]
    fn constant_and_cosine_traces() {
        let o = QuadOptions::default();
        let one = FunctionSpec::series(HarmonicSeries::from_real(&[1.0], &[]));
        let r = boundary_integral(&one.exact_trace(), 1.0, &o).unwrap();
        assert!((r.value - 2.0 * PI).abs() < 1e-13);

        let two_cos = FunctionSpec::series(HarmonicSeries::from_real(&[0.0, 1.0], &[0.0, 1.0]));
        let r = boundary_integral(&two_cos.boundary_trace(16).unwrap(), 2.0, &o).unwrap();
        assert!((r.value - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn cayley_trace_integrates_to_two_pi() {
        let o = QuadOptions::default();
        for &p in &[0.3, 0.5, 0.8] {
            let f = FunctionSpec::named(NamedFunction::CayleyPower { p }).unwrap();
            let r = boundary_integral(&f.exact_trace(), 1.0, &o).unwrap();
            assert!(r.converged, "{r:?}");
            assert!((r.value - 2.0 * PI).abs() < 1e-7, "p = {p}: {}", r.value);
        }
    }

    #[test]
    fn non_integrable_request_is_a_domain_error() {
        let f = FunctionSpec::named(NamedFunction::CayleyPower { p: 0.5 }).unwrap();
        assert!(matches!(
            boundary_integral(&f.exact_trace(), 2.0, &QuadOptions::default()),
            Err(LabError::Domain(_))
        ));
    }

    #[test]
    fn doubling_error_shrinks_geometrically() {
        // smooth analytic integrand |1/(1 − 0.5 e^{it})|²
        let g = |t: f64| (1.0 / (Complex64::new(1.0, 0.0) - Complex64::from_polar(0.5, t))).norm_sqr();
        let exact = 2.0 * PI / (1.0 - 0.25);
        let mut last = f64::INFINITY;
        for n in [8usize, 16, 32, 64] {
            let v: f64 = (0..n).map(|j| g(2.0 * PI * j as f64 / n as f64)).sum::<f64>() * 2.0 * PI / n as f64;
            let e = (v - exact).abs();
            assert!(e <= 0.5 * last || e < 1e-14);
            last = e;
        }
        let r = periodic_integral(&g, &[], &QuadOptions::default()).unwrap();
        assert!(r.converged && r.evaluations <= MAX_TRAPEZOID_NODES);
    }
}
