//! One verifier per inequality: both sides, the sharp constant, ratio, slack, verdict.

pub mod constants;
mod report;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use report::{InequalityReport, ReportInputs, TheoremId, Verdict};

use crate::curves::{containment_margin, ConvexCurve};
use crate::error::{LabError, Result};
use crate::harmonic::{FunctionSpec, HarmonicSeries, Singularity};
use crate::quadrature::{
    self, boundary_integral, circle_max, contour_integral, contour_integrate, periodic_integral,
    PointIntegrand, QuadOptions, QuadratureResult,
};

fn check_p(p: f64, ok: bool, what: &str) -> Result<()> {
    if p.is_finite() && ok {
        Ok(())
    } else {
        Err(LabError::domain(format!("{what} (got p = {p})")))
    }
}

fn admissible(curve: &ConvexCurve) -> Result<()> {
    let curve = curve.clone().validated()?;
    if containment_margin(&curve) < -1e-12 {
        return Err(LabError::domain(format!("curve {} leaves the closed unit disk", curve.label())));
    }
    Ok(())
}

fn boundary(f: &FunctionSpec, p: f64, opts: &QuadOptions) -> Result<QuadratureResult> {
    boundary_integral(&f.exact_trace(), p, opts)
}

/// Relative rounding allowance added to every side, so exact equalities never read as failures.
const ROUNDING_FLOOR: f64 = 64.0 * f64::EPSILON;

/// Sides of an inequality `lhs ≤ constant · rhs_integral^power`.
struct Sides {
    lhs: QuadratureResult,
    constant: f64,
    rhs_integral: QuadratureResult,
    power: f64,
}

impl Sides {
    fn report(self, theorem_id: TheoremId, p: f64, inputs: ReportInputs) -> InequalityReport {
        let Sides { lhs, constant, rhs_integral, power } = self;
        let i = rhs_integral.value;
        let rhs = constant * i.powf(power);
        let rhs_error = if power == 1.0 {
            constant * rhs_integral.error_estimate
        } else {
            constant * power * i.powf(power - 1.0) * rhs_integral.error_estimate
        };
        let rhs_error = rhs_error.max(ROUNDING_FLOOR * rhs.abs());
        let converged = lhs.converged && rhs_integral.converged;
        InequalityReport::new(
            theorem_id,
            p,
            inputs,
            lhs.value,
            lhs.error_estimate.max(ROUNDING_FLOOR * lhs.value.abs()),
            constant,
            i,
            rhs,
            rhs_error,
            converged,
        )
    }
}

fn with_curve(f: &FunctionSpec, curve: &ConvexCurve) -> ReportInputs {
    ReportInputs::Function { function: f.clone(), second: None, curve: Some(curve.clone()) }
}

fn without_curve(f: &FunctionSpec) -> ReportInputs {
    ReportInputs::Function { function: f.clone(), second: None, curve: None }
}

/// `∫_C |h|^p |dz| ≤ 2 ∫_T |h|^p |dz|` for analytic `h`, `p > 0`, convex `C`.
pub fn verify_gabriel_analytic(
    h: &FunctionSpec,
    p: f64,
    curve: &ConvexCurve,
    opts: &QuadOptions,
) -> Result<InequalityReport> {
    check_p(p, p > 0.0, "exponent must be positive")?;
    if !h.is_analytic() {
        return Err(LabError::domain("the analytic inequality needs a function with zero co-analytic part"));
    }
    admissible(curve)?;
    Ok(Sides {
        lhs: contour_integral(h, p, curve, opts)?,
        constant: constants::GABRIEL,
        rhs_integral: boundary(h, p, opts)?,
        power: 1.0,
    }
    .report(TheoremId::Gabriel, p, with_curve(h, curve)))
}

/// `∫_C |f|^p |dz| ≤ c_main(p) ∫_T |f|^p |dz|` for harmonic `f`, `p > 1`.
pub fn verify_main_convex(
    f: &FunctionSpec,
    p: f64,
    curve: &ConvexCurve,
    opts: &QuadOptions,
) -> Result<InequalityReport> {
    check_p(p, p > 1.0, "the convex-curve inequality needs p > 1")?;
    admissible(curve)?;
    Ok(Sides {
        lhs: contour_integral(f, p, curve, opts)?,
        constant: constants::main(p),
        rhs_integral: boundary(f, p, opts)?,
        power: 1.0,
    }
    .report(TheoremId::Main, p, with_curve(f, curve)))
}

/// `∫₋₁¹ |f(x)|^p dx ≤ (1/2)sec^p(π/2p) ∫₀^{2π} |f(e^{iθ})|^p dθ`, `p > 1`.
pub fn verify_riesz_fejer(f: &FunctionSpec, p: f64, opts: &QuadOptions) -> Result<InequalityReport> {
    check_p(p, p > 1.0, "the diameter inequality needs p > 1")?;
    let curve = ConvexCurve::diameter();
    Ok(Sides {
        lhs: contour_integral(f, p, &curve, opts)?,
        constant: constants::riesz_fejer(p),
        rhs_integral: boundary(f, p, opts)?,
        power: 1.0,
    }
    .report(TheoremId::RieszFejer, p, with_curve(f, &curve)))
}

/// `∫_C |f|^p |dz| ≤ A(p) (∫_T |f| |dz|)^p` for `0 < p < 1`.
pub fn verify_small_p(
    f: &FunctionSpec,
    p: f64,
    curve: &ConvexCurve,
    opts: &QuadOptions,
) -> Result<InequalityReport> {
    check_p(p, p > 0.0 && p < 1.0, "the mixed-homogeneity inequality needs 0 < p < 1")?;
    admissible(curve)?;
    Ok(Sides {
        lhs: contour_integral(f, p, curve, opts)?,
        constant: constants::small_p(p),
        rhs_integral: boundary(f, 1.0, opts)?,
        power: p,
    }
    .report(TheoremId::SmallP, p, with_curve(f, curve)))
}

fn require_circle(curve: &ConvexCurve) -> Result<(Complex64, f64)> {
    match *curve {
        ConvexCurve::Circle { center, radius } if radius > 0.0 && center.norm() + radius < 1.0 => {
            Ok((center, radius))
        }
        _ => Err(LabError::domain(format!(
            "expected a circle strictly inside the unit disk, got {}",
            curve.label()
        ))),
    }
}

/// `∫_C |f|^p |dz| ≤ c_circle(p, r) ∫_T |f|^p |dz|` for a circle `C` centered at distance
/// `r` from the origin, `p ≥ 1`.
///
/// For `p < 2` the inequality is strict; the report carries the strict margin
/// `rhs − lhs` in its note.
pub fn verify_circle(
    f: &FunctionSpec,
    p: f64,
    curve: &ConvexCurve,
    opts: &QuadOptions,
) -> Result<InequalityReport> {
    check_p(p, p >= 1.0, "the circle inequality needs p ≥ 1")?;
    let (center, _) = require_circle(curve)?;
    let mut report = Sides {
        lhs: contour_integral(f, p, curve, opts)?,
        constant: constants::circle(p, center.norm()),
        rhs_integral: boundary(f, p, opts)?,
        power: 1.0,
    }
    .report(TheoremId::Circle, p, with_curve(f, curve));
    if p < 2.0 {
        report.note = Some(format!("strict margin rhs - lhs = {:e}", report.slack));
    } else if center.norm() > 0.0 {
        report.note = Some("off-center circle with p >= 2: empirical check".into());
    }
    Ok(report)
}

/// `∫_C |h|^p |dz| ≤ ∫_T |h|^p |dz|` for analytic `h` and a circle `C`.
pub fn verify_frazer(
    h: &FunctionSpec,
    p: f64,
    curve: &ConvexCurve,
    opts: &QuadOptions,
) -> Result<InequalityReport> {
    check_p(p, p > 0.0, "exponent must be positive")?;
    if !h.is_analytic() {
        return Err(LabError::domain("the circle inequality for analytic functions needs g = 0"));
    }
    require_circle(curve)?;
    Ok(Sides {
        lhs: contour_integral(h, p, curve, opts)?,
        constant: constants::FRAZER,
        rhs_integral: boundary(h, p, opts)?,
        power: 1.0,
    }
    .report(TheoremId::Frazer, p, with_curve(h, curve)))
}

/// `(|h| + |g|)^p`.
struct SumModulus<'a> {
    h: &'a FunctionSpec,
    g: &'a FunctionSpec,
    p: f64,
}

impl PointIntegrand for SumModulus<'_> {
    fn value(&self, z: Complex64) -> f64 {
        (self.h.eval(z).norm() + self.g.eval(z).norm()).powf(self.p)
    }

    fn value_near(&self, anchor: Complex64, offset: Complex64) -> f64 {
        (self.h.eval_near(anchor, offset).norm() + self.g.eval_near(anchor, offset).norm()).powf(self.p)
    }

    fn boundary_value(&self, t: f64) -> f64 {
        (self.h.trace_value(t).norm() + self.g.trace_value(t).norm()).powf(self.p)
    }

    fn singularities(&self) -> Vec<Singularity> {
        self.h
            .singularities()
            .into_iter()
            .chain(self.g.singularities())
            .map(|s| Singularity { angle: s.angle, exponent: s.exponent * self.p })
            .collect()
    }
}

/// `∫_C (|h| + |g|)^p |dz| ≤ 2 ∫_T (|h| + |g|)^p |dz|` for analytic `h`, `g`, `p > 1`.
pub fn verify_lemma_sum(
    h: &FunctionSpec,
    g: &FunctionSpec,
    p: f64,
    curve: &ConvexCurve,
    opts: &QuadOptions,
) -> Result<InequalityReport> {
    check_p(p, p > 1.0, "the sum inequality needs p > 1")?;
    if !h.is_analytic() || !g.is_analytic() {
        return Err(LabError::domain("the sum inequality needs two analytic functions"));
    }
    h.validate()?;
    g.validate()?;
    admissible(curve)?;
    let integrand = SumModulus { h, g, p };
    Ok(Sides {
        lhs: contour_integrate(curve, &integrand, opts)?,
        constant: constants::LEMMA_SUM,
        rhs_integral: contour_integrate(&ConvexCurve::unit_circle(), &integrand, opts)?,
        power: 1.0,
    }
    .report(
        TheoremId::LemmaSum,
        p,
        ReportInputs::Function { function: h.clone(), second: Some(g.clone()), curve: Some(curve.clone()) },
    ))
}

fn coefficient_form(f: &FunctionSpec, what: &str) -> Result<HarmonicSeries> {
    f.as_series().ok_or_else(|| LabError::domain(format!("{what} needs a function with a coefficient form")))
}

/// `∫_T (|h|² + |g|²)^{p/2} |dz| ≤ (1 − |cos(π/p)|)^{−p/2} ∫_T |f|^p |dz|`, `p > 1`,
/// for a normalized series (`b₀ = 0`).
pub fn verify_kalaj(f: &FunctionSpec, p: f64, opts: &QuadOptions) -> Result<InequalityReport> {
    check_p(p, p > 1.0, "the two-part inequality needs p > 1")?;
    let s = coefficient_form(f, "the two-part inequality")?;
    if !s.is_normalized() {
        return Err(LabError::domain("the two-part inequality needs a normalized series (b0 = 0)"));
    }
    let lhs = periodic_integral(
        &|t| {
            let z = Complex64::from_polar(1.0, t);
            (s.eval_h(z).norm_sqr() + s.eval_g(z).norm_sqr()).powf(0.5 * p)
        },
        &[],
        opts,
    )?;
    let rhs_integral =
        periodic_integral(&|t| s.eval(Complex64::from_polar(1.0, t)).norm().powf(p), &[], opts)?;
    Ok(Sides { lhs, constant: constants::kalaj(p), rhs_integral, power: 1.0 }.report(
        TheoremId::Kalaj,
        p,
        without_curve(f),
    ))
}

/// Smallest boundary sample below which `U` counts as negative.
const NONNEGATIVE_SLACK: f64 = 1e-12;
const NONNEGATIVE_SAMPLES: usize = 4096;

/// Conjugate-function bound `∫_T |V|^p ≤ (2π)^{1−p} sec(πp/2) (∫_T U)^p` for a nonnegative
/// harmonic `U` with conjugate `V`, `V(0) = 0`, together with the Jensen bound
/// `∫_T U^p ≤ (2π)^{1−p} (∫_T U)^p`. The report passes when both do.
pub fn verify_kolmogorov(u: &FunctionSpec, p: f64, opts: &QuadOptions) -> Result<InequalityReport> {
    check_p(p, p > 0.0 && p < 1.0, "the conjugate-function inequality needs 0 < p < 1")?;
    let s = coefficient_form(u, "the conjugate-function inequality")?;
    if !s.is_real_valued() {
        return Err(LabError::domain("the conjugate-function inequality needs a real-valued U"));
    }
    let min = (0..NONNEGATIVE_SAMPLES)
        .map(|j| s.eval(Complex64::from_polar(1.0, 2.0 * PI * j as f64 / NONNEGATIVE_SAMPLES as f64)).re)
        .fold(f64::INFINITY, f64::min);
    if min < -NONNEGATIVE_SLACK {
        return Err(LabError::domain(format!("boundary data of U is negative (min {min:e})")));
    }
    let v = s.conjugate()?;
    let on_circle = |series: &HarmonicSeries, q: f64| {
        periodic_integral(&|t| series.eval(Complex64::from_polar(1.0, t)).norm().powf(q), &[], opts)
    };
    // U ≥ 0 on the circle, so ∫|U| = ∫U
    let mass = on_circle(&s, 1.0)?;
    let conj =
        Sides { lhs: on_circle(&v, p)?, constant: constants::kolmogorov(p), rhs_integral: mass, power: p }
            .report(TheoremId::Kolmogorov, p, without_curve(u));
    let mut jensen =
        Sides { lhs: on_circle(&s, p)?, constant: constants::jensen(p), rhs_integral: mass, power: p }
            .report(TheoremId::Kolmogorov, p, without_curve(u));
    jensen.note = Some("Jensen bound".into());
    let mut main = conj.clone();
    main.note = Some("conjugate bound; companions: conjugate, Jensen".into());
    main.set_verdict(Verdict::all([conj.verdict, jensen.verdict]));
    main.companions = vec![conj, jensen];
    Ok(main)
}

/// Inputs of the double-series inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertInput {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub theta: f64,
}

/// Neumaier-compensated sum with the sum of absolute values.
fn compensated_sum(terms: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut s, mut c, mut abs) = (0.0f64, 0.0f64, 0.0f64);
    for x in terms {
        let t = s + x;
        c += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
        abs += x.abs();
    }
    (s + c, abs)
}

/// Left side of the double-series inequality, with a rounding bound.
pub fn hilbert_double_sum(a: &[f64], b: &[f64], theta: f64) -> (f64, f64) {
    let n = a.len();
    let terms = (0..n).flat_map(|k| {
        (0..n).map(move |l| {
            let (kf, lf) = (k as f64, l as f64);
            ((a[k] * a[l] + b[k] * b[l]) * ((kf - lf) * 0.5 * theta).cos()
                + 2.0 * a[k] * b[l] * ((kf + lf) * 0.5 * theta).cos())
                / (kf + lf + 1.0)
        })
    });
    let (s, abs) = compensated_sum(terms);
    (s, 8.0 * f64::EPSILON * abs)
}

/// Double-series inequality for nonnegative `a`, `b` of equal length and `θ ∈ [0, π/2)`,
/// with constant `2π/(sin(θ/2) + cos(θ/2))`. Exact finite summation, no quadrature.
pub fn verify_hilbert(a: &[f64], b: &[f64], theta: f64) -> Result<InequalityReport> {
    if a.len() != b.len() {
        return Err(LabError::domain("sequences must have equal length"));
    }
    if a.iter().chain(b).any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(LabError::domain("sequences must be finite and nonnegative"));
    }
    if !(0.0..PI / 2.0).contains(&theta) {
        return Err(LabError::domain(format!("theta must lie in [0, π/2) (got {theta})")));
    }
    let (lhs, lhs_err) = hilbert_double_sum(a, b, theta);
    let (norm, norm_abs) = compensated_sum(a.iter().chain(b).map(|x| x * x));
    let rhs_integral = QuadratureResult {
        value: norm,
        error_estimate: 4.0 * f64::EPSILON * norm_abs,
        evaluations: a.len(),
        converged: true,
    };
    let lhs = QuadratureResult {
        value: lhs,
        error_estimate: lhs_err,
        evaluations: a.len() * a.len(),
        converged: true,
    };
    Ok(Sides { lhs, constant: constants::hilbert(theta), rhs_integral, power: 1.0 }.report(
        TheoremId::Hilbert,
        2.0,
        ReportInputs::Sequences(HilbertInput { a: a.to_vec(), b: b.to_vec(), theta }),
    ))
}

/// `∫₀¹ max_{|z|=r} |f(z)|^p dr ≤ ∫_T |f|^p |dz|`, `p ≥ 2`, for `f` continuous on the
/// closed disk.
pub fn verify_maximal(f: &FunctionSpec, p: f64, opts: &QuadOptions) -> Result<InequalityReport> {
    check_p(p, p >= 2.0, "the radial-maximum inequality needs p ≥ 2")?;
    if !f.singularities().is_empty() {
        return Err(LabError::domain("the radial-maximum inequality needs f continuous on the closed disk"));
    }
    let angle_tol = opts.tol.max(1e-12);
    let mut lhs = quadrature::radial_integral(|r| circle_max(|z| f.eval(z), r, p, angle_tol), opts)?;
    // the circle maximum is itself accurate to second order in the angle tolerance
    lhs.error_estimate += opts.tol * lhs.value;
    Ok(Sides { lhs, constant: constants::MAXIMAL, rhs_integral: boundary(f, p, opts)?, power: 1.0 }.report(
        TheoremId::Maximal,
        p,
        without_curve(f),
    ))
}

/// One row of the blow-up table for `f = Re{((1+z)/(1−z))^p}` on the diameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowupRow {
    pub p: f64,
    /// `∫₋₁¹ |f|^p dx`.
    pub lhs: f64,
    pub lhs_error: f64,
    /// `∫_T |f| |dz|`.
    pub rhs_integral: f64,
    pub rhs_error: f64,
    pub ratio: f64,
    /// `ratio / sec(πp/2)`.
    pub normalized_ratio: f64,
    /// `s/sin(πs)` with `s = p²`.
    pub closed_form_ratio: f64,
    pub converged: bool,
}

/// `2πs/sin(πs)`, `s = p²`: `∫₋₁¹ ((1+x)/(1−x))^s dx`.
pub fn cayley_diameter_closed_form(p: f64) -> f64 {
    let s = p * p;
    2.0 * PI * s / (PI * s).sin()
}

/// Ratio `∫_diameter |f|^p / ∫_T |f|` over a grid of `p ∈ (0, 1)` for the Cayley power
/// family. It grows like `sec(πp/2)` as `p → 1`, so no single constant serves all `p ≤ 1`.
pub fn blowup_study(p_grid: &[f64], opts: &QuadOptions) -> Result<Vec<BlowupRow>> {
    p_grid
        .iter()
        .map(|&p| {
            check_p(p, p > 0.0 && p < 1.0, "the blow-up study needs p in (0, 1)")?;
            let f = FunctionSpec::named(crate::harmonic::NamedFunction::CayleyPower { p })?;
            let lhs = contour_integral(&f, p, &ConvexCurve::diameter(), opts)?;
            let rhs = boundary(&f, 1.0, opts)?;
            let ratio = lhs.value / rhs.value;
            Ok(BlowupRow {
                p,
                lhs: lhs.value,
                lhs_error: lhs.error_estimate,
                rhs_integral: rhs.value,
                rhs_error: rhs.error_estimate,
                ratio,
                normalized_ratio: ratio / constants::sec_half_pi(p),
                closed_form_ratio: cayley_diameter_closed_form(p) / (2.0 * PI),
                converged: lhs.converged && rhs.converged,
            })
        })
        .collect()
}
