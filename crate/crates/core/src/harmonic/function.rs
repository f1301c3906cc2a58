use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::series::HarmonicSeries;
use super::trace::BoundaryTrace;
use crate::error::{LabError, Result};

/// Which half of the decomposition a monomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    Analytic,
    CoAnalytic,
}

/// Closed-form function families. Serialized as `{"name": ..., "params": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "snake_case")]
pub enum NamedFunction {
    Constant {
        c: Complex64,
    },
    Monomial {
        k: u32,
        part: Part,
    },
    /// `Re{(1 − ρ² z²)^{−1/p}}`.
    RfExtremal {
        p: f64,
        rho: f64,
    },
    /// `Re{((1+z)/(1−z))^p}`, `0 < p < 1`.
    CayleyPower {
        p: f64,
    },
    /// `((1+z)/(1−z))^p`, analytic.
    HalfPlane {
        p: f64,
    },
    RandomPoly {
        seed: u64,
        degree: usize,
    },
    /// `1/(1 − w z)`, analytic, `|w| < 1`.
    CauchyKernel {
        w: Complex64,
    },
}

/// A point of the unit circle where a function (or integrand) is singular or sharply peaked.
///
/// `exponent` bounds the local blow-up: `|f(z)| ≲ |z − e^{iθ}|^{−exponent}`. An exponent of
/// zero marks a bounded but near-singular point (a peak or a non-smooth zero).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Singularity {
    pub angle: f64,
    pub exponent: f64,
}

impl Singularity {
    pub fn point(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }
}

/// Angle reduced to `(−π, π]`.
pub(crate) fn canonical_angle(t: f64) -> f64 {
    if t > -PI && t <= PI {
        return t;
    }
    let mut x = t.rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    x
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

impl NamedFunction {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NamedFunction::Constant { c } if !(c.re.is_finite() && c.im.is_finite()) => {
                Err(LabError::domain("constant must be finite"))
            }
            NamedFunction::RfExtremal { p, rho } if !(p > 1.0 && rho > 0.0 && rho < 1.0) => {
                Err(LabError::domain(format!("rf_extremal needs p > 1 and 0 < rho < 1 (p={p}, rho={rho})")))
            }
            NamedFunction::CayleyPower { p } if !(p > 0.0 && p < 1.0) => {
                Err(LabError::domain(format!("cayley_power needs 0 < p < 1 (p={p})")))
            }
            NamedFunction::HalfPlane { p } if !(p > 0.0 && p < 1.0) => {
                Err(LabError::domain(format!("half_plane needs 0 < p < 1 (p={p})")))
            }
            NamedFunction::RandomPoly { degree, .. } if degree > 64 => {
                Err(LabError::domain("random_poly degree must be at most 64"))
            }
            NamedFunction::CauchyKernel { w } if w.norm() >= 1.0 => {
                Err(LabError::domain("cauchy_kernel needs |w| < 1"))
            }
            _ => Ok(()),
        }
    }

    /// Polynomial families expand to an exact series; the others stay in closed form.
    pub fn as_series(&self) -> Option<HarmonicSeries> {
        match *self {
            NamedFunction::Constant { c } => Some(HarmonicSeries::constant(c)),
            NamedFunction::Monomial { k, part } => {
                let mut coeffs = vec![Complex64::new(0.0, 0.0); k as usize + 1];
                coeffs[k as usize] = one();
                let zero = vec![];
                Some(match part {
                    Part::Analytic => HarmonicSeries::new(coeffs, zero).ok()?,
                    Part::CoAnalytic => HarmonicSeries::new(zero, coeffs).ok()?,
                })
            }
            NamedFunction::RandomPoly { seed, degree } => Some(crate::suite::random_series(seed, degree)),
            _ => None,
        }
    }

    fn cayley_ratio_near(anchor: Complex64, offset: Complex64) -> Complex64 {
        smith_div((one() + anchor) + offset, (one() - anchor) - offset)
    }

    fn eval_near(&self, anchor: Complex64, offset: Complex64) -> Complex64 {
        match *self {
            NamedFunction::CayleyPower { p } => {
                Complex64::new(Self::cayley_ratio_near(anchor, offset).powf(p).re, 0.0)
            }
            NamedFunction::HalfPlane { p } => Self::cayley_ratio_near(anchor, offset).powf(p),
            _ => self.eval(anchor + offset),
        }
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        match *self {
            NamedFunction::RfExtremal { p, rho } => {
                let w = one() - rho * rho * z * z;
                Complex64::new(w.powf(-1.0 / p).re, 0.0)
            }
            NamedFunction::CayleyPower { p } => {
                Complex64::new(smith_div(one() + z, one() - z).powf(p).re, 0.0)
            }
            NamedFunction::HalfPlane { p } => smith_div(one() + z, one() - z).powf(p),
            NamedFunction::CauchyKernel { w } => one() / (one() - w * z),
            // polynomial families are evaluated through their series
            _ => self.as_series().map(|s| s.eval(z)).unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
        }
    }

    /// Boundary value at angle `t`.
    ///
    /// On the circle `(1+e^{it})/(1−e^{it}) = i·cot(t/2)`, whose argument is `+π/2` for
    /// `0 < t < π` and `−π/2` for `π < t < 2π`. With the principal branch,
    /// `(i cot(t/2))^p = |cot(t/2)|^p e^{±iπp/2}`, so the real part is
    /// `cos(πp/2)·|cot(t/2)|^p` on both halves.
    fn trace_value(&self, t: f64) -> Complex64 {
        let t = canonical_angle(t);
        match *self {
            NamedFunction::CayleyPower { p } => {
                let cot = (0.5 * t).cos() / (0.5 * t).sin();
                Complex64::new((0.5 * PI * p).cos() * cot.abs().powf(p), 0.0)
            }
            NamedFunction::HalfPlane { p } => {
                let cot = (0.5 * t).cos() / (0.5 * t).sin();
                Complex64::from_polar(cot.abs().powf(p), cot.signum() * 0.5 * PI * p)
            }
            _ => self.eval(Complex64::from_polar(1.0, t)),
        }
    }

    fn singularities(&self) -> Vec<Singularity> {
        match *self {
            NamedFunction::CayleyPower { p } | NamedFunction::HalfPlane { p } => {
                vec![Singularity { angle: 0.0, exponent: p }, Singularity { angle: PI, exponent: 0.0 }]
            }
            NamedFunction::RfExtremal { .. } => {
                vec![Singularity { angle: 0.0, exponent: 0.0 }, Singularity { angle: PI, exponent: 0.0 }]
            }
            NamedFunction::CauchyKernel { w } if w.norm() > 0.0 => {
                // 1/(1 − w z) peaks at z = conj(w)/|w|
                vec![Singularity { angle: (-w.arg()).rem_euclid(2.0 * PI), exponent: 0.0 }]
            }
            _ => Vec::new(),
        }
    }

    fn is_analytic(&self) -> bool {
        match self {
            NamedFunction::Constant { .. }
            | NamedFunction::HalfPlane { .. }
            | NamedFunction::CauchyKernel { .. } => true,
            NamedFunction::Monomial { part, k } => *part == Part::Analytic || *k == 0,
            NamedFunction::RandomPoly { .. } => false,
            NamedFunction::RfExtremal { .. } | NamedFunction::CayleyPower { .. } => false,
        }
    }
}

/// A harmonic function on the disk, given by coefficients, by boundary data, or in closed form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionSpec {
    Series(HarmonicSeries),
    /// Poisson extension of sampled boundary data.
    Poisson(PoissonData),
    Named(NamedFunction),
}

/// Boundary samples together with their harmonic extension, kept as an exact series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoisson", into = "RawPoisson")]
pub struct PoissonData {
    trace: BoundaryTrace,
    extension: HarmonicSeries,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawPoisson {
    samples: Vec<Complex64>,
}

impl TryFrom<RawPoisson> for PoissonData {
    type Error = LabError;

    fn try_from(raw: RawPoisson) -> Result<Self> {
        PoissonData::new(BoundaryTrace::sampled(raw.samples)?)
    }
}

impl From<PoissonData> for RawPoisson {
    fn from(p: PoissonData) -> Self {
        RawPoisson { samples: p.trace.samples().map(<[_]>::to_vec).unwrap_or_default() }
    }
}

impl PoissonData {
    pub fn new(trace: BoundaryTrace) -> Result<Self> {
        let extension = trace.interpolant()?;
        Ok(PoissonData { trace, extension })
    }

    pub fn trace(&self) -> &BoundaryTrace {
        &self.trace
    }

    pub fn extension(&self) -> &HarmonicSeries {
        &self.extension
    }
}

impl FunctionSpec {
    pub fn series(s: HarmonicSeries) -> Self {
        FunctionSpec::Series(s)
    }

    pub fn named(n: NamedFunction) -> Result<Self> {
        n.validate()?;
        Ok(FunctionSpec::Named(n))
    }

    /// Poisson extension of samples `values[j] = φ(2πj/n)`.
    pub fn poisson(values: Vec<Complex64>) -> Result<Self> {
        Ok(FunctionSpec::Poisson(PoissonData::new(BoundaryTrace::sampled(values)?)?))
    }

    /// Poisson extension of a real function sampled at `n` equispaced angles.
    pub fn poisson_of(n: usize, phi: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..n).map(|j| Complex64::new(phi(2.0 * PI * j as f64 / n as f64), 0.0)).collect();
        Self::poisson(values)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FunctionSpec::Named(n) => n.validate(),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            FunctionSpec::Series(s) => s.eval(z),
            FunctionSpec::Poisson(p) => p.extension.eval(z),
            FunctionSpec::Named(n) => n.eval(z),
        }
    }

    /// Evaluates at `anchor + offset` without forming the sum when the closed form is
    /// singular at `anchor`, so points within rounding distance of a singularity keep
    /// their relative accuracy.
    pub fn eval_near(&self, anchor: Complex64, offset: Complex64) -> Complex64 {
        match self {
            FunctionSpec::Named(n) => n.eval_near(anchor, offset),
            _ => self.eval(anchor + offset),
        }
    }

    /// Radial limit at `e^{it}`.
    pub fn trace_value(&self, t: f64) -> Complex64 {
        match self {
            FunctionSpec::Series(s) => s.eval(Complex64::from_polar(1.0, t)),
            FunctionSpec::Poisson(p) => p.extension.eval(Complex64::from_polar(1.0, t)),
            FunctionSpec::Named(n) => n.trace_value(t),
        }
    }

    pub fn singularities(&self) -> Vec<Singularity> {
        match self {
            FunctionSpec::Named(n) => n.singularities(),
            _ => Vec::new(),
        }
    }

    /// Exact coefficient form when one exists.
    pub fn as_series(&self) -> Option<HarmonicSeries> {
        match self {
            FunctionSpec::Series(s) => Some(s.clone()),
            FunctionSpec::Poisson(p) => Some(p.extension.clone()),
            FunctionSpec::Named(n) => n.as_series(),
        }
    }

    pub fn is_analytic(&self) -> bool {
        match self {
            FunctionSpec::Named(n) => match n.as_series() {
                Some(s) => s.is_analytic(),
                None => n.is_analytic(),
            },
            _ => self.as_series().is_some_and(|s| s.is_analytic()),
        }
    }

    /// Discretizes the boundary values (see [`BoundaryTrace`]).
    pub fn boundary_trace(&self, n: usize) -> Result<BoundaryTrace> {
        self.validate()?;
        match self {
            FunctionSpec::Named(
                named @ (NamedFunction::CayleyPower { .. }
                | NamedFunction::HalfPlane { .. }
                | NamedFunction::RfExtremal { .. }
                | NamedFunction::CauchyKernel { .. }),
            ) => BoundaryTrace::closed_form(FunctionSpec::Named(named.clone()), named.singularities(), n),
            _ => {
                let values = (0..n).map(|j| self.trace_value(2.0 * PI * j as f64 / n as f64)).collect();
                BoundaryTrace::sampled(values)
            }
        }
    }

    /// The exact boundary object used by the integrators: a closed-form trace that
    /// evaluates the function itself on the circle.
    pub fn exact_trace(&self) -> BoundaryTrace {
        BoundaryTrace::exact(self.clone())
    }

    /// Short human-readable label for CSV output.
    pub fn label(&self) -> String {
        match self {
            FunctionSpec::Series(s) => format!("series(deg={})", s.degree()),
            FunctionSpec::Poisson(p) => format!("poisson(n={})", p.trace.len()),
            FunctionSpec::Named(n) => match n {
                NamedFunction::Constant { c } => format!("constant({}{:+}i)", c.re, c.im),
                NamedFunction::Monomial { k, part } => format!("monomial({k},{part:?})"),
                NamedFunction::RfExtremal { p, rho } => format!("rf_extremal({p},{rho})"),
                NamedFunction::CayleyPower { p } => format!("cayley_power({p})"),
                NamedFunction::HalfPlane { p } => format!("half_plane({p})"),
                NamedFunction::RandomPoly { seed, degree } => {
                    format!("random_poly({seed},{degree})")
                }
                NamedFunction::CauchyKernel { w } => format!("cauchy_kernel({}{:+}i)", w.re, w.im),
            },
        }
    }
}

/// Complex quotient without squaring the denominator, so tiny denominators stay finite.
pub(crate) fn smith_div(n: Complex64, d: Complex64) -> Complex64 {
    if d.re.abs() >= d.im.abs() {
        let r = d.im / d.re;
        let den = d.re + d.im * r;
        Complex64::new((n.re + n.im * r) / den, (n.im - n.re * r) / den)
    } else {
        let r = d.re / d.im;
        let den = d.re * r + d.im;
        Complex64::new((n.re * r + n.im) / den, (n.im * r - n.re) / den)
    }
}
