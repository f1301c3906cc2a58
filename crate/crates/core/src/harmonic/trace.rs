use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::function::{FunctionSpec, Singularity};
use super::series::HarmonicSeries;
use crate::error::{LabError, Result};

/// Boundary values `f(e^{it})` on the unit circle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "form")]
pub enum BoundaryTrace {
    /// `values[j] = f(e^{2πij/n})`, `n ≥ 4` a power of two.
    Sampled { values: Vec<Complex64> },
    /// Evaluated on demand from `function`, with a priori singularity information.
    ClosedForm { function: Box<FunctionSpec>, singularities: Vec<Singularity>, n: usize },
}

fn check_len(n: usize) -> Result<()> {
    if n < 4 || !n.is_power_of_two() {
        return Err(LabError::domain(format!("trace sample count must be a power of two >= 4 (got {n})")));
    }
    Ok(())
}

impl BoundaryTrace {
    pub fn sampled(values: Vec<Complex64>) -> Result<Self> {
        check_len(values.len())?;
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(LabError::domain("trace samples must be finite"));
        }
        Ok(BoundaryTrace::Sampled { values })
    }

    pub fn closed_form(function: FunctionSpec, singularities: Vec<Singularity>, n: usize) -> Result<Self> {
        check_len(n)?;
        for s in &singularities {
            if !(0.0..2.0 * PI).contains(&s.angle) {
                return Err(LabError::domain(format!("singular angle {} outside [0, 2π)", s.angle)));
            }
            if !(0.0..1.0).contains(&s.exponent) {
                return Err(LabError::domain(format!("blow-up exponent {} outside [0, 1)", s.exponent)));
            }
        }
        Ok(BoundaryTrace::ClosedForm { function: Box::new(function), singularities, n })
    }

    /// Closed-form trace of `f` carrying its own singularity list.
    pub(crate) fn exact(f: FunctionSpec) -> Self {
        let singularities = f.singularities();
        BoundaryTrace::ClosedForm { function: Box::new(f), singularities, n: 256 }
    }

    pub fn len(&self) -> usize {
        match self {
            BoundaryTrace::Sampled { values } => values.len(),
            BoundaryTrace::ClosedForm { n, .. } => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> Option<&[Complex64]> {
        match self {
            BoundaryTrace::Sampled { values } => Some(values),
            BoundaryTrace::ClosedForm { .. } => None,
        }
    }

    pub fn singularities(&self) -> &[Singularity] {
        match self {
            BoundaryTrace::Sampled { .. } => &[],
            BoundaryTrace::ClosedForm { singularities, .. } => singularities,
        }
    }

    /// Boundary value at angle `t`. Sampled traces use their trigonometric interpolant.
    pub fn value(&self, t: f64) -> Complex64 {
        match self {
            BoundaryTrace::Sampled { .. } => {
                // interpolant is cheap to rebuild relative to the callers that need this path
                self.interpolant()
                    .map(|s| s.eval(Complex64::from_polar(1.0, t)))
                    .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
            }
            BoundaryTrace::ClosedForm { function, .. } => function.trace_value(t),
        }
    }

    /// The harmonic function whose boundary values interpolate the samples: the
    /// trigonometric interpolant `Σ_{|k| ≤ n/2} c_k e^{ikt}` with the Nyquist mode split
    /// evenly between `±n/2`, written as a normalized series (`a_k = c_k`,
    /// `b_k = conj(c_{−k})`). Its Poisson extension is the series itself.
    pub fn interpolant(&self) -> Result<HarmonicSeries> {
        let BoundaryTrace::Sampled { values } = self else {
            return Err(LabError::domain("closed-form traces have no finite interpolant"));
        };
        let n = values.len();
        let mut buf = values.clone();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let scale = 1.0 / n as f64;
        let half = n / 2;
        let mut a = Vec::with_capacity(half + 1);
        let mut b = Vec::with_capacity(half + 1);
        a.push(buf[0] * scale);
        b.push(Complex64::new(0.0, 0.0));
        for k in 1..half {
            a.push(buf[k] * scale);
            b.push((buf[n - k] * scale).conj());
        }
        let nyquist = buf[half] * (0.5 * scale);
        a.push(nyquist);
        b.push(nyquist.conj());
        HarmonicSeries::new(a, b)
    }
}
