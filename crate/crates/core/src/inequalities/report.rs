use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HilbertInput;
use crate::curves::ConvexCurve;
use crate::error::LabError;
use crate::harmonic::FunctionSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Gabriel,
    Main,
    RieszFejer,
    SmallP,
    Circle,
    Frazer,
    LemmaSum,
    Kalaj,
    Kolmogorov,
    Hilbert,
    Maximal,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::Gabriel,
        TheoremId::Main,
        TheoremId::RieszFejer,
        TheoremId::SmallP,
        TheoremId::Circle,
        TheoremId::Frazer,
        TheoremId::LemmaSum,
        TheoremId::Kalaj,
        TheoremId::Kolmogorov,
        TheoremId::Hilbert,
        TheoremId::Maximal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Gabriel => "gabriel",
            TheoremId::Main => "main",
            TheoremId::RieszFejer => "riesz_fejer",
            TheoremId::SmallP => "small_p",
            TheoremId::Circle => "circle",
            TheoremId::Frazer => "frazer",
            TheoremId::LemmaSum => "lemma_sum",
            TheoremId::Kalaj => "kalaj",
            TheoremId::Kolmogorov => "kolmogorov",
            TheoremId::Hilbert => "hilbert",
            TheoremId::Maximal => "maximal",
        }
    }

    /// Exponent range the inequality is stated for.
    pub fn admits(self, p: f64) -> bool {
        if !p.is_finite() {
            return false;
        }
        match self {
            TheoremId::Gabriel | TheoremId::Frazer => p > 0.0,
            TheoremId::Main | TheoremId::RieszFejer | TheoremId::LemmaSum | TheoremId::Kalaj => p > 1.0,
            TheoremId::SmallP | TheoremId::Kolmogorov => p > 0.0 && p < 1.0,
            TheoremId::Circle => p >= 1.0,
            TheoremId::Maximal => p >= 2.0,
            TheoremId::Hilbert => p == 2.0,
        }
    }

    pub fn p_range(self) -> &'static str {
        match self {
            TheoremId::Gabriel | TheoremId::Frazer => "p > 0",
            TheoremId::Main | TheoremId::RieszFejer | TheoremId::LemmaSum | TheoremId::Kalaj => "p > 1",
            TheoremId::SmallP | TheoremId::Kolmogorov => "0 < p < 1",
            TheoremId::Circle => "p >= 1",
            TheoremId::Maximal => "p >= 2",
            TheoremId::Hilbert => "p = 2",
        }
    }

    /// One-line statement, for the catalog.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::Gabriel => "analytic h, p > 0, convex C: int_C |h|^p <= 2 int_T |h|^p",
            TheoremId::Main => "harmonic f, p > 1, convex C: int_C |f|^p <= c(p) int_T |f|^p, c = 4 (p >= 2) or 2 sec^p(pi/2p)",
            TheoremId::RieszFejer => "harmonic f, p > 1: int_[-1,1] |f|^p <= (1/2) sec^p(pi/2p) int_T |f|^p",
            TheoremId::SmallP => "harmonic f in h^1, 0 < p < 1: int_C |f|^p <= A(p) (int_T |f|)^p",
            TheoremId::Circle => "harmonic f, p >= 1, circle C with center at distance r: int_C |f|^p <= c int_T |f|^p, c = 1 (p >= 2) or 1 + r",
            TheoremId::Frazer => "analytic h, p > 0, circle C: int_C |h|^p <= int_T |h|^p",
            TheoremId::LemmaSum => "analytic h, g, p > 1, convex C: int_C (|h|+|g|)^p <= 2 int_T (|h|+|g|)^p",
            TheoremId::Kalaj => "normalized f = h + conj(g), p > 1: int_T (|h|^2+|g|^2)^(p/2) <= (1-|cos(pi/p)|)^(-p/2) int_T |f|^p",
            TheoremId::Kolmogorov => "U >= 0 harmonic, V its conjugate, 0 < p < 1: int_T |V|^p <= (2pi)^(1-p) sec(pi p/2) (int_T U)^p",
            TheoremId::Hilbert => "a, b >= 0, acute theta: weighted double series <= 2pi/(sin(theta/2)+cos(theta/2)) sum(a^2+b^2)",
            TheoremId::Maximal => "f continuous on the closed disk, p >= 2: int_0^1 max_|z|=r |f|^p dr <= int_T |f|^p",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == key)
            .ok_or_else(|| LabError::Parse(format!("unknown theorem '{s}'")))
    }
}

/// Outcome of a conservative comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `lhs + lhs_error ≤ rhs − rhs_error`.
    Pass,
    /// `lhs − lhs_error > rhs + rhs_error`.
    Fail,
    /// The error intervals straddle the threshold, or a quadrature did not converge.
    Inconclusive,
}

impl Verdict {
    pub fn decide(lhs: f64, lhs_error: f64, rhs: f64, rhs_error: f64) -> Verdict {
        if !(lhs.is_finite() && rhs.is_finite() && lhs_error.is_finite() && rhs_error.is_finite()) {
            Verdict::Inconclusive
        } else if lhs + lhs_error <= rhs - rhs_error {
            Verdict::Pass
        } else if lhs - lhs_error > rhs + rhs_error {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts.into_iter().fold(Verdict::Pass, |acc, v| match (acc, v) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        })
    }

    pub fn pass(self) -> Option<bool> {
        match self {
            Verdict::Pass => Some(true),
            Verdict::Fail => Some(false),
            Verdict::Inconclusive => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "true",
            Verdict::Fail => "false",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// What a report was computed from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportInputs {
    Function {
        function: FunctionSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        second: Option<FunctionSpec>,
        curve: Option<ConvexCurve>,
    },
    Sequences(HilbertInput),
}

/// JSON has no NaN or infinity; serde_json writes them as `null`, read back as NaN.
fn nullable_f64<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub theorem_id: TheoremId,
    pub p: f64,
    pub inputs: ReportInputs,
    #[serde(deserialize_with = "nullable_f64")]
    pub lhs: f64,
    #[serde(deserialize_with = "nullable_f64")]
    pub lhs_error: f64,
    #[serde(deserialize_with = "nullable_f64")]
    pub constant: f64,
    #[serde(deserialize_with = "nullable_f64")]
    pub rhs_integral: f64,
    #[serde(deserialize_with = "nullable_f64")]
    pub rhs: f64,
    #[serde(deserialize_with = "nullable_f64")]
    pub rhs_error: f64,
    #[serde(deserialize_with = "nullable_f64")]
    pub ratio: f64,
    #[serde(deserialize_with = "nullable_f64")]
    pub slack: f64,
    pub verdict: Verdict,
    /// `Some(true)` pass, `Some(false)` fail, `None` inconclusive.
    pub pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub companions: Vec<InequalityReport>,
}

impl InequalityReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        theorem_id: TheoremId,
        p: f64,
        inputs: ReportInputs,
        lhs: f64,
        lhs_error: f64,
        constant: f64,
        rhs_integral: f64,
        rhs: f64,
        rhs_error: f64,
        converged: bool,
    ) -> Self {
        let verdict =
            if converged { Verdict::decide(lhs, lhs_error, rhs, rhs_error) } else { Verdict::Inconclusive };
        let ratio = if rhs > 0.0 {
            lhs / rhs
        } else if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        InequalityReport {
            theorem_id,
            p,
            inputs,
            lhs,
            lhs_error,
            constant,
            rhs_integral,
            rhs,
            rhs_error,
            ratio,
            slack: rhs - lhs,
            verdict,
            pass: verdict.pass(),
            note: if converged { None } else { Some("quadrature did not converge".into()) },
            companions: Vec::new(),
        }
    }

    /// Inconclusive report for an instance whose integrals could not be computed.
    pub fn numerical_failure(theorem_id: TheoremId, p: f64, inputs: ReportInputs, message: String) -> Self {
        InequalityReport {
            theorem_id,
            p,
            inputs,
            lhs: f64::NAN,
            lhs_error: f64::INFINITY,
            constant: f64::NAN,
            rhs_integral: f64::NAN,
            rhs: f64::NAN,
            rhs_error: f64::INFINITY,
            ratio: f64::NAN,
            slack: f64::NAN,
            verdict: Verdict::Inconclusive,
            pass: None,
            note: Some(message),
            companions: Vec::new(),
        }
    }

    pub(crate) fn set_verdict(&mut self, verdict: Verdict) {
        self.verdict = verdict;
        self.pass = verdict.pass();
    }

    pub fn function(&self) -> Option<&FunctionSpec> {
        match &self.inputs {
            ReportInputs::Function { function, .. } => Some(function),
            ReportInputs::Sequences(_) => None,
        }
    }

    pub fn curve(&self) -> Option<&ConvexCurve> {
        match &self.inputs {
            ReportInputs::Function { curve, .. } => curve.as_ref(),
            ReportInputs::Sequences(_) => None,
        }
    }

    /// Curve label for tabular output; `-` when the inequality has no curve.
    pub fn curve_label(&self) -> String {
        match &self.inputs {
            ReportInputs::Sequences(h) => format!("theta={}", h.theta),
            ReportInputs::Function { curve: Some(c), .. } => c.label(),
            ReportInputs::Function { curve: None, .. } => "boundary".into(),
        }
    }
}
