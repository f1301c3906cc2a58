//! Seeded generators for the randomized verification suites.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use serde::{Deserialize, Serialize};

use crate::curves::ConvexCurve;
use crate::error::{LabError, Result};
use crate::harmonic::{FunctionSpec, HarmonicSeries};
use crate::inequalities::{self as ineq, HilbertInput, InequalityReport, ReportInputs, TheoremId};
use crate::par::{par_map, Execution};
use crate::quadrature::QuadOptions;

/// Largest degree accepted by the random generators.
pub const MAX_DEGREE: usize = 64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// One normalized harmonic polynomial of degree `degree` with standard-normal
/// coefficients (real and imaginary parts drawn independently).
pub fn random_series(seed: u64, degree: usize) -> HarmonicSeries {
    draw_series(&mut rng(seed), degree.min(MAX_DEGREE), false)
}

fn draw_series(rng: &mut ChaCha8Rng, degree: usize, analytic: bool) -> HarmonicSeries {
    let a: Vec<_> = (0..=degree).map(|_| normal_complex(rng)).collect();
    let b: Vec<_> = if analytic { Vec::new() } else { (0..=degree).map(|_| normal_complex(rng)).collect() };
    HarmonicSeries::new(a, b).expect("normal draws are finite").normalize()
}

/// `count` normalized harmonic polynomials of degree `degree`, reproducible by `seed`.
pub fn generate_random_suite(seed: u64, count: usize, degree: usize) -> Vec<FunctionSpec> {
    let mut rng = rng(seed);
    (0..count).map(|_| FunctionSpec::series(draw_series(&mut rng, degree.min(MAX_DEGREE), false))).collect()
}

/// `count` analytic polynomials (`g = 0`).
pub fn generate_analytic_suite(seed: u64, count: usize, degree: usize) -> Vec<FunctionSpec> {
    let mut rng = rng(seed);
    (0..count).map(|_| FunctionSpec::series(draw_series(&mut rng, degree.min(MAX_DEGREE), true))).collect()
}

/// Circle with center modulus in `[0, 0.9)` and radius a random fraction of the room left.
pub fn random_circle(rng: &mut ChaCha8Rng) -> ConvexCurve {
    let rc = rng.random_range(0.0..0.9);
    let center = Complex64::from_polar(rc, rng.random_range(0.0..2.0 * PI));
    let radius = (1.0 - rc) * rng.random_range(0.05..0.99);
    ConvexCurve::Circle { center, radius }
}

/// Convex polygon with `n` vertices at sorted random angles on a circle inside the disk.
pub fn random_polygon(rng: &mut ChaCha8Rng, n: usize) -> ConvexCurve {
    let rc = rng.random_range(0.0..0.5);
    let center = Complex64::from_polar(rc, rng.random_range(0.0..2.0 * PI));
    let radius = (0.98 - rc) * rng.random_range(0.2..1.0);
    let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
    angles.sort_by(f64::total_cmp);
    let vertices = angles.iter().map(|&t| center + Complex64::from_polar(radius, t)).collect();
    ConvexCurve::Polygon { vertices }
}

pub fn random_ellipse(rng: &mut ChaCha8Rng) -> ConvexCurve {
    let alpha = rng.random_range(0.1..0.7);
    let beta = rng.random_range(0.05..alpha);
    let room = 0.98 - alpha;
    let center = Complex64::from_polar(rng.random_range(0.0..room), rng.random_range(0.0..2.0 * PI));
    ConvexCurve::Ellipse { center, semi_axes: (alpha, beta), rotation: rng.random_range(0.0..PI) }
}

/// The standard curve family: 5 random circles, 5 random convex polygons (12–32
/// vertices), 3 ellipses, and the diameter.
pub fn standard_curves(seed: u64) -> Result<Vec<ConvexCurve>> {
    let mut rng = rng(seed ^ 0x5eed_c0de);
    let mut out = Vec::with_capacity(14);
    for _ in 0..5 {
        out.push(random_circle(&mut rng).validated()?);
    }
    for _ in 0..5 {
        let n = rng.random_range(12..=32);
        out.push(random_polygon(&mut rng, n).validated()?);
    }
    for _ in 0..3 {
        out.push(random_ellipse(&mut rng).validated()?);
    }
    out.push(ConvexCurve::diameter());
    Ok(out)
}

/// Circles only (for the circle theorems).
pub fn random_circles(seed: u64, count: usize) -> Vec<ConvexCurve> {
    let mut rng = rng(seed ^ 0xc1c1e);
    (0..count).map(|_| random_circle(&mut rng)).collect()
}

/// Nonnegative sequences for the double-series inequality.
pub fn random_nonnegative(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(0.0..1.0)).collect()
}

/// Real, nonnegative harmonic polynomials `U = c + Re h` with `min_T U` a small positive
/// margin, for the conjugate-function suite.
pub fn generate_nonnegative_suite(seed: u64, count: usize, degree: usize) -> Vec<FunctionSpec> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let degree = degree.clamp(1, MAX_DEGREE);
            let c: Vec<Complex64> = (0..=degree).map(|_| normal_complex(&mut rng)).collect();
            let mut a: Vec<Complex64> = c.iter().map(|x| 0.5 * x).collect();
            let mut b = a.clone();
            a[0] = Complex64::new(0.0, 0.0);
            b[0] = Complex64::new(0.0, 0.0);
            let u = HarmonicSeries::new(a.clone(), b.clone()).expect("finite");
            let samples = 16 * 64 * (degree + 1);
            let min = (0..samples)
                .map(|j| u.eval(Complex64::from_polar(1.0, 2.0 * PI * j as f64 / samples as f64)).re)
                .fold(f64::INFINITY, f64::min);
            let scale: f64 = c.iter().map(|x| x.norm()).sum();
            a[0] = Complex64::new(-min + 0.05 * scale, 0.0);
            FunctionSpec::series(HarmonicSeries::new(a, b).expect("finite"))
        })
        .collect()
}

/// What a verification suite runs over. Unset lists fall back to seeded random families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSpec {
    pub seed: u64,
    pub count: usize,
    pub degree: usize,
    #[serde(default)]
    pub functions: Option<Vec<FunctionSpec>>,
    #[serde(default)]
    pub curves: Option<Vec<ConvexCurve>>,
    #[serde(default)]
    pub ps: Option<Vec<f64>>,
    /// Angles for the double-series inequality.
    #[serde(default = "default_thetas")]
    pub thetas: Vec<f64>,
    /// Sequence length for the double-series inequality.
    #[serde(default = "default_hilbert_len")]
    pub hilbert_len: usize,
}

pub fn default_thetas() -> Vec<f64> {
    vec![0.0, PI / 4.0, PI / 2.0 - 0.01]
}

fn default_hilbert_len() -> usize {
    64
}

impl SuiteSpec {
    pub fn random(seed: u64, count: usize, degree: usize) -> Self {
        SuiteSpec {
            seed,
            count,
            degree,
            functions: None,
            curves: None,
            ps: None,
            thetas: default_thetas(),
            hilbert_len: default_hilbert_len(),
        }
    }
}

/// Exponents used when a suite does not name its own.
pub fn default_p_grid(theorem: TheoremId) -> Vec<f64> {
    match theorem {
        TheoremId::Main => vec![1.1, 1.5, 2.0, 3.0, 4.0],
        TheoremId::Gabriel | TheoremId::Frazer => vec![0.5, 1.0, 2.0],
        TheoremId::RieszFejer => vec![1.5, 2.0, 3.0],
        // p = 2 is an identity for normalized series, hence always inconclusive
        TheoremId::Kalaj => vec![1.5, 2.5, 3.0],
        TheoremId::SmallP | TheoremId::Kolmogorov => vec![0.25, 0.5, 0.75],
        TheoremId::Circle => vec![1.0, 1.5, 2.0, 3.0],
        TheoremId::LemmaSum => vec![1.2, 2.0, 3.0],
        TheoremId::Maximal => vec![2.0, 3.0],
        TheoremId::Hilbert => vec![2.0],
    }
}

/// One verifier call.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Curve {
        theorem: TheoremId,
        function: FunctionSpec,
        second: Option<FunctionSpec>,
        curve: ConvexCurve,
        p: f64,
    },
    Boundary {
        theorem: TheoremId,
        function: FunctionSpec,
        p: f64,
    },
    Sequences(HilbertInput),
}

impl Instance {
    fn theorem(&self) -> TheoremId {
        match self {
            Instance::Curve { theorem, .. } | Instance::Boundary { theorem, .. } => *theorem,
            Instance::Sequences(_) => TheoremId::Hilbert,
        }
    }

    fn p(&self) -> f64 {
        match self {
            Instance::Curve { p, .. } | Instance::Boundary { p, .. } => *p,
            Instance::Sequences(_) => 2.0,
        }
    }

    fn inputs(&self) -> ReportInputs {
        match self {
            Instance::Curve { function, second, curve, .. } => ReportInputs::Function {
                function: function.clone(),
                second: second.clone(),
                curve: Some(curve.clone()),
            },
            Instance::Boundary { function, .. } => {
                ReportInputs::Function { function: function.clone(), second: None, curve: None }
            }
            Instance::Sequences(h) => ReportInputs::Sequences(h.clone()),
        }
    }

    pub fn run(&self, opts: &QuadOptions) -> Result<InequalityReport> {
        match self {
            Instance::Curve { theorem, function: f, second, curve: c, p } => match theorem {
                TheoremId::Gabriel => ineq::verify_gabriel_analytic(f, *p, c, opts),
                TheoremId::Main => ineq::verify_main_convex(f, *p, c, opts),
                TheoremId::SmallP => ineq::verify_small_p(f, *p, c, opts),
                TheoremId::Circle => ineq::verify_circle(f, *p, c, opts),
                TheoremId::Frazer => ineq::verify_frazer(f, *p, c, opts),
                TheoremId::LemmaSum => {
                    let g = second
                        .as_ref()
                        .ok_or_else(|| LabError::domain("sum inequality needs two functions"))?;
                    ineq::verify_lemma_sum(f, g, *p, c, opts)
                }
                other => Err(LabError::domain(format!("{other} takes no curve"))),
            },
            Instance::Boundary { theorem, function: f, p } => match theorem {
                TheoremId::RieszFejer => ineq::verify_riesz_fejer(f, *p, opts),
                TheoremId::Kalaj => ineq::verify_kalaj(f, *p, opts),
                TheoremId::Kolmogorov => ineq::verify_kolmogorov(f, *p, opts),
                TheoremId::Maximal => ineq::verify_maximal(f, *p, opts),
                other => Err(LabError::domain(format!("{other} needs a curve"))),
            },
            Instance::Sequences(h) => ineq::verify_hilbert(&h.a, &h.b, h.theta),
        }
    }
}

fn uses_curve(theorem: TheoremId) -> bool {
    matches!(
        theorem,
        TheoremId::Gabriel
            | TheoremId::Main
            | TheoremId::SmallP
            | TheoremId::Circle
            | TheoremId::Frazer
            | TheoremId::LemmaSum
    )
}

/// Expands a suite into verifier calls, ordered by function, then curve, then `p`.
pub fn instances(theorem: TheoremId, spec: &SuiteSpec) -> Result<Vec<Instance>> {
    let ps = spec.ps.clone().unwrap_or_else(|| default_p_grid(theorem));
    if theorem == TheoremId::Hilbert {
        let mut rng = rng(spec.seed ^ 0x4811_be27);
        let mut out = Vec::new();
        for _ in 0..spec.count {
            let a = random_nonnegative(&mut rng, spec.hilbert_len);
            let b = random_nonnegative(&mut rng, spec.hilbert_len);
            for &theta in &spec.thetas {
                out.push(Instance::Sequences(HilbertInput { a: a.clone(), b: b.clone(), theta }));
            }
        }
        return Ok(out);
    }
    let functions = match &spec.functions {
        Some(f) => f.clone(),
        None => match theorem {
            TheoremId::Gabriel | TheoremId::Frazer => {
                generate_analytic_suite(spec.seed, spec.count, spec.degree)
            }
            TheoremId::LemmaSum => generate_analytic_suite(spec.seed, 2 * spec.count, spec.degree),
            TheoremId::Kolmogorov => generate_nonnegative_suite(spec.seed, spec.count, spec.degree),
            _ => generate_random_suite(spec.seed, spec.count, spec.degree),
        },
    };
    let pairs: Vec<(FunctionSpec, Option<FunctionSpec>)> = if theorem == TheoremId::LemmaSum {
        if functions.len() % 2 != 0 {
            return Err(LabError::domain("the sum inequality takes functions in (h, g) pairs"));
        }
        functions.chunks(2).map(|w| (w[0].clone(), Some(w[1].clone()))).collect()
    } else {
        functions.into_iter().map(|f| (f, None)).collect()
    };
    if !uses_curve(theorem) {
        return Ok(pairs
            .into_iter()
            .flat_map(|(function, _)| {
                ps.iter().map(move |&p| Instance::Boundary { theorem, function: function.clone(), p })
            })
            .collect());
    }
    let curves = match &spec.curves {
        Some(c) => c.clone(),
        None if matches!(theorem, TheoremId::Circle | TheoremId::Frazer) => random_circles(spec.seed, 10),
        None => standard_curves(spec.seed)?,
    };
    let mut out = Vec::with_capacity(pairs.len() * curves.len() * ps.len());
    for (function, second) in &pairs {
        for curve in &curves {
            for &p in &ps {
                out.push(Instance::Curve {
                    theorem,
                    function: function.clone(),
                    second: second.clone(),
                    curve: curve.clone(),
                    p,
                });
            }
        }
    }
    Ok(out)
}

/// Runs every instance; output order equals input order. Domain errors abort the run;
/// numerical failures become inconclusive reports.
pub fn run_instances(
    items: &[Instance],
    opts: &QuadOptions,
    exec: Execution,
) -> Result<Vec<InequalityReport>> {
    par_map(exec, items, |inst| match inst.run(opts) {
        Err(LabError::NumericalFailure { message, .. }) => {
            Ok(InequalityReport::numerical_failure(inst.theorem(), inst.p(), inst.inputs(), message))
        }
        other => other,
    })
    .into_iter()
    .collect()
}

/// `instances` followed by `run_instances`.
pub fn run_suite(
    theorem: TheoremId,
    spec: &SuiteSpec,
    opts: &QuadOptions,
    exec: Execution,
) -> Result<Vec<InequalityReport>> {
    run_instances(&instances(theorem, spec)?, opts, exec)
}
