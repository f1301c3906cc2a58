//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gabriel_lab::curves::ConvexCurve;
use gabriel_lab::extremal::{fractions_nondecreasing, sharpness_study_rf};
use gabriel_lab::harmonic::{
    log_sum_modulus, poisson_extend, submean_defect, FunctionSpec, HarmonicSeries, NamedFunction, Part,
};
use gabriel_lab::inequalities::{
    blowup_study, constants, verify_circle, verify_riesz_fejer, InequalityReport, TheoremId, Verdict,
};
use gabriel_lab::par::Execution;
use gabriel_lab::quadrature::{boundary_integral, contour_integral, QuadOptions};
use gabriel_lab::report::to_csv;
use gabriel_lab::suite::{generate_random_suite, random_circles, random_series, run_suite, SuiteSpec};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn tally(reports: &[InequalityReport]) -> (usize, usize, usize) {
    let count = |v| reports.iter().filter(|r| r.verdict == v).count();
    (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::Inconclusive))
}

fn all_pass(name: &str, reports: &[InequalityReport], min: usize) -> Check {
    let (pass, fail, inc) = tally(reports);
    ensure(
        pass == reports.len() && reports.len() >= min,
        format!("{name}: {pass}/{} pass, {fail} fail, {inc} inconclusive", reports.len()),
    )
}

fn opts() -> QuadOptions {
    QuadOptions::with_tol(1e-8)
}

/// Monomials over centered circles against `2πρ^{2k+1}`.
fn criterion_1() -> Check {
    let mut worst: f64 = 0.0;
    for k in 0..=8u32 {
        let f = FunctionSpec::named(NamedFunction::Monomial { k, part: Part::Analytic }).unwrap();
        for rho in [0.1, 0.5, 0.9] {
            let curve = ConvexCurve::circle(Complex64::new(0.0, 0.0), rho).unwrap();
            let q = contour_integral(&f, 2.0, &curve, &opts()).map_err(|e| e.to_string())?;
            let exact = 2.0 * PI * rho.powi(2 * k as i32 + 1);
            worst = worst.max((q.value - exact).abs());
        }
    }
    ensure(worst <= 1e-10, format!("max abs error {worst:.2e} (tol 1e-10)"))
}

/// Poisson extension of a sampled trace reproduces the polynomial inside the disk.
fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for i in 0..20u64 {
        let degree = rng.random_range(1..=8);
        let s = random_series(100 + i, degree);
        let f = FunctionSpec::series(s.clone());
        let trace = f.boundary_trace(256).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let z = Complex64::from_polar(0.9 * rng.random::<f64>().sqrt(), rng.random_range(0.0..2.0 * PI));
            let u = poisson_extend(&trace, z, &opts()).map_err(|e| e.to_string())?;
            worst = worst.max((u - s.eval(z)).norm());
        }
    }
    ensure(worst <= 1e-8, format!("max error {worst:.2e} over 2000 points (tol 1e-8)"))
}

/// `∫_R e^{2su} sech²u du`, which equals `∫₋₁¹ ((1+x)/(1−x))^s dx` under `x = tanh u`.
fn diameter_oracle(s: f64) -> f64 {
    let h = 1e-3;
    let n = (400.0 / h) as i64;
    (-n..=n)
        .map(|j| {
            let u = j as f64 * h;
            let sech = 1.0 / u.cosh();
            (2.0 * s * u).exp() * sech * sech
        })
        .sum::<f64>()
        * h
}

fn criterion_3() -> Check {
    let mut detail = Vec::new();
    let mut ok = true;
    for p in [0.5, 0.7, 0.9] {
        let f = FunctionSpec::named(NamedFunction::CayleyPower { p }).unwrap();
        let circle = boundary_integral(&f.exact_trace(), 1.0, &opts()).map_err(|e| e.to_string())?;
        let diameter =
            contour_integral(&f, p, &ConvexCurve::diameter(), &opts()).map_err(|e| e.to_string())?;
        let s = p * p;
        let oracle = diameter_oracle(s);
        let closed = 2.0 * PI * s / (PI * s).sin();
        let e1 = (circle.value - 2.0 * PI).abs();
        let e2 = (diameter.value - oracle).abs().max((diameter.value - closed).abs());
        ok &= e1 <= 1e-6 && e2 <= 1e-6;
        detail.push(format!("p={p}: circle err {e1:.1e}, diameter err {e2:.1e}"));
    }
    ensure(ok, detail.join("; "))
}

fn criterion_4() -> Check {
    let grid = [0.9, 0.95, 0.99];
    let rows = blowup_study(&grid, &opts()).map_err(|e| e.to_string())?;
    let closed = |p: f64| {
        let s = p * p;
        s / (PI * s).sin()
    };
    let within = rows.iter().all(|r| (r.ratio / closed(r.p) - 1.0).abs() <= 0.01);
    let first = rows[0].ratio;
    let last = rows[rows.len() - 1].ratio;
    let reference = (first - 1.4410).abs() <= 0.01 * 1.4410 && (last - 15.68).abs() <= 0.01 * 15.68;
    let normalized = rows.iter().all(|r| (0.1..=10.0).contains(&r.normalized_ratio));
    ensure(
        within && reference && last / first >= 10.0 && normalized,
        format!(
            "ratios {:?}, growth x{:.2}, ratio/sec in [{:.3}, {:.3}]",
            rows.iter().map(|r| format!("{:.4}", r.ratio)).collect::<Vec<_>>(),
            last / first,
            rows.iter().map(|r| r.normalized_ratio).fold(f64::INFINITY, f64::min),
            rows.iter().map(|r| r.normalized_ratio).fold(0.0, f64::max),
        ),
    )
}

fn criterion_5() -> Check {
    let spec = SuiteSpec { ps: Some(vec![1.1, 1.5, 2.0, 3.0, 4.0]), ..SuiteSpec::random(5, 200, 16) };
    let reports =
        run_suite(TheoremId::Main, &spec, &opts(), Execution::Parallel).map_err(|e| e.to_string())?;
    let constants_ok = reports.iter().all(|r| r.constant == constants::main(r.p));
    let branches = reports.iter().any(|r| r.constant == 4.0) && reports.iter().any(|r| r.constant != 4.0);
    let check = all_pass("main", &reports, 200 * 14 * 5)?;
    ensure(constants_ok && branches, format!("{check}; branch constants applied"))
}

fn criterion_6() -> Check {
    let exact = (2.0 * constants::sec_pow(2.0) - 4.0).abs();
    let main_two = (constants::main(2.0) - 4.0).abs();
    let mut worst: f64 = 0.0;
    for i in 1..=20 {
        let p = 1.0 + i as f64 / 21.0;
        let lhs = 2f64.powf(p / 2.0 + 1.0) * (1.0 - (PI / p).cos().abs()).powf(-p / 2.0);
        let rhs = 2.0 / (PI / (2.0 * p)).cos().powf(p);
        worst = worst.max(((lhs - rhs) / rhs).abs());
    }
    ensure(
        exact == 0.0 && main_two == 0.0 && worst <= 1e-12,
        format!("|2sec^2(pi/4) - 4| = {exact}, identity max rel err {worst:.1e}"),
    )
}

fn criterion_7() -> Check {
    let rungs = sharpness_study_rf(1.5, &[0.9, 0.99, 0.999], &opts()).map_err(|e| e.to_string())?;
    let last = rungs.last().unwrap().bound_fraction;
    // the same target stated per function: p = 2 on the ladder, and the diameter report itself
    let p2 = sharpness_study_rf(2.0, &[0.999], &opts()).map_err(|e| e.to_string())?[0].bound_fraction;
    let rf = FunctionSpec::named(NamedFunction::RfExtremal { p: 1.5, rho: 0.999 }).unwrap();
    let report = verify_riesz_fejer(&rf, 1.5, &opts()).map_err(|e| e.to_string())?;
    ensure(
        fractions_nondecreasing(&rungs) && last >= 0.8 && p2 >= 0.8 && report.ratio >= 0.8,
        format!(
            "p=1.5 fractions {:?}, nondecreasing {}, final {last:.4}; p=2 at rho=0.999: {p2:.4}; \
             diameter report ratio at p=1.5, rho=0.999: {:.4} (target >= 0.8 for all three)",
            rungs.iter().map(|r| format!("{:.4}", r.bound_fraction)).collect::<Vec<_>>(),
            fractions_nondecreasing(&rungs),
            report.ratio,
        ),
    )
}

fn criterion_8() -> Check {
    let frazer = run_suite(
        TheoremId::Frazer,
        &SuiteSpec { ps: Some(vec![0.5, 1.0, 2.0]), ..SuiteSpec::random(8, 100, 8) },
        &opts(),
        Execution::Parallel,
    )
    .map_err(|e| e.to_string())?;
    let frazer = all_pass("frazer", &frazer, 3000)?;
    let circle = run_suite(
        TheoremId::Circle,
        &SuiteSpec { ps: Some(vec![1.0, 1.5]), ..SuiteSpec::random(8, 50, 8) },
        &opts(),
        Execution::Parallel,
    )
    .map_err(|e| e.to_string())?;
    let circle = all_pass("circle p<2", &circle, 1000)?;

    let functions = generate_random_suite(9, 50, 8);
    let circles: Vec<ConvexCurve> = random_circles(9, 10)
        .into_iter()
        .filter(|c| match c {
            ConvexCurve::Circle { center, .. } => center.norm() > 0.0,
            _ => false,
        })
        .collect();
    let mut reports = Vec::new();
    for f in &functions {
        for c in &circles {
            for p in [2.0, 3.0] {
                reports.push(verify_circle(f, p, c, &opts()).map_err(|e| e.to_string())?);
            }
        }
    }
    let (pass, fail, inc) = tally(&reports);
    let mut reproducible = true;
    for r in reports.iter().filter(|r| r.verdict == Verdict::Fail) {
        let json = serde_json::to_string(r).map_err(|e| e.to_string())?;
        let back: InequalityReport = serde_json::from_str(&json).map_err(|e| e.to_string())?;
        let again = verify_circle(back.function().unwrap(), back.p, back.curve().unwrap(), &opts())
            .map_err(|e| e.to_string())?;
        reproducible &= again.lhs == r.lhs && again.rhs == r.rhs && again.verdict == Verdict::Fail;
    }
    let off_center =
        format!("off-center p>=2: {pass}/{} pass, {fail} counterexamples, {inc} inconclusive", reports.len());
    ensure((pass == reports.len()) || (fail > 0 && reproducible), format!("{frazer}; {circle}; {off_center}"))
}

fn criterion_9() -> Check {
    let runs: [(TheoremId, SuiteSpec); 6] = [
        (TheoremId::LemmaSum, SuiteSpec::random(91, 2, 8)),
        (TheoremId::Kalaj, SuiteSpec::random(92, 20, 8)),
        (TheoremId::Kolmogorov, SuiteSpec::random(93, 20, 8)),
        (TheoremId::SmallP, SuiteSpec::random(94, 2, 8)),
        (
            TheoremId::Hilbert,
            SuiteSpec {
                thetas: vec![0.0, PI / 4.0, PI / 2.0 - 0.01],
                hilbert_len: 64,
                ..SuiteSpec::random(95, 20, 0)
            },
        ),
        (TheoremId::Maximal, SuiteSpec { ps: Some(vec![2.0, 3.0]), ..SuiteSpec::random(96, 25, 8) }),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (theorem, spec) in runs {
        let reports = run_suite(theorem, &spec, &opts(), Execution::Parallel).map_err(|e| e.to_string())?;
        match all_pass(theorem.as_str(), &reports, 50) {
            Ok(s) => lines.push(s),
            Err(s) => {
                ok = false;
                lines.push(s)
            }
        }
    }
    ensure(ok, lines.join("; "))
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = f64::INFINITY;
    for i in 0..100u64 {
        let h = random_series(1000 + 2 * i, 8).analytic_part();
        let g = random_series(1001 + 2 * i, 8).analytic_part();
        let pair = HarmonicSeries::new(h.analytic_coeffs().to_vec(), g.analytic_coeffs().to_vec()).unwrap();
        let phi = log_sum_modulus(&pair);
        for _ in 0..100 {
            let z0 = Complex64::from_polar(0.95 * rng.random::<f64>(), rng.random_range(0.0..2.0 * PI));
            let rho = (1.0 - z0.norm()) * rng.random_range(0.01..0.99);
            let d = submean_defect(&phi, z0, rho, 512).map_err(|e| e.to_string())?;
            worst = worst.min(d);
        }
    }
    ensure(worst >= -1e-9, format!("min defect {worst:.3e} over 10000 disks (floor -1e-9)"))
}

fn criterion_11() -> Check {
    let mut same = true;
    for theorem in
        [TheoremId::Main, TheoremId::SmallP, TheoremId::Frazer, TheoremId::Hilbert, TheoremId::Kolmogorov]
    {
        let spec = SuiteSpec::random(11, 3, 6);
        let a = to_csv(&run_suite(theorem, &spec, &opts(), Execution::Parallel).map_err(|e| e.to_string())?);
        let b = to_csv(&run_suite(theorem, &spec, &opts(), Execution::Parallel).map_err(|e| e.to_string())?);
        let c =
            to_csv(&run_suite(theorem, &spec, &opts(), Execution::Sequential).map_err(|e| e.to_string())?);
        same &= a == b && a == c;
    }
    ensure(same, "repeated and sequential runs give byte-identical CSV".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("quadrature oracle agreement", criterion_1),
        ("poisson reproduction", criterion_2),
        ("cayley power closed forms", criterion_3),
        ("blow-up study", criterion_4),
        ("main theorem suite", criterion_5),
        ("constant identities", criterion_6),
        ("diameter sharpness approach", criterion_7),
        ("circle suites", criterion_8),
        ("auxiliary suites", criterion_9),
        ("subharmonicity", criterion_10),
        ("determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name} ({:.1}s): {detail}", i + 1, start.elapsed().as_secs_f64());
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
