//! Command-line front end.
//!
//! Every flag has a field of the same name in [`JobSpec`]; `--job FILE` loads a JSON job and
//! flags given on the command line override its fields.
//!
//! Exit status: 0 when every report passes, 1 when any report fails (counterexample records
//! are written), 2 when a report is inconclusive or an integral did not converge, 64 for a
//! malformed job, 74 when an output file cannot be written.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::curves::ConvexCurve;
use crate::error::{LabError, Result};
use crate::extremal::{self, CurveFamily, FunctionFamily, SearchConfig, SearchResult};
use crate::harmonic::FunctionSpec;
use crate::inequalities::{blowup_study, BlowupRow, InequalityReport, TheoremId, Verdict};
use crate::par::Execution;
use crate::quadrature::{QuadOptions, DEFAULT_TOL};
use crate::report::{self, Format};
use crate::suite::{self, SuiteSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_IO: u8 = 74;

/// Overrides the default quadrature tolerance.
pub const TOL_ENV: &str = "GABRIEL_LAB_TOL";

const DEFAULT_COUNT: usize = 10;
const DEFAULT_DEGREE: usize = 16;
const DEFAULT_BLOWUP_GRID: [f64; 5] = [0.5, 0.7, 0.9, 0.95, 0.99];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Check the selected inequalities at the given exponents.
    Verify,
    /// Like verify, but exponents outside a theorem's range are skipped instead of rejected.
    Sweep,
    /// Search for the largest ratio lhs/rhs.
    Extremal,
    /// Diameter-versus-circle ratio of the Cayley power family for p < 1.
    Blowup,
    /// List theorems, named functions and curves with their parameters.
    Catalog,
    /// Re-emit a saved report file, and exit by its verdicts.
    Report,
}

/// Random function block: `count` polynomials of degree `degree` drawn from `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomBlock {
    pub seed: u64,
    pub count: usize,
    #[serde(default = "default_degree")]
    pub degree: usize,
}

fn default_degree() -> usize {
    DEFAULT_DEGREE
}

/// Search families for `extremal`. Unset fields get a default that fits the theorem.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchBlock {
    #[serde(default)]
    pub functions: Option<FunctionFamily>,
    #[serde(default)]
    pub curves: Option<CurveFamily>,
    #[serde(default)]
    pub restarts: Option<usize>,
    #[serde(default)]
    pub budget: Option<usize>,
}

/// A complete run description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default)]
    pub theorems: Vec<TheoremId>,
    #[serde(default)]
    pub functions: Option<Vec<FunctionSpec>>,
    #[serde(default)]
    pub random: Option<RandomBlock>,
    #[serde(default)]
    pub curves: Option<Vec<ConvexCurve>>,
    #[serde(default)]
    pub ps: Option<Vec<f64>>,
    #[serde(default)]
    pub thetas: Option<Vec<f64>>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub jobs: Option<usize>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub counterexamples: Option<PathBuf>,
    #[serde(default)]
    pub search: Option<SearchBlock>,
    /// Report file read by `report`.
    #[serde(default)]
    pub input: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            theorems: Vec::new(),
            functions: None,
            random: None,
            curves: None,
            ps: None,
            thetas: None,
            tol: None,
            jobs: None,
            out: None,
            format: None,
            counterexamples: None,
            search: None,
            input: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if matches!(self.command, Command::Verify | Command::Extremal) && self.theorems.is_empty() {
            return Err(LabError::Parse(
                format!("{:?} needs at least one --theorem", self.command).to_lowercase(),
            ));
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(LabError::Parse(format!("tolerance must lie in (0, 1) (got {tol})")));
            }
        }
        if self.jobs == Some(0) {
            return Err(LabError::Parse("--jobs must be at least 1".into()));
        }
        if let Some(r) = &self.random {
            if r.degree > suite::MAX_DEGREE {
                return Err(LabError::Parse(format!("degree must be at most {}", suite::MAX_DEGREE)));
            }
        }
        if self.command == Command::Report && self.input.is_none() {
            return Err(LabError::Parse("report needs --input".into()));
        }
        if let Some(curves) = &self.curves {
            for c in curves {
                c.clone().validated()?;
            }
        }
        if let Some(functions) = &self.functions {
            for f in functions {
                f.validate()?;
            }
        }
        Ok(())
    }

    fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Blowup => Format::Csv,
            _ => Format::Json,
        })
    }

    fn quad_options(&self) -> Result<QuadOptions> {
        let tol = match self.tol {
            Some(t) => t,
            None => match std::env::var(TOL_ENV) {
                Ok(s) => s.trim().parse::<f64>().ok().filter(|t| *t > 0.0 && *t < 1.0).ok_or_else(|| {
                    LabError::Parse(format!("{TOL_ENV} must be a number in (0, 1) (got '{s}')"))
                })?,
                Err(_) => DEFAULT_TOL,
            },
        };
        Ok(QuadOptions::with_tol(tol))
    }

    fn suite_spec(&self) -> SuiteSpec {
        let random =
            self.random.unwrap_or(RandomBlock { seed: 0, count: DEFAULT_COUNT, degree: DEFAULT_DEGREE });
        let mut spec = SuiteSpec::random(random.seed, random.count, random.degree);
        spec.functions = self.functions.clone();
        spec.curves = self.curves.clone();
        if let Some(t) = &self.thetas {
            spec.thetas = t.clone();
        }
        spec
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "gabriel-lab",
    version,
    about = "Numerical checks of contour inequalities for harmonic functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Check the selected inequalities at the given exponents.
    Verify(Flags),
    /// Check the selected inequalities (default: all) over a p grid, skipping exponents out of range.
    Sweep(Flags),
    /// Search for the largest ratio lhs/rhs over a function and curve family.
    Extremal(Flags),
    /// Diameter-versus-circle ratio of the Cayley power family for p < 1.
    Blowup(Flags),
    /// List theorems, named functions and curves with their parameters.
    Catalog(Flags),
    /// Re-emit a saved report file and exit by its verdicts.
    Report(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// JSON job file; flags override its fields.
    #[arg(long)]
    job: Option<PathBuf>,
    /// Theorem id (repeatable or comma separated).
    #[arg(long, value_delimiter = ',')]
    theorem: Vec<TheoremId>,
    /// Single exponent (repeatable).
    #[arg(long)]
    p: Vec<f64>,
    /// Comma-separated exponents.
    #[arg(long, value_delimiter = ',')]
    p_grid: Vec<f64>,
    /// Curve as JSON, or `diameter` (repeatable).
    #[arg(long)]
    curve: Vec<String>,
    /// JSON file with one curve or a list of curves.
    #[arg(long)]
    curve_file: Option<PathBuf>,
    /// JSON file with one function or a list of functions.
    #[arg(long)]
    function_file: Option<PathBuf>,
    /// Number of random polynomials.
    #[arg(long)]
    random_polys: Option<usize>,
    /// Degree of the random polynomials.
    #[arg(long)]
    degree: Option<usize>,
    /// Seed for the random functions and curves.
    #[arg(long)]
    seed: Option<u64>,
    /// Angles for the double-series inequality (comma separated).
    #[arg(long, value_delimiter = ',')]
    theta: Vec<f64>,
    /// Quadrature tolerance [env: GABRIEL_LAB_TOL].
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads (default: logical cores; 1 runs sequentially).
    #[arg(long)]
    jobs: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    /// Where counterexample records go (default: next to --out, else stderr).
    #[arg(long)]
    counterexamples: Option<PathBuf>,
    /// Random restarts for extremal.
    #[arg(long)]
    restarts: Option<usize>,
    /// Objective evaluations per restart for extremal.
    #[arg(long)]
    budget: Option<usize>,
    /// Report file for `report`.
    #[arg(long)]
    input: Option<PathBuf>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LabError::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| LabError::Parse(format!("{}: {e}", path.display())))
}

/// One object or a list of them.
#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    Many(Vec<T>),
    One(T),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::Many(v) => v,
            OneOrMany::One(x) => vec![x],
        }
    }
}

fn parse_curve(s: &str) -> Result<ConvexCurve> {
    match s.trim() {
        "diameter" => Ok(ConvexCurve::diameter()),
        text => serde_json::from_str::<ConvexCurve>(text)
            .map_err(|e| LabError::Parse(format!("bad --curve '{text}': {e}")))?
            .validated(),
    }
}

impl Flags {
    /// Loads the job file, if any, and applies the flags on top.
    fn into_job(self, command: Command) -> Result<JobSpec> {
        let mut job = match &self.job {
            Some(path) => {
                let job: JobSpec = read_json(path)?;
                if job.command != command {
                    return Err(LabError::Parse(
                        format!("job file is for '{:?}', not '{:?}'", job.command, command).to_lowercase(),
                    ));
                }
                job
            }
            None => JobSpec::new(command),
        };
        if !self.theorem.is_empty() {
            job.theorems = self.theorem;
        }
        let ps: Vec<f64> = self.p.into_iter().chain(self.p_grid).collect();
        if !ps.is_empty() {
            job.ps = Some(ps);
        }
        let mut curves = Vec::new();
        if let Some(path) = &self.curve_file {
            curves.extend(read_json::<OneOrMany<ConvexCurve>>(path)?.into_vec());
        }
        for c in &self.curve {
            curves.push(parse_curve(c)?);
        }
        if !curves.is_empty() {
            job.curves = Some(curves);
        }
        if let Some(path) = &self.function_file {
            job.functions = Some(read_json::<OneOrMany<FunctionSpec>>(path)?.into_vec());
        }
        if self.random_polys.is_some() || self.degree.is_some() || self.seed.is_some() {
            let base =
                job.random.unwrap_or(RandomBlock { seed: 0, count: DEFAULT_COUNT, degree: DEFAULT_DEGREE });
            job.random = Some(RandomBlock {
                seed: self.seed.unwrap_or(base.seed),
                count: self.random_polys.unwrap_or(base.count),
                degree: self.degree.unwrap_or(base.degree),
            });
            if self.random_polys.is_some() {
                job.functions = None;
            }
        }
        if !self.theta.is_empty() {
            job.thetas = Some(self.theta);
        }
        if self.restarts.is_some() || self.budget.is_some() {
            let search = job.search.get_or_insert_with(SearchBlock::default);
            search.restarts = self.restarts.or(search.restarts);
            search.budget = self.budget.or(search.budget);
        }
        job.tol = self.tol.or(job.tol);
        job.jobs = self.jobs.or(job.jobs);
        job.out = self.out.or(job.out);
        job.format = self.format.or(job.format);
        job.counterexamples = self.counterexamples.or(job.counterexamples);
        job.input = self.input.or(job.input);
        Ok(job)
    }
}

/// Counterexample record for a failed verification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub version: String,
    pub report: InequalityReport,
}

/// Result of a run, before it is written out.
pub struct Outcome {
    pub body: String,
    pub status: u8,
    /// Counterexample records as JSON, when something failed.
    pub counterexamples: Option<String>,
}

fn status_of(verdicts: impl IntoIterator<Item = Verdict>) -> u8 {
    match Verdict::all(verdicts) {
        Verdict::Pass => EXIT_OK,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn reports_outcome(reports: &[InequalityReport], format: Format) -> Result<Outcome> {
    let body = match format {
        Format::Json => report::to_json(reports)?,
        Format::Csv => report::to_csv(reports),
    };
    let failures: Vec<FailureRecord> = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .map(|r| FailureRecord { version: crate::VERSION.to_string(), report: r.clone() })
        .collect();
    let counterexamples = if failures.is_empty() { None } else { Some(report::to_json(&failures)?) };
    Ok(Outcome { body, status: status_of(reports.iter().map(|r| r.verdict)), counterexamples })
}

fn verify(job: &JobSpec, skip_out_of_range: bool) -> Result<Outcome> {
    let opts = job.quad_options()?;
    let exec = Execution::from_jobs(job.jobs);
    let theorems = if job.theorems.is_empty() { TheoremId::ALL.to_vec() } else { job.theorems.clone() };
    let base = job.suite_spec();
    let mut items = Vec::new();
    for theorem in theorems {
        let grid = job.ps.clone().unwrap_or_else(|| suite::default_p_grid(theorem));
        let ps: Vec<f64> = if skip_out_of_range {
            grid.into_iter().filter(|&p| theorem.admits(p)).collect()
        } else if theorem == TheoremId::Hilbert {
            vec![2.0]
        } else {
            if let Some(&p) = grid.iter().find(|&&p| !theorem.admits(p)) {
                return Err(LabError::domain(format!("{theorem} needs {} (got p = {p})", theorem.p_range())));
            }
            grid
        };
        if ps.is_empty() {
            continue;
        }
        let spec = SuiteSpec { ps: Some(ps), ..base.clone() };
        items.extend(suite::instances(theorem, &spec)?);
    }
    let reports = suite::run_instances(&items, &opts, exec)?;
    reports_outcome(&reports, job.format())
}

/// One search, labelled by what it bounded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalEntry {
    pub theorem_id: TheoremId,
    pub p: f64,
    pub result: SearchResult,
}

fn default_families(theorem: TheoremId, degree: usize) -> (FunctionFamily, CurveFamily) {
    let analytic = matches!(theorem, TheoremId::Gabriel | TheoremId::Frazer);
    let curves = match theorem {
        TheoremId::Circle | TheoremId::Frazer => CurveFamily::Circles,
        _ => CurveFamily::Polygons { vertices: 6 },
    };
    (FunctionFamily::Coefficients { degree, analytic }, curves)
}

fn run_extremal(job: &JobSpec) -> Result<Outcome> {
    let opts = job.quad_options()?;
    let exec = Execution::from_jobs(job.jobs);
    let search = job.search.clone().unwrap_or_default();
    let random = job.random.unwrap_or(RandomBlock { seed: 0, count: 1, degree: 4 });
    let mut results = Vec::new();
    for &theorem in &job.theorems {
        let (functions, curves) = default_families(theorem, random.degree);
        let ps = job.ps.clone().unwrap_or_else(|| suite::default_p_grid(theorem));
        for p in ps {
            let mut config = SearchConfig::new(
                search.functions.clone().unwrap_or_else(|| functions.clone()),
                search.curves.clone().unwrap_or_else(|| curves.clone()),
                theorem,
                p,
            );
            config.seed = random.seed;
            config.tol = opts.tol;
            config.restarts = search.restarts.unwrap_or(config.restarts);
            config.budget = search.budget.unwrap_or(config.budget);
            let result = extremal::maximize_ratio(&config, exec)?;
            results.push(ExtremalEntry { theorem_id: theorem, p, result });
        }
    }
    let body = match job.format() {
        Format::Json => report::to_json(&results)?,
        Format::Csv => report::table_csv(
            &["theorem_id", "p", "curve", "ratio", "constant", "bound_fraction", "evaluations"],
            results.iter().map(|e| {
                vec![
                    e.theorem_id.to_string(),
                    e.p.to_string(),
                    e.result.curve.label(),
                    e.result.best.ratio.to_string(),
                    e.result.constant.to_string(),
                    e.result.bound_fraction.to_string(),
                    e.result.evaluations.to_string(),
                ]
            }),
        ),
    };
    let records: Vec<_> = results.iter().filter_map(|e| e.result.counterexample.clone()).collect();
    let counterexamples = if records.is_empty() { None } else { Some(report::to_json(&records)?) };
    let status = if counterexamples.is_some() { EXIT_FAIL } else { EXIT_OK };
    Ok(Outcome { body, status, counterexamples })
}

fn blowup_csv(rows: &[BlowupRow]) -> String {
    report::table_csv(
        &["p", "lhs", "rhs", "ratio", "normalized_ratio", "closed_form_ratio"],
        rows.iter().map(|r| {
            vec![
                r.p.to_string(),
                r.lhs.to_string(),
                r.rhs_integral.to_string(),
                r.ratio.to_string(),
                r.normalized_ratio.to_string(),
                r.closed_form_ratio.to_string(),
            ]
        }),
    )
}

fn run_blowup(job: &JobSpec) -> Result<Outcome> {
    let opts = job.quad_options()?;
    let grid = job.ps.clone().unwrap_or_else(|| DEFAULT_BLOWUP_GRID.to_vec());
    let rows = blowup_study(&grid, &opts)?;
    let body = match job.format() {
        Format::Json => report::to_json(&rows)?,
        Format::Csv => blowup_csv(&rows),
    };
    let status = if rows.iter().all(|r| r.converged) { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Ok(Outcome { body, status, counterexamples: None })
}

/// Theorems, named functions and curves with their parameter schemas.
pub fn catalog() -> serde_json::Value {
    let theorems: Vec<_> = TheoremId::ALL
        .iter()
        .map(|t| json!({"id": t.as_str(), "p": t.p_range(), "statement": t.statement()}))
        .collect();
    json!({
        "theorems": theorems,
        "functions": [
            {"kind": "series", "params": {"a": "[[re, im], ...] analytic coefficients", "b": "[[re, im], ...] co-analytic coefficients"}},
            {"kind": "poisson", "params": {"samples": "[[re, im], ...] equispaced boundary values"}},
            {"kind": "named", "name": "constant", "params": {"c": "[re, im]"}},
            {"kind": "named", "name": "monomial", "params": {"k": "integer >= 0", "part": "analytic | co_analytic"}},
            {"kind": "named", "name": "rf_extremal", "params": {"p": "p > 1", "rho": "0 < rho < 1"}},
            {"kind": "named", "name": "cayley_power", "params": {"p": "0 < p < 1"}},
            {"kind": "named", "name": "half_plane", "params": {"p": "0 < p < 1"}},
            {"kind": "named", "name": "random_poly", "params": {"seed": "integer", "degree": "0..=64"}},
            {"kind": "named", "name": "cauchy_kernel", "params": {"w": "[re, im] with |w| < 1"}},
        ],
        "curves": [
            {"variant": "circle", "params": {"center": "[re, im]", "radius": "> 0, |center| + radius <= 1"}},
            {"variant": "segment", "params": {"a": "[re, im]", "b": "[re, im]"}},
            {"variant": "polygon", "params": {"vertices": "[[re, im], ...] counterclockwise, convex"}},
            {"variant": "ellipse", "params": {"center": "[re, im]", "semi_axes": "[alpha, beta]", "rotation": "radians"}},
            {"variant": "parametric", "params": {"nodes": "[[re, im], ...]", "closed": "bool"}},
        ],
    })
}

fn run_catalog(job: &JobSpec) -> Result<Outcome> {
    let cat = catalog();
    let body = match job.format() {
        Format::Json => report::to_json(&cat)?,
        Format::Csv => {
            let mut rows = Vec::new();
            for t in cat["theorems"].as_array().into_iter().flatten() {
                rows.push(vec![
                    "theorem".into(),
                    t["id"].as_str().unwrap_or_default().into(),
                    t["p"].as_str().unwrap_or_default().into(),
                ]);
            }
            for f in cat["functions"].as_array().into_iter().flatten() {
                let name = f["name"].as_str().or(f["kind"].as_str()).unwrap_or_default();
                rows.push(vec!["function".into(), name.into(), f["params"].to_string()]);
            }
            for c in cat["curves"].as_array().into_iter().flatten() {
                rows.push(vec![
                    "curve".into(),
                    c["variant"].as_str().unwrap_or_default().into(),
                    c["params"].to_string(),
                ]);
            }
            report::table_csv(&["kind", "name", "params"], rows)
        }
    };
    Ok(Outcome { body, status: EXIT_OK, counterexamples: None })
}

fn run_report(job: &JobSpec) -> Result<Outcome> {
    let path = job.input.as_ref().ok_or_else(|| LabError::Parse("report needs --input".into()))?;
    let reports: Vec<InequalityReport> = read_json(path)?;
    reports_outcome(&reports, job.format())
}

/// Runs a validated job without writing anything.
pub fn execute(job: &JobSpec) -> Result<Outcome> {
    job.validate()?;
    match job.command {
        Command::Verify => verify(job, false),
        Command::Sweep => verify(job, true),
        Command::Extremal => run_extremal(job),
        Command::Blowup => run_blowup(job),
        Command::Catalog => run_catalog(job),
        Command::Report => run_report(job),
    }
}

fn counterexample_path(job: &JobSpec) -> Option<PathBuf> {
    job.counterexamples.clone().or_else(|| {
        job.out.as_ref().map(|out| {
            let mut name = out.file_stem().unwrap_or_default().to_os_string();
            name.push(".counterexamples.json");
            out.with_file_name(name)
        })
    })
}

fn write_outcome(job: &JobSpec, outcome: &Outcome) -> Result<()> {
    match &job.out {
        Some(path) => report::write_atomic(path, &outcome.body)?,
        None => std::io::stdout().write_all(outcome.body.as_bytes())?,
    }
    if let Some(records) = &outcome.counterexamples {
        match counterexample_path(job) {
            Some(path) => {
                report::write_atomic(&path, records)?;
                eprintln!("counterexample records written to {}", path.display());
            }
            None => eprint!("{records}"),
        }
    }
    Ok(())
}

fn exit_code(err: &LabError) -> u8 {
    match err {
        LabError::Domain(_) | LabError::Parse(_) | LabError::Json(_) => EXIT_USAGE,
        LabError::NumericalFailure { .. } => EXIT_INCONCLUSIVE,
        LabError::Io(_) => EXIT_IO,
    }
}

/// Parses arguments, runs the job, writes its outputs, and returns the exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (command, flags) = match cli.command {
        Sub::Verify(f) => (Command::Verify, f),
        Sub::Sweep(f) => (Command::Sweep, f),
        Sub::Extremal(f) => (Command::Extremal, f),
        Sub::Blowup(f) => (Command::Blowup, f),
        Sub::Catalog(f) => (Command::Catalog, f),
        Sub::Report(f) => (Command::Report, f),
    };
    let result = flags.into_job(command).and_then(|job| {
        let outcome = execute(&job)?;
        write_outcome(&job, &outcome)?;
        Ok(outcome.status)
    });
    match result {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
