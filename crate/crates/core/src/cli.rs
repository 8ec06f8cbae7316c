//! Command-line front end: `verify`, `flow`, `search` and `report`.
//!
//! Exit codes: 0 on success (including a violated conjecture), 1 on usage or
//! input errors, 2 when a proven inequality fails numerically, 3 when the
//! search finds no certificate.

use std::collections::HashSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::flow::{trace_flow, uniform_times};
use crate::functionals::{run_suite, summarize, FunctionalSummary, InequalityReport};
use crate::hyperbolic::lift_frame;
use crate::search::{
    find_counterexample_in, CounterexampleCertificate, EllipsoidFamily, GeodesicSphereFamily, ShapeFamily,
    SmoothedSimplexFamily,
};
use crate::sphere_grid::{GridDescription, SphereGrid};
use crate::surface::SurfaceSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION_FAILED: i32 = 2;
pub const EXIT_NO_CERTIFICATE: i32 = 3;

/// Smallest resolution the CLI accepts.
pub const MIN_CLI_RESOLUTION: usize = 8;

/// Environment variable that caps the worker thread count.
pub const THREADS_ENV: &str = "HOROAF_THREADS";

#[derive(Debug, Parser)]
#[command(name = "horoaf", version, about = "Weighted Alexandrov-Fenchel checks in the Poincare ball")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every inequality check applicable to a surface.
    Verify(VerifyArgs),
    /// Trace the homothety flow of a surface.
    Flow(FlowArgs),
    /// Search for a horospherically convex surface with P < 1.
    Search(SearchArgs),
    /// Merge earlier JSON outputs into one summary.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Ambient dimension.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Grid resolution.
    #[arg(long, default_value_t = 64)]
    pub resolution: usize,
    /// Output path; standard output if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// `family:key=value,...`, inline JSON, or a path to a shape or certificate file.
    #[arg(long)]
    pub surface: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub surface: String,
    #[arg(long, default_value_t = 8.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub dt: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 96)]
    pub resolution: usize,
    /// Objective evaluations available to the optimizer.
    #[arg(long, default_value_t = 400)]
    pub budget: usize,
    /// Shape family to optimize over.
    #[arg(long, value_enum, default_value_t = SearchFamily::SmoothedSimplex)]
    pub family: SearchFamily,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchFamily {
    SmoothedSimplex,
    Ellipsoid,
    GeodesicSphere,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// JSON files written by `verify` or `report`.
    #[arg(long, num_args = 1.., required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Echo of the effective configuration, embedded in every output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub resolution: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub surface: Option<SurfaceSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<SearchFamily>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub format: Option<Format>,
}

impl RunConfig {
    fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            n: None,
            resolution: None,
            surface: None,
            t_max: None,
            dt: None,
            budget: None,
            family: None,
            format: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub config: RunConfig,
    pub grid: GridDescription,
    pub summary: FunctionalSummary,
    pub reports: Vec<InequalityReport>,
    pub proven_failures: usize,
    pub conjecture_violated: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowDocument {
    pub config: RunConfig,
    pub grid: GridDescription,
    pub trace: crate::flow::FlowTrace,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchDocument {
    pub config: RunConfig,
    #[serde(flatten)]
    pub certificate: CounterexampleCertificate,
}

/// Minimum margins of one inequality across a batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginSummary {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub index: Option<usize>,
    pub count: usize,
    pub min_margin: f64,
    pub min_relative_margin: f64,
    pub all_hold: bool,
    pub proven: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub config: RunConfig,
    pub grids: Vec<GridDescription>,
    pub margins: Vec<MarginSummary>,
    pub reports: Vec<InequalityReport>,
}

/// Resolves `--surface` for dimension `n`.
///
/// Accepts a path to a shape or certificate JSON file (the certificate's
/// `scaled_surface` is used), inline JSON, or the mini-language.
pub fn resolve_surface(text: &str, n: usize) -> Result<SurfaceSpec> {
    let path = Path::new(text);
    let json = if path.is_file() {
        Some(std::fs::read_to_string(path)?)
    } else if text.trim_start().starts_with('{') {
        Some(text.to_string())
    } else {
        None
    };
    let spec = match json {
        Some(json) => {
            let value: Value = serde_json::from_str(&json)?;
            match value.get("scaled_surface") {
                Some(scaled) => serde_json::from_value(scaled.clone())?,
                None => serde_json::from_value(value)?,
            }
        }
        None => SurfaceSpec::parse(text, n)?,
    };
    spec.validate(n)?;
    Ok(spec)
}

fn check_resolution(resolution: usize) -> Result<()> {
    if resolution < MIN_CLI_RESOLUTION {
        return Err(Error::ResolutionTooLow { got: resolution, min: MIN_CLI_RESOLUTION });
    }
    Ok(())
}

fn summary_on(surface: &SurfaceSpec, grid: &SphereGrid) -> Result<FunctionalSummary> {
    let e = surface.evaluate(grid)?;
    summarize(&e, &lift_frame(&e)?)
}

/// Runs the applicable suite at `resolution`, with half resolution as the
/// error estimate.
pub fn verify_document(surface: &SurfaceSpec, n: usize, resolution: usize) -> Result<VerifyDocument> {
    check_resolution(resolution)?;
    let grid = SphereGrid::build(n, resolution)?;
    let fine = summary_on(surface, &grid)?;
    let coarse = summary_on(surface, &SphereGrid::build(n, resolution / 2)?)?;
    let reports = run_suite(&fine, Some(&coarse), Some(surface))?;
    let proven_failures = reports.iter().filter(|r| r.proven && !r.holds).count();
    let conjecture_violated = reports.iter().any(|r| r.name == "conjecture" && !r.holds);
    let mut config = RunConfig::new("verify");
    config.n = Some(n);
    config.resolution = Some(resolution);
    config.surface = Some(surface.clone());
    config.format = Some(Format::Json);
    Ok(VerifyDocument { config, grid: grid.describe(), summary: fine, reports, proven_failures, conjecture_violated })
}

fn verify_csv(doc: &VerifyDocument) -> String {
    let mut out = String::from("name,index,lhs,rhs,margin,relative_margin,holds,proven,tolerance\n");
    for r in &doc.reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.name,
            r.index.map(|i| i.to_string()).unwrap_or_default(),
            r.lhs,
            r.rhs,
            r.margin,
            r.relative_margin,
            r.holds,
            r.proven,
            r.tolerance
        ));
    }
    out
}

/// Merges report-bearing documents, dropping exact duplicates and keeping
/// first-seen order. Feeding the result back in reproduces it.
pub fn merge_reports(documents: &[Value]) -> Result<ReportDocument> {
    let mut seen = HashSet::new();
    let mut reports = Vec::new();
    let mut grid_keys = HashSet::new();
    let mut grids = Vec::new();
    for doc in documents {
        let (batch, doc_grids): (Vec<InequalityReport>, Vec<GridDescription>) = match doc {
            Value::Array(_) => (serde_json::from_value(doc.clone())?, Vec::new()),
            Value::Object(map) => {
                let batch = match map.get("reports") {
                    Some(r) => serde_json::from_value(r.clone())?,
                    None => {
                        return Err(Error::InvalidParameter("input has no `reports` field".into()));
                    }
                };
                let mut g: Vec<GridDescription> = match map.get("grids") {
                    Some(v) => serde_json::from_value(v.clone())?,
                    None => Vec::new(),
                };
                if let Some(v) = map.get("grid") {
                    g.push(serde_json::from_value(v.clone())?);
                }
                (batch, g)
            }
            _ => return Err(Error::InvalidParameter("input is neither an object nor an array".into())),
        };
        for g in doc_grids {
            if grid_keys.insert(serde_json::to_string(&g)?) {
                grids.push(g);
            }
        }
        for r in batch {
            if seen.insert(serde_json::to_string(&r)?) {
                reports.push(r);
            }
        }
    }

    let mut margins: Vec<MarginSummary> = Vec::new();
    for r in &reports {
        match margins.iter_mut().find(|m| m.name == r.name && m.index == r.index) {
            Some(m) => {
                m.count += 1;
                m.min_margin = m.min_margin.min(r.margin);
                m.min_relative_margin = m.min_relative_margin.min(r.relative_margin);
                m.all_hold &= r.holds;
            }
            None => margins.push(MarginSummary {
                name: r.name.clone(),
                index: r.index,
                count: 1,
                min_margin: r.margin,
                min_relative_margin: r.relative_margin,
                all_hold: r.holds,
                proven: r.proven,
            }),
        }
    }
    Ok(ReportDocument { config: RunConfig::new("report"), grids, margins, reports })
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(output: Option<&Path>, contents: &str) -> Result<()> {
    match output {
        Some(path) => write_atomic(path, contents),
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let n = args.common.n;
    let surface = resolve_surface(&args.surface, n)?;
    let doc = verify_document(&surface, n, args.common.resolution)?;
    for r in &doc.reports {
        let status = match (r.holds, r.proven) {
            (true, _) => "holds",
            (false, true) => "FAILED",
            (false, false) => "VIOLATED",
        };
        let index = r.index.map(|i| format!("[{i}]")).unwrap_or_default();
        eprintln!("{}{index}: {status} (margin {:e})", r.name, r.margin);
    }
    let text = match args.format {
        Format::Json => to_json(&doc)?,
        Format::Csv => verify_csv(&doc),
    };
    emit(args.common.output.as_deref(), &text)?;
    Ok(if doc.proven_failures > 0 { EXIT_VERIFICATION_FAILED } else { EXIT_OK })
}

fn cmd_flow(args: &FlowArgs) -> Result<i32> {
    let n = args.common.n;
    check_resolution(args.common.resolution)?;
    let surface = resolve_surface(&args.surface, n)?;
    let grid = SphereGrid::build(n, args.common.resolution)?;
    let trace = trace_flow(&surface, &grid, &uniform_times(args.t_max, args.dt)?)?;
    let mut config = RunConfig::new("flow");
    config.n = Some(n);
    config.resolution = Some(args.common.resolution);
    config.surface = Some(surface);
    config.t_max = Some(args.t_max);
    config.dt = Some(args.dt);
    config.format = Some(args.format);
    let text = match args.format {
        Format::Json => to_json(&FlowDocument { config, grid: grid.describe(), trace })?,
        Format::Csv => format!(
            "# config: {}\n# grid: {}\n{}",
            serde_json::to_string(&config)?,
            serde_json::to_string(&grid.describe())?,
            trace.to_csv()
        ),
    };
    emit(args.common.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_search(args: &SearchArgs) -> Result<i32> {
    check_resolution(args.resolution)?;
    let grid = SphereGrid::build(args.n, args.resolution)?;
    let family: Box<dyn ShapeFamily> = match args.family {
        SearchFamily::SmoothedSimplex => Box::new(SmoothedSimplexFamily::new(args.n)),
        SearchFamily::Ellipsoid => Box::new(EllipsoidFamily { n: args.n }),
        SearchFamily::GeodesicSphere => Box::new(GeodesicSphereFamily { n: args.n }),
    };
    let certificate = match find_counterexample_in(family.as_ref(), &grid, args.budget) {
        Ok(c) => c,
        Err(e @ (Error::BudgetExhausted { .. } | Error::NotCertified { .. } | Error::CertificateUnstable(_))) => {
            eprintln!("horoaf: {e}");
            return Ok(EXIT_NO_CERTIFICATE);
        }
        Err(e) => return Err(e),
    };
    eprintln!(
        "certificate: Q = {}, t0 = {}, P = {}, min lambda = {}",
        certificate.q, certificate.t0, certificate.scaled_p, certificate.min_lambda_scaled
    );
    let mut config = RunConfig::new("search");
    config.n = Some(args.n);
    config.resolution = Some(args.resolution);
    config.budget = Some(args.budget);
    config.family = Some(args.family);
    emit(args.output.as_deref(), &to_json(&SearchDocument { config, certificate })?)?;
    Ok(EXIT_OK)
}

fn cmd_report(args: &ReportArgs) -> Result<i32> {
    let docs = args
        .inputs
        .iter()
        .map(|p| Ok(serde_json::from_str(&std::fs::read_to_string(p)?)?))
        .collect::<Result<Vec<Value>>>()?;
    let merged = merge_reports(&docs)?;
    emit(args.output.as_deref(), &to_json(&merged)?)?;
    Ok(EXIT_OK)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let threads: usize = v
            .parse()
            .ok()
            .filter(|t| *t > 0)
            .ok_or_else(|| Error::InvalidParameter(format!("{THREADS_ENV} must be a positive integer")))?;
        // Fails only if a global pool already exists, in which case it is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<i32> {
    configure_threads()?;
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Flow(a) => cmd_flow(a),
        Command::Search(a) => cmd_search(a),
        Command::Report(a) => cmd_report(a),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
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
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("horoaf: {e}");
            EXIT_USAGE
        }
    }
}
