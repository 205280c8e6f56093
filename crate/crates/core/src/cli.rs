//! Command-line front end. Every report is JSON with a top-level
//! `"schema": 1` and the fully resolved configuration.
//!
//! Exit codes: 0 success, 1 a check ran and was refuted, 2 usage or
//! resource errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::contact::{contact_codim, ContactQuery, LogResolutionInput};
use crate::count::{
    dim_estimate, exhaustive_count, monte_carlo_count, origin_fiber_count_check, CountConfig, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::formulas::{
    dim_j1, dim_smooth_component, lct_rank1, odd_jets_reducible, rank1_components, rank1_jet_dim,
    second_jet_fiber_dims, second_jet_reducible, singular_fiber_dim_j1, Applicability, DEFAULT_LCT_WINDOW,
};
use crate::groebner::{verify_first_jet_components, Budget, DEFAULT_MAX_PAIRS};
use crate::jetideal::{jet_ideal_generators_over, verify_origin_fiber_isomorphism, DeterminantalSpec};
use crate::poly::CoefficientField;

pub const SCHEMA: u32 = 1;
pub const THREADS_ENV: &str = "JETLAB_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser, Serialize)]
#[command(name = "jetlab", version, about = "Jet schemes of bounded-rank matrix loci")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Emit the generators of the jet ideal.
    Generate(GenerateArgs),
    /// Evaluate the closed-form predictions.
    Predict(PredictArgs),
    /// Count points of the jet scheme over prime fields.
    Count(CountArgs),
    /// Solve a contact-locus codimension problem read from a JSON file.
    Contact(ContactArgs),
    /// Run a verification suite.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpecArgs {
    #[arg(long)]
    pub rows: usize,
    #[arg(long)]
    pub cols: usize,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    #[arg(long, default_value_t = 1)]
    pub jets: usize,
}

impl SpecArgs {
    fn spec(&self) -> Result<DeterminantalSpec> {
        DeterminantalSpec::new(self.rows, self.cols, self.rank)
    }
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    /// `0` for the rationals, otherwise a prime.
    #[arg(long, default_value_t = 0)]
    pub field: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct PredictArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    #[arg(long, default_value_t = DEFAULT_LCT_WINDOW)]
    pub lct_window: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Exhaustive when within the cap, sampling otherwise.
    Auto,
    Exact,
    MonteCarlo,
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3])]
    pub primes: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    #[arg(long, default_value_t = 40_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.99)]
    pub confidence: f64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u128,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct ContactArgs {
    /// JSON with keys n, k, a, families and orders.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    MinimalPrimes,
    OriginFiber,
    OriginFiberCount,
    Formulas,
}

#[derive(Debug, Args, Serialize)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 2)]
    pub rows: usize,
    #[arg(long, default_value_t = 2)]
    pub cols: usize,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    #[arg(long, default_value_t = 2)]
    pub jets: usize,
    /// Field for the minimal-primes suite: `0` for the rationals, else a prime.
    #[arg(long, default_value_t = 0)]
    pub field: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_PAIRS)]
    pub budget: usize,
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3])]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u128,
    #[arg(long)]
    pub workers: Option<usize>,
}

/// Outcome of one command before rendering.
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub refuted: bool,
}

fn field_of(code: u64) -> Result<CoefficientField> {
    match code {
        0 => Ok(CoefficientField::Rationals),
        p => CoefficientField::prime(p),
    }
}

/// `--workers` wins, then `JETLAB_THREADS`, then the available parallelism.
pub fn resolve_workers(flag: Option<usize>) -> Result<usize> {
    if let Some(w) = flag {
        return Ok(w.max(1));
    }
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let w: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{THREADS_ENV}={v} is not a positive integer")))?;
        return Ok(w.max(1));
    }
    Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn generate(args: &GenerateArgs) -> Result<Outcome> {
    let field = field_of(args.field)?;
    let pres = jet_ideal_generators_over(args.spec.spec()?, args.spec.jets, field)?;
    let generators: Vec<String> = pres.generators.iter().map(ToString::to_string).collect();
    let report = json!({
        "r": args.spec.rows,
        "s": args.spec.cols,
        "c": args.spec.rank,
        "m": args.spec.jets,
        "field": field,
        "variables": pres.variables.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "generators": generators,
    });
    Ok(Outcome { report, text: generators.join("\n"), refuted: false })
}

fn predict(args: &PredictArgs) -> Result<Outcome> {
    let SpecArgs { rows: r, cols: s, rank: c, jets: m } = args.spec;
    args.spec.spec()?;
    let mut report = serde_json::Map::new();
    let mut text = Vec::new();

    if c == 1 {
        let p = rank1_components(r, s, m);
        report.insert("applicable".into(), json!(p.applicable));
        report.insert("count".into(), json!(p.count));
        report.insert("dims".into(), json!(p.dims));
        text.push(format!("components: {} {:?} ({:?})", p.count, p.dims, p.applicable));
        if p.applicable == Applicability::Applies {
            let dim = rank1_jet_dim(r, s, m)?;
            let lct = lct_rank1(r, s, args.lct_window)?;
            text.push(format!("dim J_m: {dim}"));
            text.push(format!("lct: {}", lct.lct));
            report.insert("jet_dim".into(), json!(dim));
            report.insert("lct".into(), serde_json::to_value(lct)?);
        }
    }
    report.insert("smooth_component_dim".into(), json!(dim_smooth_component(r, s, c, m)?));
    if c >= 1 {
        let odd = odd_jets_reducible(r, s, c)?;
        text.push(format!("odd jets: {:?} ({})", odd.verdict, odd.certificate.statement));
        report.insert("certificate".into(), serde_json::to_value(&odd.certificate)?);
        report.insert("odd_jets".into(), serde_json::to_value(&odd)?);
        report.insert("dim_j1".into(), serde_json::to_value(dim_j1(r, s, c))?);
        report.insert("singular_fiber_dim_j1".into(), json!(singular_fiber_dim_j1(r, s, c)?));
    }
    if c >= 2 {
        let second = second_jet_reducible(r, s, c)?;
        text.push(format!("second jets: {:?} ({})", second.verdict, second.certificate.statement));
        report.insert("second_jet".into(), serde_json::to_value(&second)?);
        let (low, stratum) = second_jet_fiber_dims(r, s, c)?;
        report.insert("second_jet_fiber_dims".into(), json!([low, stratum]));
    }
    Ok(Outcome { report: Value::Object(report), text: text.join("\n"), refuted: false })
}

fn count(args: &CountArgs) -> Result<Outcome> {
    let spec = args.spec.spec()?;
    let workers = resolve_workers(args.workers)?;
    let config = CountConfig { cap: args.cap, workers };
    let mut reports = Vec::new();
    let mut points = Vec::new();
    let mut text = Vec::new();
    for &q in &args.primes {
        let field = CoefficientField::prime(q)?;
        let pres = jet_ideal_generators_over(spec, args.spec.jets, field)?;
        let sample = || {
            monte_carlo_count(&pres.generators, &pres.variables, q, args.samples, args.confidence, args.seed, workers)
        };
        let rep = match args.mode {
            Mode::Exact => exhaustive_count(&pres.generators, &pres.variables, q, &config)?,
            Mode::MonteCarlo => sample()?,
            Mode::Auto => match exhaustive_count(&pres.generators, &pres.variables, q, &config) {
                Err(Error::TooLarge { .. }) => sample()?,
                other => other?,
            },
        };
        text.push(format!("q={q}: {} ({:?})", rep.count.as_f64(), rep.mode));
        points.push((q, rep.count.as_f64()));
        reports.push(rep);
    }
    let mut report = json!({ "counts": reports });
    if points.len() >= 2 {
        match dim_estimate(&points) {
            Ok(est) => {
                text.push(format!("dimension estimate: {:.4} -> {}", est.slope, est.rounded));
                report["dim_estimate"] = serde_json::to_value(est)?;
            }
            Err(Error::Undefined(why)) => report["dim_estimate"] = json!({ "undefined": why }),
            Err(e) => return Err(e),
        }
    }
    report["label"] = json!(crate::count::EVIDENCE);
    Ok(Outcome { report, text: text.join("\n"), refuted: false })
}

#[derive(serde::Deserialize)]
struct ContactFile {
    #[serde(flatten)]
    resolution: LogResolutionInput,
    orders: Vec<u64>,
}

fn contact(args: &ContactArgs) -> Result<Outcome> {
    let raw = std::fs::read_to_string(&args.input)?;
    let file: ContactFile = serde_json::from_str(&raw)?;
    let solution = contact_codim(&file.resolution, &ContactQuery { orders: file.orders })?;
    let text = match solution.value() {
        Some(v) => format!("codimension {v}"),
        None => "infeasible".into(),
    };
    Ok(Outcome { report: serde_json::to_value(solution)?, text, refuted: false })
}

fn check(args: &CheckArgs) -> Result<Outcome> {
    match args.suite {
        Suite::MinimalPrimes => {
            let rep = verify_first_jet_components(field_of(args.field)?, Budget { max_pairs: args.budget })?;
            let text = rep
                .checks
                .iter()
                .map(|c| format!("({}) {:?}: {}", c.id, c.status, c.description))
                .collect::<Vec<_>>()
                .join("\n");
            let passed = rep.passed();
            let mut report = serde_json::to_value(&rep)?;
            report["pass"] = json!(passed);
            Ok(Outcome { report, text, refuted: rep.refuted() })
        }
        Suite::OriginFiber => {
            let spec = DeterminantalSpec::new(args.rows, args.cols, args.rank)?;
            let base = jet_ideal_generators_over(spec, 0, CoefficientField::Rationals)?;
            let rep = verify_origin_fiber_isomorphism(&base.generators, spec.ambient_dimension(), args.jets)?;
            let text = format!("origin fiber: {}", if rep.holds { "pass" } else { "FAIL" });
            let mut report = serde_json::to_value(&rep)?;
            report["pass"] = json!(rep.holds);
            Ok(Outcome { report, text, refuted: !rep.holds })
        }
        Suite::OriginFiberCount => {
            let spec = DeterminantalSpec::new(args.rows, args.cols, args.rank)?;
            let config = CountConfig { cap: args.cap, workers: resolve_workers(args.workers)? };
            let results = args
                .primes
                .iter()
                .map(|&q| origin_fiber_count_check(spec, args.jets, q, &config))
                .collect::<Result<Vec<_>>>()?;
            let holds = results.iter().all(|r| r.holds);
            let text = results
                .iter()
                .map(|r| format!("q={}: {} vs {} -> {}", r.q, r.left, r.right, if r.holds { "pass" } else { "FAIL" }))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome { report: json!({ "results": results, "pass": holds }), text, refuted: !holds })
        }
        Suite::Formulas => {
            let rep = formula_suite()?;
            let refuted = !rep["pass"].as_bool().unwrap_or(false);
            let text = format!("formula identities: {}", if refuted { "FAIL" } else { "pass" });
            Ok(Outcome { report: rep, text, refuted })
        }
    }
}

/// Exhaustive identity sweeps behind the closed forms.
pub fn formula_suite() -> Result<Value> {
    let mut recursion_failures = 0u64;
    let mut max_failures = 0u64;
    for s in 3..=8 {
        for r in s + 1..=8 {
            for m in 0..=9 {
                let dims = rank1_components(r, s, m).dims;
                if dims.iter().max().copied() != Some(rank1_jet_dim(r, s, m)?) {
                    max_failures += 1;
                }
                if m >= 2 {
                    let lower = rank1_components(r, s, m - 2).dims;
                    for (q, low) in lower.iter().enumerate() {
                        if dims.get(q + 1) != Some(&(low + (r * s) as u64)) {
                            recursion_failures += 1;
                        }
                    }
                }
            }
        }
    }
    let mut lct_failures = 0u64;
    for s in 3..=12 {
        for r in s + 1..=12 {
            let rep = lct_rank1(r, s, 200)?;
            if rep.lct != num_rational::Ratio::new((r * s) as i64, 2) || !rep.attained_at_m1 {
                lct_failures += 1;
            }
        }
    }
    let mut equivalence_failures = 0u64;
    for c in 1..=6i64 {
        for r in c + 1..=20 {
            for s in c + 1..=20 {
                let prod = (r - c - 1) * (s - c - 1);
                let dx = c * (r + s - c);
                let j1 = r * s + (c - 1) * (r + s - c + 1);
                let low = 2 * r * s + (c - 2) * (r + s - c + 2);
                let stratum = r + s - 2 * c + 1 + 2 * r * s - (r - c + 1) * (s - c + 1) + (c - 1) * (r + s - c + 1);
                if (j1 >= 2 * dx) != (prod >= 2) {
                    equivalence_failures += 1;
                }
                if c >= 2 && (low >= 3 * dx) != (prod >= 3) {
                    equivalence_failures += 1;
                }
                if c >= 2 && (stratum >= 3 * dx) != (prod >= 2) {
                    equivalence_failures += 1;
                }
            }
        }
    }
    let pass = recursion_failures == 0 && max_failures == 0 && lct_failures == 0 && equivalence_failures == 0;
    Ok(json!({
        "recursion_failures": recursion_failures,
        "max_component_failures": max_failures,
        "lct_failures": lct_failures,
        "equivalence_failures": equivalence_failures,
        "pass": pass,
    }))
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Predict(a) => predict(a),
        Command::Count(a) => count(a),
        Command::Contact(a) => contact(a),
        Command::Check(a) => check(a),
    }
}

fn resolved_config(cli: &Cli) -> Result<Value> {
    let mut config = serde_json::to_value(cli)?;
    let workers = match &cli.command {
        Command::Count(a) => Some(a.workers),
        Command::Check(a) => Some(a.workers),
        _ => None,
    };
    if let Some(flag) = workers {
        config["command"]["workers"] = json!(resolve_workers(flag)?);
    }
    Ok(config)
}

fn render(cli: &Cli, outcome: Outcome) -> Result<String> {
    Ok(match cli.format {
        Format::Text => outcome.text + "\n",
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("schema".into(), json!(SCHEMA));
            doc.insert("config".into(), resolved_config(cli)?);
            doc.insert("report".into(), outcome.report);
            serde_json::to_string_pretty(&Value::Object(doc))? + "\n"
        }
    })
}

fn emit(cli: &Cli, body: &str) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let result = dispatch(&cli).and_then(|outcome| {
        let refuted = outcome.refuted;
        emit(&cli, &render(&cli, outcome)?)?;
        Ok(refuted)
    });
    match result {
        Ok(false) => EXIT_OK,
        Ok(true) => EXIT_REFUTED,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
