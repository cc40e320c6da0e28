use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use schur_prep::estimate::{end_to_end_with_l1, CostParams, L1Norm, Mode};
use schur_prep::fock::PreparationTask;
use schur_prep::repr::{enumerate_partitions, sym_group_dimension, weyl_dimension, Encoding};
use schur_prep::sim::{
    golden_rows, prepare_task, schur_state, state_csv, state_json, verify_golden, Method, SpectralOptions, ZERO_TOL,
};
use schur_prep::sweep::{find_crossover, rows_to_csv, run_sweep, SweepMode, SweepSpec};
use schur_prep::Error;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "schurprep", version, about = "Schur-basis state preparation: label mapping, simulation and resource estimates")]
struct Cli {
    /// JSON file with estimator parameters (every field optional).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Map a Fock-space task onto Schur labels.
    Map {
        /// Task JSON file.
        task: PathBuf,
    },
    /// Build the first-quantized state for a task.
    Prepare {
        task: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Spectral)]
        method: MethodArg,
        /// Write the amplitudes to this file.
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Amplitudes at or below this magnitude are omitted from the export.
        #[arg(long, default_value_t = ZERO_TOL)]
        tol: f64,
    },
    /// Reconstruct the 27 U(3) reference states and check dimension identities.
    Selftest {
        #[arg(long, value_enum, default_value_t = MethodArg::Spectral)]
        method: MethodArg,
        /// Perturb one reference row; the run must then fail.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Single-point end-to-end resource report.
    Estimate(EstimateArgs),
    /// Grid of resource reports as CSV.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct EstimateArgs {
    /// Derive d, N, L and the one-norm from a task file instead of flags.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["d", "n", "l"])]
    task: Option<PathBuf>,
    #[arg(long, required_unless_present = "task")]
    d: Option<usize>,
    #[arg(long = "N", required_unless_present = "task")]
    n: Option<usize>,
    #[arg(long = "L", required_unless_present = "task")]
    l: Option<u64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Oaa)]
    mode: ModeArg,
    #[arg(long, value_enum)]
    encoding: Option<EncodingArg>,
    /// LCU one-norm; defaults to sqrt(L).
    #[arg(long)]
    l1: Option<f64>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Sweep spec JSON file; axis flags are used when absent.
    spec: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', conflicts_with = "spec")]
    d: Vec<usize>,
    #[arg(long = "N", value_delimiter = ',', conflicts_with = "spec")]
    n: Vec<usize>,
    #[arg(long = "L", value_delimiter = ',', conflicts_with = "spec")]
    l: Vec<u64>,
    /// `a..b` expands to powers of two `2^a ..= 2^b`.
    #[arg(long = "L-pow2", value_name = "A..B", conflicts_with_all = ["spec", "l"])]
    l_pow2: Option<String>,
    #[arg(long, value_delimiter = ',', conflicts_with = "spec")]
    eps: Vec<f64>,
    #[arg(long, value_enum, conflicts_with = "spec")]
    mode: Option<SweepModeArg>,
    #[arg(long, value_enum, conflicts_with = "spec")]
    encoding: Option<EncodingArg>,
    /// CSV destination; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Also locate the L crossover per (d, N, epsilon, mode); printed as JSON
    /// on stdout, so the CSV needs `--out`.
    #[arg(long, requires = "out")]
    crossover: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Spectral,
    Cascade,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Spectral => Method::Spectral,
            MethodArg::Cascade => Method::Cascade,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Rus,
    Oaa,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Rus => Mode::Rus,
            ModeArg::Oaa => Mode::Oaa,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SweepModeArg {
    Rus,
    Oaa,
    Both,
}

impl From<SweepModeArg> for SweepMode {
    fn from(m: SweepModeArg) -> Self {
        match m {
            SweepModeArg::Rus => SweepMode::Rus,
            SweepModeArg::Oaa => SweepMode::Oaa,
            SweepModeArg::Both => SweepMode::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EncodingArg {
    Naive,
    Compressed,
    BalancedProxy,
}

impl From<EncodingArg> for Encoding {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::Naive => Encoding::Naive,
            EncodingArg::Compressed => Encoding::Compressed,
            EncodingArg::BalancedProxy => Encoding::BalancedProxy,
        }
    }
}

/// Command failure carrying the process exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

fn validation(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| validation(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| validation(format!("cannot write {}: {e}", path.display())))
}

fn emit(v: &Value) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Splits an optional `"params"` object off a JSON document.
fn split_params(text: &str, what: &str) -> Result<(Value, Option<Value>), Failure> {
    let mut doc: Value = serde_json::from_str(text).map_err(|e| validation(format!("{what}: {e}")))?;
    let params = doc.as_object_mut().and_then(|o| o.remove("params"));
    Ok((doc, params))
}

/// Config file, then document-level `"params"` on top.
fn load_params(config: Option<&Path>, inline: Option<Value>) -> Result<CostParams, Failure> {
    let mut merged = match config {
        Some(p) => {
            let v: Value = serde_json::from_str(&read(p)?).map_err(|e| validation(format!("config: {e}")))?;
            if !v.is_object() {
                return Err(validation("config: expected a JSON object"));
            }
            v
        }
        None => json!({}),
    };
    if let Some(Value::Object(extra)) = inline {
        let base = merged.as_object_mut().expect("checked above");
        for (k, v) in extra {
            base.insert(k, v);
        }
    } else if inline.is_some() {
        return Err(validation("params: expected a JSON object"));
    }
    Ok(CostParams::from_json(&merged.to_string())?)
}

fn load_task(path: &Path, config: Option<&Path>) -> Result<(PreparationTask, CostParams), Failure> {
    let (doc, params) = split_params(&read(path)?, "schema")?;
    let task = PreparationTask::from_json(&doc.to_string())?;
    let params = load_params(config, params)?;
    Ok((task, params))
}

fn cmd_map(task: &Path, config: Option<&Path>) -> CmdResult {
    let (task, _) = load_task(task, config)?;
    let mapped = task.map()?;
    let terms: Vec<Value> = mapped
        .terms
        .iter()
        .map(|t| {
            json!({
                "occupations": t.fock.occupations,
                "z": t.z.labels,
                "gt": t.label.mu.short(),
                "gt_rows": t.label.mu.rows(),
                "sigma": t.label.sigma,
                "re": t.coeff.re,
                "im": t.coeff.im,
            })
        })
        .collect();
    emit(&json!({
        "d": mapped.d,
        "N": mapped.n,
        "statistics": task.statistics,
        "lambda": mapped.lambda.parts(),
        "sigma": mapped.sigma,
        "terms": terms,
    }));
    Ok(())
}

fn cmd_prepare(task: &Path, config: Option<&Path>, method: Method, export: Option<&Path>, format: Format, tol: f64) -> CmdResult {
    let (task, _) = load_task(task, config)?;
    let opts = SpectralOptions::default();
    let mapped = task.map()?;
    let prepared = prepare_task(&task, method, &opts)?;
    let mut worst: f64 = 0.0;
    for t in &mapped.terms {
        let v = schur_state(&t.label, mapped.d, method, &opts)?;
        worst = worst.max((v.inner(&prepared.state) - t.coeff).norm());
    }
    let nonzero = prepared.state.nonzero(tol);
    if let Some(path) = export {
        let body = match format {
            Format::Json => serde_json::to_string_pretty(&state_json(&prepared.state, tol)).expect("serializable") + "\n",
            Format::Csv => state_csv(&prepared.state, tol),
        };
        write(path, &body)?;
    }
    let mut report = json!({
        "d": mapped.d,
        "N": mapped.n,
        "statistics": task.statistics,
        "lambda": prepared.lambda.parts(),
        "sigma": prepared.sigma,
        "method": method.to_string(),
        "dimension": prepared.state.dim(),
        "norm": prepared.norm,
        "nonzero": nonzero.len(),
        "max_coefficient_error": worst,
    });
    if export.is_none() {
        report["amplitudes"] = to_value(&nonzero);
    }
    emit(&report);
    Ok(())
}

fn dimension_identity_grid() -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut failures = Vec::new();
    for d in 1usize..=8 {
        for n in 1usize..=8 {
            let total: BigUint = enumerate_partitions(n, d)
                .iter()
                .map(|l| weyl_dimension(l, d) * sym_group_dimension(l))
                .sum();
            if total != BigUint::from(d).pow(n as u32) {
                failures.push(format!("d={d}, N={n}"));
            }
            checked += 1;
        }
    }
    (checked, failures)
}

fn cmd_selftest(method: Method, inject_fault: bool) -> CmdResult {
    let mut rows = golden_rows();
    if inject_fault {
        rows[0].expansion.push(("000", 1e-3));
    }
    let golden = verify_golden(&rows, method)?;
    let (checked, failures) = dimension_identity_grid();
    let pass = golden.all_match() && failures.is_empty();
    emit(&json!({
        "pass": pass,
        "golden": to_value(&golden),
        "dimension_identity": {"checked": checked, "failures": failures},
    }));
    if pass {
        Ok(())
    } else {
        Err(Failure {
            code: 3,
            message: format!(
                "selftest failed: {}/{} reference states matched, {} dimension failures",
                golden.matched,
                golden.total,
                failures.len()
            ),
        })
    }
}

fn cmd_estimate(a: &EstimateArgs, config: Option<&Path>) -> CmdResult {
    let (d, n, l, task_l1, mut params) = match &a.task {
        Some(path) => {
            let (task, params) = load_task(path, config)?;
            let l1: f64 = task.terms.iter().map(|t| t.re.hypot(t.im)).sum();
            (task.d, task.n, task.terms.len() as u64, Some(l1), params)
        }
        None => {
            let params = load_params(config, None)?;
            (a.d.expect("required"), a.n.expect("required"), a.l.expect("required"), None, params)
        }
    };
    if let Some(e) = a.eps {
        params.epsilon = e;
    }
    if let Some(e) = a.encoding {
        params.encoding = e.into();
    }
    params.validate()?;
    let l1 = match a.l1.or(task_l1) {
        Some(v) if !(v.is_finite() && v > 0.0) => return Err(validation(format!("l1 must be positive, got {v}"))),
        Some(v) => L1Norm::new(v),
        None => L1Norm::cauchy_schwarz(l),
    };
    let report = end_to_end_with_l1(d, n, l, l1, a.mode.into(), &params)?;
    emit(&to_value(&report));
    Ok(())
}

fn parse_pow2_range(s: &str) -> Result<Vec<u64>, Failure> {
    let bad = || validation(format!("--L-pow2 expects A..B with 1 <= A <= B <= 62, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a < 1 || a > b || b > 62 {
        return Err(bad());
    }
    Ok((a..=b).map(|e| 1u64 << e).collect())
}

fn cmd_sweep(a: &SweepArgs, config: Option<&Path>) -> CmdResult {
    let (spec, params) = match &a.spec {
        Some(path) => {
            let (doc, inline) = split_params(&read(path)?, "sweep spec")?;
            (SweepSpec::from_json(&doc.to_string())?, load_params(config, inline)?)
        }
        None => {
            let l = match &a.l_pow2 {
                Some(r) => parse_pow2_range(r)?,
                None => a.l.clone(),
            };
            let mut params = load_params(config, None)?;
            let epsilon = if a.eps.is_empty() { vec![params.epsilon] } else { a.eps.clone() };
            if let Some(e) = a.encoding {
                params.encoding = e.into();
            }
            let spec = SweepSpec {
                d: a.d.clone(),
                n: a.n.clone(),
                l,
                epsilon,
                mode: a.mode.map(Into::into).unwrap_or_default(),
                encoding: a.encoding.map(Into::into),
            };
            spec.validate()?;
            (spec, params)
        }
    };
    let rows = run_sweep(&spec, &params)?;
    let csv = rows_to_csv(&rows);
    match &a.out {
        Some(path) => write(path, &csv)?,
        None => print!("{csv}"),
    }
    if a.crossover {
        let mut base = params.clone();
        if let Some(e) = spec.encoding {
            base.encoding = e;
        }
        let mut found = Vec::new();
        for &d in &spec.d {
            for &n in &spec.n {
                for &eps in &spec.epsilon {
                    let p = base.clone().with_epsilon(eps);
                    for &m in spec.mode.modes() {
                        let c = find_crossover(d, n, m, &p)?;
                        let mut v = to_value(&c);
                        v["d"] = json!(d);
                        v["N"] = json!(n);
                        v["epsilon"] = json!(eps);
                        found.push(v);
                    }
                }
            }
        }
        emit(&json!({ "crossovers": found }));
    }
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    let config = cli.config.as_deref();
    match cli.command {
        Command::Map { task } => cmd_map(&task, config),
        Command::Prepare {
            task,
            method,
            export,
            format,
            tol,
        } => cmd_prepare(&task, config, method.into(), export.as_deref(), format, tol),
        Command::Selftest { method, inject_fault } => cmd_selftest(method.into(), inject_fault),
        Command::Estimate(a) => cmd_estimate(&a, config),
        Command::Sweep(a) => cmd_sweep(&a, config),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
