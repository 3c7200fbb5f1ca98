//! Command-line front end for `lpsum`.
//!
//! Exit codes: 0 on success, 2 for domain or region errors, 3 for I/O and
//! parse errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use lpsum::constructions::Family;
use lpsum::exponents::{
    bennett_carl_r, cotype_of_lq, kwapien_exponent, lp_valued_exponent, multilinear_exponent,
    polynomial_exponent, praciano_exponent, zalduendo_exponent, DomainVector, ExponentError,
    ExponentResult, ExtExponent,
};
use lpsum::experiments::{
    chevet_growth, mixed_sum_check, optimality_slope, sweep, ExperimentConfig, ExperimentError,
    FamilySpec, NormSource, Report, SweepResult, DEFAULT_N_GRID, RATIO_SLACK, SLOPE_TOL,
};
use lpsum::normest::{estimate_norm, EstimatorConfig, NormError};
use lpsum::tensors::{CoefficientTensor, MultilinearSpec, TensorError};

pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Parameters outside a formula's region or violating a precondition.
    Domain(String),
    /// Unreadable files, malformed JSON or unparsable arguments.
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Input(_) => EXIT_INPUT,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(m) | CliError::Input(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ExponentError> for CliError {
    fn from(e: ExponentError) -> Self {
        match e {
            ExponentError::Parse(_) => CliError::Input(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<TensorError> for CliError {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::Json(_) => CliError::Input(e.to_string()),
            TensorError::Exponent(e) => e.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<NormError> for CliError {
    fn from(e: NormError) -> Self {
        match e {
            NormError::Tensor(e) => e.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Exponent(e) => e.into(),
            ExperimentError::Tensor(e) => e.into(),
            ExperimentError::Norm(e) => e.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "lpsum", version, about = "Summability exponents and norm experiments for multilinear maps on lp spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every randomized step; echoed in the output.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form summability exponents.
    Exponent(ExponentArgs),
    /// Estimate the norm of a tensor stored as JSON.
    Norm(NormArgs),
    /// Write a construction tensor as JSON.
    Construct(ConstructArgs),
    /// Coefficient sum over norm estimate across dimensions.
    Verify(SweepArgs),
    /// Growth slope of coefficient sum over the analytic norm bound.
    Growth(SweepArgs),
    /// Worst mixed-sum ratio over random scalar tensors.
    Mixed(MixedArgs),
    /// Growth of mean random-sign form norms.
    Chevet(ChevetArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExponentKind {
    Polynomial,
    Multilinear,
    Praciano,
    LpValued,
    Kwapien,
    BennettCarl,
    Zalduendo,
    Cotype,
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    #[arg(long, value_enum)]
    pub kind: ExponentKind,
    /// Domain exponents, comma separated (`inf` allowed).
    #[arg(long)]
    pub p: Option<DomainVector>,
    #[arg(long)]
    pub u: Option<ExtExponent>,
    #[arg(long)]
    pub q: Option<ExtExponent>,
    #[arg(long)]
    pub r: Option<ExtExponent>,
    /// Degree of homogeneity.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[arg(long)]
    pub tensor: PathBuf,
    #[arg(long)]
    pub p: DomainVector,
    /// Target `ℓ_u`; omit for scalar-valued tensors.
    #[arg(long)]
    pub u: Option<ExtExponent>,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: DomainVector,
    #[arg(long)]
    pub u: Option<ExtExponent>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `auto` resolves to the exponent the family is built to witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TChoice {
    Auto,
    Value(ExtExponent),
}

impl std::str::FromStr for TChoice {
    type Err = ExponentError;

    fn from_str(s: &str) -> std::result::Result<Self, ExponentError> {
        if s.trim() == "auto" {
            Ok(TChoice::Auto)
        } else {
            s.parse().map(TChoice::Value)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Estimate,
    Bound,
    BruteForce,
}

impl From<SourceArg> for NormSource {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::Estimate => NormSource::Estimate,
            SourceArg::Bound => NormSource::AnalyticBound,
            SourceArg::BruteForce => NormSource::BruteForce,
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub p: DomainVector,
    #[arg(long)]
    pub u: Option<ExtExponent>,
    #[arg(long)]
    pub q: Option<ExtExponent>,
    #[arg(long, default_value = "auto")]
    pub t: TChoice,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_N_GRID)]
    pub n: Vec<usize>,
    /// Norm used in ratios; `verify` defaults to the estimate, `growth` to the bound.
    #[arg(long, value_enum)]
    pub source: Option<SourceArg>,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
}

#[derive(Debug, Args)]
pub struct MixedArgs {
    #[arg(long)]
    pub p: DomainVector,
    #[arg(long, default_value = "2")]
    pub q: ExtExponent,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = SourceArg::BruteForce)]
    pub source: SourceArg,
}

#[derive(Debug, Args)]
pub struct ChevetArgs {
    #[arg(long)]
    pub p: DomainVector,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_N_GRID)]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 32)]
    pub samples: usize,
}

fn require<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| CliError::Input(format!("missing required argument --{name}")))
}

fn rho_json(res: &ExponentResult) -> Value {
    json!({
        "rho": res.rho.to_string(),
        "case": res.case.as_str(),
        "optimal_known": res.optimality_known,
    })
}

pub fn exponent_report(a: &ExponentArgs) -> Result<Value> {
    let ps = || a.p.clone().ok_or_else(|| CliError::Input("missing required argument --p".into()));
    let single_p = || -> Result<ExtExponent> {
        let ps = ps()?;
        match ps.ps() {
            [p] => Ok(*p),
            _ => Err(CliError::Domain(format!("expected a single --p, got {ps}"))),
        }
    };
    Ok(match a.kind {
        ExponentKind::Polynomial => rho_json(&polynomial_exponent(
            require(a.u, "u")?,
            require(a.q, "q")?,
            single_p()?,
            require(a.m, "m")?,
        )?),
        ExponentKind::Multilinear => {
            rho_json(&multilinear_exponent(require(a.r, "r")?, require(a.q, "q")?, &ps()?)?)
        }
        ExponentKind::Praciano => rho_json(&praciano_exponent(&ps()?)?),
        ExponentKind::LpValued => {
            rho_json(&lp_valued_exponent(require(a.u, "u")?, require(a.q, "q")?, &ps()?)?)
        }
        ExponentKind::Kwapien => rho_json(&kwapien_exponent(require(a.q, "q")?, &ps()?)?),
        ExponentKind::BennettCarl => {
            json!({"rho": bennett_carl_r(require(a.u, "u")?, require(a.q, "q")?)?.to_string()})
        }
        ExponentKind::Zalduendo => {
            json!({"rho": zalduendo_exponent(single_p()?, require(a.m, "m")?)?.to_string()})
        }
        ExponentKind::Cotype => {
            let c = cotype_of_lq(require(a.q, "q")?);
            json!({"rho": c.value.to_string(), "finite": c.finite})
        }
    })
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("json values serialize"))?;
    Ok(())
}

fn emit_flat(out: &mut dyn Write, v: &Value, format: Format) -> Result<()> {
    let Value::Object(map) = v else {
        return emit_json(out, v);
    };
    match format {
        Format::Json => emit_json(out, v),
        Format::Csv => {
            writeln!(out, "key,value")?;
            for (k, v) in map {
                writeln!(out, "{k},{}", plain(v))?;
            }
            Ok(())
        }
        Format::Text => {
            for (k, v) in map {
                writeln!(out, "{k}: {}", plain(v))?;
            }
            Ok(())
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn estimator(seed: u64, restarts: usize) -> EstimatorConfig {
    EstimatorConfig::default().with_seed(seed).with_restarts(restarts)
}

pub fn norm_report(a: &NormArgs, seed: u64) -> Result<Value> {
    let text = std::fs::read_to_string(&a.tensor)
        .map_err(|e| CliError::Input(format!("{}: {e}", a.tensor.display())))?;
    let tensor = CoefficientTensor::from_json(&text)?;
    let spec = match a.u {
        Some(u) => MultilinearSpec::lu_valued(a.p.clone(), u, u)?,
        None => MultilinearSpec::scalar(a.p.clone()),
    };
    let cfg = EstimatorConfig {
        rel_tol: a.tol,
        ..estimator(seed, a.restarts)
    };
    let est = estimate_norm(&tensor, &spec, &cfg)?;
    let maximizer: Vec<Vec<[f64; 2]>> = est
        .maximizer
        .iter()
        .map(|x| x.iter().map(|z| [z.re, z.im]).collect())
        .collect();
    Ok(json!({
        "value": est.value,
        "converged": est.converged,
        "restarts_used": est.restarts_used,
        "best_restart": est.best_restart,
        "iterations": est.iterations,
        "maximizer": maximizer,
        "seed": seed,
    }))
}

pub fn construct_tensor(a: &ConstructArgs, seed: u64) -> Result<String> {
    let mut fam = FamilySpec::new(a.family, a.p.clone()).with_seed(seed);
    fam.u = a.u;
    Ok(fam.build(a.n)?.tensor.to_json())
}

fn family_spec(a: &SweepArgs, seed: u64) -> FamilySpec {
    FamilySpec {
        family: a.family,
        ps: a.p.clone(),
        u: a.u,
        q: a.q,
        seed,
    }
}

/// The `t` a sweep runs at, with `auto` resolved through the exponent
/// calculus.
pub fn resolve_t(fam: &FamilySpec, t: TChoice) -> Result<ExtExponent> {
    match t {
        TChoice::Value(t) => Ok(t),
        TChoice::Auto => Ok(fam.predicted()?.rho),
    }
}

/// Sweep rows and summary for `verify` (`growth = false`) or `growth`.
pub fn sweep_report(a: &SweepArgs, seed: u64, growth: bool) -> Result<(SweepResult, Value)> {
    let fam = family_spec(a, seed);
    let t = resolve_t(&fam, a.t)?;
    let cfg = ExperimentConfig {
        estimator: estimator(seed, a.restarts),
        ..ExperimentConfig::default()
    };
    let default_source = if growth { SourceArg::Bound } else { SourceArg::Estimate };
    let source: NormSource = a.source.unwrap_or(default_source).into();
    let result = sweep(&fam, t, &a.n, source, &cfg)?;
    let fit = if growth && source == NormSource::AnalyticBound {
        optimality_slope(&fam, t, &a.n, &cfg)?
    } else {
        result.fit()?
    };
    let pass = if growth {
        fit.slope <= SLOPE_TOL
    } else {
        result.is_nonincreasing()
    };
    let report = Report {
        family: a.family.as_str().into(),
        params: fam.params(),
        t: t.to_string(),
        slope: fit.slope,
        expected_exponent: fam.expected_slope(t)?,
        pass,
    };
    let mut v = serde_json::to_value(&report).expect("report serializes");
    let obj = v.as_object_mut().expect("object");
    obj.insert("norm_source".into(), json!(source.as_str()));
    obj.insert("max_residual".into(), json!(fit.max_residual));
    obj.insert("seed".into(), json!(seed));
    if let Ok(pred) = fam.predicted() {
        obj.insert("rho".into(), json!(pred.rho.to_string()));
        obj.insert("case".into(), json!(pred.case.as_str()));
    }
    Ok((result, v))
}

fn emit_sweep(out: &mut dyn Write, result: &SweepResult, summary: Value, format: Format) -> Result<()> {
    match format {
        Format::Csv => write!(out, "{}", result.to_csv())?,
        Format::Json => {
            let rows: Vec<Value> = (0..result.n_values.len())
                .map(|i| {
                    json!({
                        "n": result.n_values[i],
                        "lhs": result.lhs_values[i],
                        "norm": result.norm_values[i],
                        "ratio": result.ratio_values[i],
                    })
                })
                .collect();
            let mut v = summary;
            v.as_object_mut().expect("object").insert("rows".into(), Value::Array(rows));
            emit_json(out, &v)?;
        }
        Format::Text => {
            let mut s = String::new();
            for i in 0..result.n_values.len() {
                let _ = writeln!(
                    s,
                    "n = {:>4}  lhs = {:.6e}  norm = {:.6e}  ratio = {:.6}",
                    result.n_values[i], result.lhs_values[i], result.norm_values[i], result.ratio_values[i]
                );
            }
            write!(out, "{s}")?;
            emit_flat(out, &summary_text(summary), Format::Text)?;
        }
    }
    Ok(())
}

fn summary_text(v: Value) -> Value {
    let mut map = Map::new();
    if let Value::Object(obj) = v {
        for (k, val) in obj {
            let val = match val {
                Value::Object(inner) => Value::String(
                    inner.iter().map(|(a, b)| format!("{a}={}", plain(b))).collect::<Vec<_>>().join(" "),
                ),
                other => other,
            };
            map.insert(k, val);
        }
    }
    Value::Object(map)
}

pub fn mixed_report(a: &MixedArgs, seed: u64) -> Result<Value> {
    let cfg = ExperimentConfig::default().with_seed(seed);
    let worst = mixed_sum_check(&a.p, a.q, a.trials, a.n, a.source.into(), &cfg)?;
    let ceiling = std::f64::consts::SQRT_2.powi(a.p.m() as i32 - 1) * RATIO_SLACK;
    Ok(json!({
        "p": a.p.to_string(),
        "q": a.q.to_string(),
        "n": a.n,
        "trials": a.trials,
        "norm_source": NormSource::from(a.source).as_str(),
        "worst_ratio": worst,
        "ceiling": ceiling,
        "pass": worst <= ceiling,
        "seed": seed,
    }))
}

pub fn chevet_report(a: &ChevetArgs, seed: u64) -> Result<Value> {
    let cfg = ExperimentConfig::default().with_seed(seed);
    let rep = chevet_growth(&a.p, &a.n, a.samples, &cfg)?;
    Ok(json!({
        "p": a.p.to_string(),
        "n_values": rep.n_values,
        "mean_norms": rep.mean_norms,
        "slope": rep.fit.slope,
        "bound_exponent": rep.bound_exponent,
        "pass": rep.fit.slope <= rep.bound_exponent + 0.1,
        "samples": a.samples,
        "seed": seed,
    }))
}

/// Executes one parsed command, writing the report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let seed = cli.seed;
    match &cli.command {
        Command::Exponent(a) => emit_flat(out, &exponent_report(a)?, cli.format),
        Command::Norm(a) => {
            let mut v = norm_report(a, seed)?;
            if cli.format != Format::Json {
                v.as_object_mut().expect("object").remove("maximizer");
            }
            emit_flat(out, &v, cli.format)
        }
        Command::Construct(a) => {
            let text = construct_tensor(a, seed)?;
            match &a.out {
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
                None => {
                    writeln!(out, "{text}")?;
                    Ok(())
                }
            }
        }
        Command::Verify(a) => {
            let (res, v) = sweep_report(a, seed, false)?;
            emit_sweep(out, &res, v, cli.format)
        }
        Command::Growth(a) => {
            let (res, v) = sweep_report(a, seed, true)?;
            emit_sweep(out, &res, v, cli.format)
        }
        Command::Mixed(a) => emit_flat(out, &mixed_report(a, seed)?, cli.format),
        Command::Chevet(a) => emit_flat(out, &chevet_report(a, seed)?, cli.format),
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INPUT,
            };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
