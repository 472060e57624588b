//! Command-line front end. `main.rs` only forwards to [`dispatch`].
//!
//! Every subcommand writes JSON to standard output. Failures print an
//! `{"error": {"kind", "message"}}` object and exit with 2 (validation),
//! 3 (enumeration cap) or 64 (usage).

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::continuous::{
    grid_experiment, line_integral_on_surface, theorem1_bound, verify_membership, ContinuousError, ExtremalSurface,
};
use crate::func1d::{EmpiricalRV, Func1dError, MonotoneMap1D, MonotonePath, DEFAULT_TOL};
use crate::oracle::{brute_min_max, OracleError};
use crate::poset::{GridOrder, Poset, PosetError, QuerySet, DEFAULT_CAP};
use crate::process::{
    expectation_at_tau, simplified_bound, theorem2_bound, verify_process_membership, ExpectationMode,
    ExtremalProcess, ProcessError,
};
use crate::scale::{fraction_string, parse_rational, BoundResult, Rational, ScaleError, ValueScale};
use crate::selftest::{self, DEFAULT_SEED};
use crate::solver::{solve, Extremum, SolveError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable overriding the seed from a config file.
pub const SEED_ENV: &str = "MONOEXT_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Settings shared by all subcommands. Sources, lowest precedence first:
/// defaults, `--config` file, `MONOEXT_SEED`, explicit flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tol: f64,
    pub cap: usize,
    pub seed: u64,
    /// Grid resolution used by membership checks when none is given.
    pub membership_grid: usize,
    pub format: Format,
    pub verbosity: u8,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tol: DEFAULT_TOL,
            cap: DEFAULT_CAP,
            seed: DEFAULT_SEED,
            membership_grid: 400,
            format: Format::Json,
            verbosity: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::validation("config", format!("tol must be positive, got {}", self.tol)));
        }
        if self.cap == 0 {
            return Err(CliError::validation("config", "cap must be at least 1"));
        }
        if self.membership_grid < 2 {
            return Err(CliError::validation("config", "membership_grid must be at least 2"));
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "monoext", version, about = "Extremal sums of monotone bijections and their continuous limits")]
struct Cli {
    /// JSON file with RunConfig fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Timing and progress on standard error.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Min,
    Max,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extremal sums via the down-set formulas.
    Solve {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        scale: String,
        #[arg(long)]
        query: String,
        #[arg(long, value_enum, default_value = "min")]
        mode: Mode,
        /// Include the full witness function.
        #[arg(long)]
        witness: bool,
    },
    /// Extremal sums by enumerating every linear extension.
    Oracle {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        scale: String,
        #[arg(long)]
        query: String,
    },
    /// Discretized surface column sums for m = id and a constant path.
    GridExp {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// The line-integral lower bound.
    ContBound {
        #[arg(long)]
        m: String,
        #[arg(long)]
        t: String,
    },
    /// Samples the extremal surface and checks class membership.
    ContExtremal {
        #[arg(long)]
        m: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        grid: Option<usize>,
        /// CSV destination for `x,y,value` rows.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The random-time lower bound.
    ProcBound {
        #[arg(long)]
        m: String,
        #[arg(long)]
        tau: String,
        /// Also report the integral of r_τ(s)·s (m must be the identity).
        #[arg(long)]
        simplified: bool,
    },
    /// Expectation of the extremal process at the random time.
    ProcSim {
        #[arg(long)]
        m: String,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        trials: usize,
        /// Membership grid as `grid_t,grid_y`.
        #[arg(long)]
        verify: Option<String>,
    },
    /// Runs every acceptance check and prints a pass/fail table.
    Selftest {
        /// Print the outcomes as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Validation { kind: String, message: String },
    CapExceeded(usize),
}

impl CliError {
    fn validation(kind: &str, message: impl Into<String>) -> Self {
        CliError::Validation {
            kind: kind.to_owned(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation { .. } => EXIT_VALIDATION,
            CliError::CapExceeded(_) => EXIT_CAP,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Usage(m) => ("usage".to_owned(), m.clone()),
            CliError::Validation { kind, message } => (kind.clone(), message.clone()),
            CliError::CapExceeded(cap) => (
                "cap_exceeded".to_owned(),
                format!("enumeration exceeded the cap of {cap}"),
            ),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::CapExceeded(cap) => CliError::CapExceeded(cap),
            other => CliError::validation("poset", other.to_string()),
        }
    }
}

impl From<ScaleError> for CliError {
    fn from(e: ScaleError) -> Self {
        CliError::validation("scale", e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Poset(p) => p.into(),
            other => CliError::validation("solve", other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Poset(p) => p.into(),
            other => CliError::validation("oracle", other.to_string()),
        }
    }
}

impl From<Func1dError> for CliError {
    fn from(e: Func1dError) -> Self {
        CliError::validation("function", e.to_string())
    }
}

impl From<ContinuousError> for CliError {
    fn from(e: ContinuousError) -> Self {
        CliError::validation("continuous", e.to_string())
    }
}

impl From<ProcessError> for CliError {
    fn from(e: ProcessError) -> Self {
        CliError::validation("process", e.to_string())
    }
}

/// What a run produced: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the subcommand, reading
/// the process environment.
pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env: HashMap<String, String> = std::env::vars().collect();
    dispatch_with_env(args, &env)
}

/// [`dispatch`] with an explicit environment.
pub fn dispatch_with_env<I, T>(args: I, env: &HashMap<String, String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => failure(&CliError::Usage(text.trim_end().to_owned()), String::new()),
            };
        }
    };
    let mut stderr = String::new();
    let result = resolve_config(&cli, env).and_then(|config| {
        let start = Instant::now();
        let out = run(&cli.command, &config);
        if config.verbosity > 0 {
            let _ = writeln!(stderr, "elapsed {:.3}s", start.elapsed().as_secs_f64());
        }
        out
    });
    match result {
        Ok((code, stdout)) => Outcome { code, stdout, stderr },
        Err(e) => failure(&e, stderr),
    }
}

fn failure(e: &CliError, mut stderr: String) -> Outcome {
    if let CliError::Usage(text) = e {
        stderr.push_str(text);
        stderr.push('\n');
    }
    Outcome {
        code: e.exit_code(),
        stdout: pretty(&e.to_json()),
        stderr,
    }
}

fn resolve_config(cli: &Cli, env: &HashMap<String, String>) -> Result<RunConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::validation("config", format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::validation("config", e.to_string()))?
        }
        None => RunConfig::default(),
    };
    if let Some(raw) = env.get(SEED_ENV) {
        config.seed = raw
            .trim()
            .parse()
            .map_err(|_| CliError::validation("config", format!("{SEED_ENV}={raw} is not an unsigned integer")))?;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(tol) = cli.tol {
        config.tol = tol;
    }
    if let Some(cap) = cli.cap {
        config.cap = cap;
    }
    if let Some(format) = cli.format {
        config.format = format;
    }
    config.verbosity = config.verbosity.max(cli.verbose);
    config.validate()?;
    Ok(config)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn json_only(config: &RunConfig, command: &str) -> Result<(), CliError> {
    if config.format == Format::Csv {
        return Err(CliError::validation("format", format!("{command} only writes JSON")));
    }
    Ok(())
}

/// A file path if one exists, otherwise the argument itself as inline JSON.
fn load_json(arg: &str, what: &str) -> Result<Value, CliError> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| CliError::validation(what, format!("{arg}: {e}")))?
    } else {
        arg.to_owned()
    };
    serde_json::from_str(&text)
        .map_err(|e| CliError::validation(what, format!("`{arg}` is neither a readable file nor valid JSON: {e}")))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PosetSpec {
    Grid { grid: GridSpec },
    Explicit { labels: Vec<String>, covers: Vec<(String, String)> },
}

#[derive(Deserialize)]
struct GridSpec {
    n: usize,
    #[serde(default = "default_grid_order")]
    order: GridOrder,
}

fn default_grid_order() -> GridOrder {
    GridOrder::Product
}

pub fn load_poset(arg: &str) -> Result<Poset, CliError> {
    let spec: PosetSpec = serde_json::from_value(load_json(arg, "poset")?)
        .map_err(|e| CliError::validation("poset", e.to_string()))?;
    Ok(match spec {
        PosetSpec::Grid { grid } => Poset::grid(grid.n, grid.order)?,
        PosetSpec::Explicit { labels, covers } => Poset::new(&labels, &covers)?,
    })
}

#[derive(Deserialize)]
struct QuerySpec {
    query: Vec<String>,
}

pub fn load_query(poset: &Poset, arg: &str) -> Result<QuerySet, CliError> {
    let spec: QuerySpec = serde_json::from_value(load_json(arg, "query")?)
        .map_err(|e| CliError::validation("query", e.to_string()))?;
    Ok(QuerySet::new(poset, &spec.query)?)
}

/// A scale in exact or floating-point arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyScale {
    Exact(ValueScale<Rational>),
    Float(ValueScale<f64>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScaleSpec {
    Values { values: Vec<Value> },
    FromM { from_m: FromMSpec },
}

#[derive(Deserialize)]
struct FromMSpec {
    m: Value,
    n: usize,
}

pub fn load_scale(arg: &str) -> Result<AnyScale, CliError> {
    let spec: ScaleSpec = serde_json::from_value(load_json(arg, "scale")?)
        .map_err(|e| CliError::validation("scale", e.to_string()))?;
    match spec {
        ScaleSpec::Values { values } => {
            let parsed = values
                .iter()
                .map(|v| match v {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    other => Err(ScaleError::Parse(other.to_string())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(AnyScale::Exact(ValueScale::new(parsed)?))
        }
        ScaleSpec::FromM { from_m } => {
            let m = map_from_spec(serde_json::from_value(from_m.m).map_err(|e| CliError::validation("map", e.to_string()))?)?;
            if m.is_identity() {
                Ok(AnyScale::Exact(ValueScale::uniform_grid(from_m.n)))
            } else {
                Ok(AnyScale::Float(ValueScale::from_m(&m, from_m.n)?))
            }
        }
    }
}

/// `{"kind": "identity" | "power" | "pwl" | "const", ..}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapSpec {
    #[serde(alias = "id")]
    Identity,
    Power {
        p: f64,
    },
    Pwl {
        points: Vec<(f64, f64)>,
    },
    Const {
        value: f64,
    },
}

fn shorthand(arg: &str) -> Option<Result<MapSpec, CliError>> {
    let bad = |what: &str| CliError::validation("map", format!("cannot parse {what} in `{arg}`"));
    let arg = arg.trim();
    if arg == "id" || arg == "identity" {
        return Some(Ok(MapSpec::Identity));
    }
    let (head, tail) = arg.split_once(':')?;
    Some(match head {
        "pow" | "power" => tail.parse().map(|p| MapSpec::Power { p }).map_err(|_| bad("exponent")),
        "const" => tail.parse().map(|value| MapSpec::Const { value }).map_err(|_| bad("constant")),
        "pwl" => tail
            .split(';')
            .map(|pair| {
                let (x, y) = pair.split_once(',').ok_or_else(|| bad("point"))?;
                Ok((x.trim().parse().map_err(|_| bad("point"))?, y.trim().parse().map_err(|_| bad("point"))?))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|points| MapSpec::Pwl { points }),
        _ => return None,
    })
}

/// Shorthand (`id`, `pow:2`, `const:0.5`, `pwl:0,0;0.5,0.25;1,1`), a JSON file, or inline JSON.
pub fn load_map_spec(arg: &str) -> Result<MapSpec, CliError> {
    if let Some(spec) = shorthand(arg) {
        return spec;
    }
    serde_json::from_value(load_json(arg, "map")?).map_err(|e| CliError::validation("map", e.to_string()))
}

fn map_from_spec(spec: MapSpec) -> Result<MonotoneMap1D, CliError> {
    Ok(match spec {
        MapSpec::Identity => MonotoneMap1D::identity(),
        MapSpec::Power { p } => MonotoneMap1D::power(p)?,
        MapSpec::Pwl { points } => MonotoneMap1D::piecewise_linear(points)?,
        MapSpec::Const { .. } => {
            return Err(CliError::validation("map", "a constant is not an increasing bijection"))
        }
    })
}

fn path_from_spec(spec: MapSpec) -> Result<MonotonePath, CliError> {
    Ok(match spec {
        MapSpec::Identity => MonotonePath::identity(),
        MapSpec::Const { value } => MonotonePath::constant(value)?,
        MapSpec::Pwl { points } => MonotonePath::piecewise_linear(points)?,
        MapSpec::Power { .. } => {
            return Err(CliError::validation("path", "power paths are not supported; use pwl points"))
        }
    })
}

pub fn load_map(arg: &str) -> Result<MonotoneMap1D, CliError> {
    map_from_spec(load_map_spec(arg)?)
}

pub fn load_path(arg: &str) -> Result<MonotonePath, CliError> {
    path_from_spec(load_map_spec(arg)?)
}

/// A single-column CSV of values in `[0,1]`; a non-numeric first row is taken as a header.
pub fn load_samples(path: &str) -> Result<EmpiricalRV, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::validation("samples", format!("{path}: {e}")))?;
    let mut values = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::validation("samples", e.to_string()))?;
        let field = record.get(0).unwrap_or("");
        if field.is_empty() {
            continue;
        }
        match field.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if row == 0 => continue,
            Err(_) => {
                return Err(CliError::validation("samples", format!("row {}: `{field}` is not a number", row + 1)))
            }
        }
    }
    Ok(EmpiricalRV::new(values)?)
}

fn exact_json(r: &Rational) -> Value {
    Value::String(fraction_string(r))
}

fn float_json(x: &f64) -> Value {
    json!(x)
}

fn bound_json<T>(
    poset: &Poset,
    query: &QuerySet,
    r: &BoundResult<T>,
    witness: bool,
    value: impl Fn(&T) -> Value,
    scale: &ValueScale<T>,
) -> Value
where
    T: crate::scale::Scalar,
{
    let b = query.elements();
    let mut obj = Map::new();
    obj.insert("objective".into(), value(&r.objective));
    obj.insert(
        "witness_perm".into(),
        json!(r.witness_perm.iter().map(|&p| poset.label(b[p])).collect::<Vec<_>>()),
    );
    if witness {
        let f: Map<String, Value> = (0..poset.len())
            .map(|a| (poset.label(a).to_owned(), value(r.witness_fn.value(scale, a))))
            .collect();
        obj.insert("witness_fn".into(), Value::Object(f));
    }
    obj.insert(
        "per_node_values".into(),
        Value::Array(r.per_node_values.iter().map(&value).collect()),
    );
    Value::Object(obj)
}

fn solve_json<T: crate::scale::Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
    mode: Mode,
    witness: bool,
    cap: usize,
    value: impl Fn(&T) -> Value + Copy,
) -> Result<Value, CliError> {
    let one = |m: Extremum| -> Result<Value, CliError> {
        let r = solve(poset, scale, query, m, cap)?;
        Ok(bound_json(poset, query, &r, witness, value, scale))
    };
    Ok(match mode {
        Mode::Min => one(Extremum::Min)?,
        Mode::Max => one(Extremum::Max)?,
        Mode::Both => json!({ "min": one(Extremum::Min)?, "max": one(Extremum::Max)? }),
    })
}

fn oracle_json<T: crate::scale::Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
    cap: usize,
    value: impl Fn(&T) -> Value + Copy,
) -> Result<Value, CliError> {
    let r = brute_min_max(poset, scale, query, cap)?;
    Ok(json!({
        "min": bound_json(poset, query, &r.min, true, value, scale),
        "max": bound_json(poset, query, &r.max, true, value, scale),
        "count": r.count,
    }))
}

fn parse_verify(spec: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::validation("verify", format!("expected grid_t,grid_y, got `{spec}`"));
    let (a, b) = spec.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn run(command: &Command, config: &RunConfig) -> Result<(i32, String), CliError> {
    let ok = |v: Value| Ok((EXIT_OK, pretty(&v)));
    match command {
        Command::Solve {
            poset,
            scale,
            query,
            mode,
            witness,
        } => {
            json_only(config, "solve")?;
            let poset = load_poset(poset)?;
            let query = load_query(&poset, query)?;
            let v = match load_scale(scale)? {
                AnyScale::Exact(s) => solve_json(&poset, &s, &query, *mode, *witness, config.cap, exact_json)?,
                AnyScale::Float(s) => solve_json(&poset, &s, &query, *mode, *witness, config.cap, float_json)?,
            };
            ok(v)
        }
        Command::Oracle { poset, scale, query } => {
            json_only(config, "oracle")?;
            let poset = load_poset(poset)?;
            let query = load_query(&poset, query)?;
            let v = match load_scale(scale)? {
                AnyScale::Exact(s) => oracle_json(&poset, &s, &query, config.cap, exact_json)?,
                AnyScale::Float(s) => oracle_json(&poset, &s, &query, config.cap, float_json)?,
            };
            ok(v)
        }
        Command::GridExp { alpha, n, k } => {
            let r = grid_experiment(*alpha, *n, *k)?;
            match config.format {
                Format::Json => ok(serde_json::to_value(&r).expect("record serializes")),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.serialize(&r).map_err(|e| CliError::validation("format", e.to_string()))?;
                    let bytes = w.into_inner().map_err(|e| CliError::validation("format", e.to_string()))?;
                    Ok((EXIT_OK, String::from_utf8(bytes).expect("CSV is UTF-8")))
                }
            }
        }
        Command::ContBound { m, t } => {
            json_only(config, "cont-bound")?;
            let (m, t) = (load_map(m)?, load_path(t)?);
            ok(json!({ "bound": theorem1_bound(&m, &t, config.tol)? }))
        }
        Command::ContExtremal { m, t, grid, out } => {
            let (m, t) = (load_map(m)?, load_path(t)?);
            let n = grid.unwrap_or(config.membership_grid);
            let surface = ExtremalSurface::new(m.clone(), t.clone());
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::validation("output", e.to_string());
            w.write_record(["x", "y", "value"]).map_err(io)?;
            for i in 0..n {
                for j in 0..n {
                    let (x, y) = ((i as f64 + 0.5) / n as f64, (j as f64 + 0.5) / n as f64);
                    let v = surface.eval(x, y)?;
                    w.write_record([x.to_string(), y.to_string(), v.to_string()]).map_err(io)?;
                }
            }
            let bytes = w.into_inner().map_err(|e| CliError::validation("output", e.to_string()))?;
            let report = verify_membership(&m, &t, n)?;
            if let Some(path) = out {
                std::fs::write(path, &bytes)
                    .map_err(|e| CliError::validation("output", format!("{}: {e}", path.display())))?;
            } else if config.format == Format::Csv {
                return Ok((EXIT_OK, String::from_utf8(bytes).expect("CSV is UTF-8")));
            }
            ok(json!({
                "bound": theorem1_bound(&m, &t, config.tol)?,
                "line_integral": line_integral_on_surface(&m, &t, config.tol)?,
                "membership": report,
            }))
        }
        Command::ProcBound { m, tau, simplified } => {
            json_only(config, "proc-bound")?;
            let (m, tau) = (load_map(m)?, load_samples(tau)?);
            let bound = theorem2_bound(&m, &tau, config.tol)?;
            if *simplified {
                if !m.is_identity() {
                    return Err(CliError::validation("map", "--simplified requires m = identity"));
                }
                ok(json!({ "bound": bound, "simplified": simplified_bound(&tau) }))
            } else {
                ok(json!({ "bound": bound }))
            }
        }
        Command::ProcSim { m, tau, trials, verify } => {
            json_only(config, "proc-sim")?;
            let (m, tau) = (load_map(m)?, load_samples(tau)?);
            let bound = theorem2_bound(&m, &tau, config.tol)?;
            let proc = ExtremalProcess::new(m, &tau)?;
            let e = expectation_at_tau(
                &proc,
                ExpectationMode::MonteCarlo {
                    trials: *trials,
                    seed: config.seed,
                },
            )?;
            let membership = match verify {
                Some(spec) => {
                    let (gt, gy) = parse_verify(spec)?;
                    serde_json::to_value(verify_process_membership(&proc, gt, gy)?).expect("report serializes")
                }
                None => Value::Null,
            };
            ok(json!({
                "bound": bound,
                "expectation": e.value,
                "stderr": e.stderr,
                "trials": trials,
                "seed": config.seed,
                "membership_report": membership,
            }))
        }
        Command::Selftest { json } => {
            let outcomes = selftest::run_all(config.seed);
            let code = if outcomes.iter().all(|o| o.passed) {
                EXIT_OK
            } else {
                EXIT_FAILED_CHECK
            };
            let text = if *json {
                pretty(&serde_json::to_value(&outcomes).expect("outcomes serialize"))
            } else {
                outcomes.iter().map(|o| o.line() + "\n").collect()
            };
            Ok((code, text))
        }
    }
}
