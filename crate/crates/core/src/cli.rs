//! Command-line front end shared by the `gfbm` binary and the tests.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns
//! the exit code together with what should go to stdout and stderr. Exit
//! codes: 0 success, 1 usage or domain error, 2 a validation check failed.

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bs::{self, MarketParams};
use crate::cev::{self, CevParams};
use crate::error::{Error, Result};
use crate::mc::{self, Driver, TimeGrid};
use crate::process::GfbmParams;
use crate::quad::{integrate, QuadControl};
use crate::quote::{PriceQuote, Provenance};

#[derive(Debug, Parser)]
#[command(
    name = "gfbm",
    version,
    about = "European call pricing under generalized fractional Brownian motion"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output encoding.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form gfBm Black–Scholes call.
    PriceBs(ModelArgs),
    /// Closed-form gfBm CEV call.
    PriceCev(CevArgs),
    /// Tabulate the price density at a fixed time.
    Density(DensityArgs),
    /// Monte Carlo price with standard error.
    Simulate(SimulateArgs),
    /// Run a validation suite.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long)]
    pub hurst: f64,
    #[arg(long)]
    pub s0: f64,
    /// Required by the pricing commands.
    #[arg(long)]
    pub strike: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub rate: f64,
    /// Volatility in the model's native scale. For CEV this is the absolute
    /// diffusion scale, so matching a Black–Scholes σ needs σ·S₀^{1-α/2}.
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub maturity: f64,
}

#[derive(Debug, Clone, Args)]
pub struct CevArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Bs,
    Cev,
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Model::Bs)]
    pub kind: Model,
    /// Elasticity, required for `--kind cev`.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub s_min: f64,
    #[arg(long)]
    pub s_max: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Evaluation time; defaults to the maturity.
    #[arg(long)]
    pub time: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DriverArg {
    Martingale,
    Gfbm,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Model::Bs)]
    pub kind: Model,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub paths: usize,
    /// Euler steps for the CEV model.
    #[arg(long, default_value_t = 512)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = DriverArg::Martingale)]
    pub driver: DriverArg,
    /// Write the simulated paths as CSV (gfBm paths for `--kind bs`).
    #[arg(long)]
    pub dump_paths: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Reductions,
    Phi,
    Limit,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

/// What a finished invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: 1,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => RunOutput::ok(e.to_string()),
                _ => RunOutput::usage(e.to_string()),
            }
        }
    };
    match execute(&cfg) {
        Ok(out) => out,
        Err(e) => RunOutput::usage(format!("error: {e}\n")),
    }
}

fn execute(cfg: &RunConfig) -> Result<RunOutput> {
    let start = Instant::now();
    match &cfg.command {
        Command::PriceBs(m) => {
            let (p, market) = m.build(true)?;
            let quote = bs::call_price(&p, &market);
            Ok(RunOutput::ok(quote_output(cfg.format, "gfbm-bs", m.echo(None), &quote, start)))
        }
        Command::PriceCev(c) => {
            let (p, market) = c.model.build(true)?;
            let cp = CevParams::new(market, c.alpha)?;
            let quote = cev::call_price_cev(&p, &cp)?;
            Ok(RunOutput::ok(quote_output(
                cfg.format,
                "gfbm-cev",
                c.model.echo(Some(c.alpha)),
                &quote,
                start,
            )))
        }
        Command::Density(d) => emit_density_table(cfg.format, d).map(RunOutput::ok),
        Command::Simulate(s) => simulate(cfg.format, s, start).map(RunOutput::ok),
        Command::Validate(v) => Ok(validate(cfg.format, v.suite, start)),
    }
}

impl ModelArgs {
    fn build(&self, need_strike: bool) -> Result<(GfbmParams, MarketParams)> {
        let strike = match (self.strike, need_strike) {
            (Some(k), _) => k,
            (None, false) => self.s0,
            (None, true) => return Err(Error::param("strike", "--strike is required for pricing")),
        };
        let p = GfbmParams::new(self.a, self.b, self.hurst)?;
        let m = MarketParams::new(self.s0, strike, self.rate, self.sigma, self.maturity)?;
        Ok((p, m))
    }

    fn echo(&self, alpha: Option<f64>) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("a".into(), json!(self.a));
        m.insert("b".into(), json!(self.b));
        m.insert("hurst".into(), json!(self.hurst));
        m.insert("s0".into(), json!(self.s0));
        if let Some(k) = self.strike {
            m.insert("strike".into(), json!(k));
        }
        m.insert("rate".into(), json!(self.rate));
        m.insert("sigma".into(), json!(self.sigma));
        m.insert("maturity".into(), json!(self.maturity));
        if let Some(a) = alpha {
            m.insert("alpha".into(), json!(a));
        }
        m
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn provenance_label(p: &Provenance) -> String {
    match p {
        Provenance::ClosedForm { formula } => formula.clone(),
        Provenance::MonteCarlo { n_paths, .. } => format!("monte-carlo/{n_paths}"),
        Provenance::Pde { n_x, n_t } => format!("pde/{n_x}x{n_t}"),
    }
}

fn csv_field(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// One header line and one record, RFC 4180 line endings.
fn csv_record(fields: &[(String, Value)]) -> String {
    let head: Vec<String> = fields.iter().map(|(k, _)| csv_field(&Value::String(k.clone()))).collect();
    let row: Vec<String> = fields.iter().map(|(_, v)| csv_field(v)).collect();
    format!("{}\r\n{}\r\n", head.join(","), row.join(","))
}

fn quote_output(
    format: Format,
    model: &str,
    params: Map<String, Value>,
    quote: &PriceQuote,
    start: Instant,
) -> String {
    quote_output_with(format, model, params, quote, Map::new(), start)
}

fn quote_output_with(
    format: Format,
    model: &str,
    params: Map<String, Value>,
    quote: &PriceQuote,
    extra: Map<String, Value>,
    start: Instant,
) -> String {
    let runtime = elapsed_ms(start);
    match format {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("model".into(), json!(model));
            doc.insert("params".into(), Value::Object(params));
            doc.insert("price".into(), json!(quote.price));
            if let Some(se) = quote.std_error() {
                doc.insert("std_error".into(), json!(se));
            }
            doc.insert("provenance".into(), json!(quote.provenance));
            doc.extend(extra);
            doc.insert("runtime_ms".into(), json!(runtime));
            let mut s = serde_json::to_string_pretty(&Value::Object(doc)).unwrap_or_default();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut fields: Vec<(String, Value)> = vec![("model".into(), json!(model))];
            fields.extend(params);
            fields.push(("price".into(), json!(quote.price)));
            fields.push(("std_error".into(), quote.std_error().map_or(Value::Null, |s| json!(s))));
            fields.push(("provenance".into(), json!(provenance_label(&quote.provenance))));
            fields.extend(extra);
            fields.push(("runtime_ms".into(), json!(runtime)));
            csv_record(&fields)
        }
    }
}

/// Price density on an evenly spaced grid, followed by the mass the density
/// puts on `[s_min, s_max]` (adaptive quadrature, not the grid sum).
pub fn emit_density_table(format: Format, d: &DensityArgs) -> Result<String> {
    if !(d.s_min > 0.0) || !(d.s_max > d.s_min) || !d.s_max.is_finite() {
        return Err(Error::InvalidGrid(format!(
            "need 0 < s_min < s_max, got [{}, {}]",
            d.s_min, d.s_max
        )));
    }
    if d.points < 2 {
        return Err(Error::InvalidGrid("--points must be at least 2".into()));
    }
    let (p, m) = d.model.build(false)?;
    let t = d.time.unwrap_or(m.maturity);
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let cev_params = match d.kind {
        Model::Bs => None,
        Model::Cev => {
            let alpha = d.alpha.ok_or_else(|| Error::param("alpha", "--alpha is required for --kind cev"))?;
            Some(CevParams::new(m, alpha)?)
        }
    };
    let density = |s: f64| -> Result<f64> {
        match &cev_params {
            None => bs::price_density_at(&p, &m, s, t),
            Some(c) => cev::transition_density_s(&p, c, s, t),
        }
    };
    let step = (d.s_max - d.s_min) / (d.points - 1) as f64;
    let mut rows = Vec::with_capacity(d.points);
    for i in 0..d.points {
        let s = d.s_min + step * i as f64;
        rows.push((s, density(s)?));
    }
    let failure = std::cell::RefCell::new(None);
    let mass = integrate(
        |s| match density(s) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        d.s_min,
        d.s_max,
        QuadControl {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_intervals: 20_000,
        },
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let absorbed = match &cev_params {
        Some(c) => Some(cev::absorption_probability(&p, c, t)?),
        None => None,
    };
    let model = match d.kind {
        Model::Bs => "gfbm-bs",
        Model::Cev => "gfbm-cev",
    };
    let mut params = d.model.echo(d.alpha);
    params.insert("time".into(), json!(t));
    params.insert("s_min".into(), json!(d.s_min));
    params.insert("s_max".into(), json!(d.s_max));
    params.insert("points".into(), json!(d.points));
    Ok(match format {
        Format::Json => {
            let table: Vec<Value> = rows.iter().map(|(s, v)| json!({"s": s, "density": v})).collect();
            let mut doc = json!({
                "model": model,
                "params": params,
                "rows": table,
                "mass": mass,
            });
            if let Some(a) = absorbed {
                doc["absorbed"] = json!(a);
            }
            let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("s,density\r\n");
            for (s, v) in &rows {
                let _ = write!(out, "{s},{v}\r\n");
            }
            let _ = write!(out, "mass,{mass}\r\n");
            if let Some(a) = absorbed {
                let _ = write!(out, "absorbed,{a}\r\n");
            }
            out
        }
    })
}

fn simulate(format: Format, s: &SimulateArgs, start: Instant) -> Result<String> {
    let (p, m) = s.model.build(true)?;
    let mut params = s.model.echo(s.alpha);
    params.insert("seed".into(), json!(s.seed));
    params.insert("paths".into(), json!(s.paths));
    let mut extra = Map::new();
    let (estimate, exact, model) = match s.kind {
        Model::Bs => {
            let terminal = mc::bs_terminal(&p, &m, s.paths, s.seed)?;
            if let Some(path) = &s.dump_paths {
                let grid = TimeGrid::uniform(m.maturity, s.steps)?;
                params.insert("steps".into(), json!(s.steps));
                let batch = mc::gfbm_paths(&p, &grid, s.paths, s.seed)?;
                batch.write_csv(BufWriter::new(File::create(path)?))?;
            }
            let est = mc::mc_price(&terminal, m.strike, m.rate, m.maturity)?;
            (est, bs::call_price(&p, &m).price, "gfbm-bs")
        }
        Model::Cev => {
            let alpha = s.alpha.ok_or_else(|| Error::param("alpha", "--alpha is required for --kind cev"))?;
            let c = CevParams::new(m, alpha)?;
            let driver = match s.driver {
                DriverArg::Martingale => Driver::Martingale,
                DriverArg::Gfbm => Driver::Gfbm,
            };
            params.insert("steps".into(), json!(s.steps));
            params.insert("driver".into(), json!(driver));
            let (prices, frac) = if let Some(path) = &s.dump_paths {
                let grid = TimeGrid::uniform(m.maturity, s.steps)?;
                let batch = mc::cev_paths_euler(&p, &c, &grid, s.paths, s.seed, driver)?;
                batch.batch.write_csv(BufWriter::new(File::create(path)?))?;
                let inv = 1.0 / c.power();
                let n = grid.len();
                let prices: Vec<f64> = (0..s.paths)
                    .map(|i| {
                        let y = batch.batch.path(i)[n - 1];
                        if batch.absorbed[i] {
                            0.0
                        } else {
                            (inv * y.ln()).exp()
                        }
                    })
                    .collect();
                (prices, batch.absorption_fraction)
            } else {
                let t = mc::cev_terminal_euler(&p, &c, s.steps, s.paths, s.seed, driver)?;
                (t.prices, t.absorption_fraction)
            };
            extra.insert("absorption_fraction".into(), json!(frac));
            let est = mc::mc_price(&prices, m.strike, m.rate, m.maturity)?;
            (est, cev::call_price_cev(&p, &c)?.price, "gfbm-cev")
        }
    };
    extra.insert("closed_form".into(), json!(exact));
    extra.insert("z_score".into(), json!(estimate.z_score(exact)));
    let quote = PriceQuote {
        price: estimate.mean,
        provenance: Provenance::MonteCarlo {
            std_error: estimate.std_error,
            n_paths: estimate.n_paths,
        },
    };
    Ok(quote_output_with(format, model, params, &quote, extra, start))
}

/// One named check with its measured value and bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(suite: &'static str, name: String, value: f64, tolerance: f64) -> Self {
        Self {
            suite,
            name,
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }

    fn failed(suite: &'static str, name: String, err: &Error) -> Self {
        Self {
            suite,
            name: format!("{name}: {err}"),
            value: f64::NAN,
            tolerance: f64::NAN,
            pass: false,
        }
    }
}

const VALIDATION_MARKETS: [(f64, f64, f64, f64, f64); 4] = [
    (100.0, 100.0, 0.05, 0.2, 1.0),
    (100.0, 80.0, 0.01, 0.35, 0.5),
    (50.0, 60.0, 0.08, 0.15, 2.0),
    (10.0, 9.5, 0.0, 0.5, 0.25),
];

pub fn reduction_checks() -> Vec<Check> {
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let cases = [
        (1.0, 0.0, 0.5),
        (1.0, 0.0, 0.3),
        (1.0, 0.0, 0.7),
        (s2, s2, 0.3),
        (s2, s2, 0.6),
        (s2, s2, 0.5),
    ];
    let mut out = Vec::new();
    for &(a, b, h) in &cases {
        for &(s0, k, r, sigma, t) in &VALIDATION_MARKETS {
            let name = format!("({a:.4},{b:.4},{h}) s0={s0} strike={k}");
            let built = GfbmParams::new(a, b, h).and_then(|p| MarketParams::new(s0, k, r, sigma, t).map(|m| (p, m)));
            match built {
                Ok((p, m)) => {
                    let rep = bs::reduction_report(&p, &m);
                    let label = format!("{name} vs {}", rep.special_formula.unwrap_or("none"));
                    out.push(Check::at_most("reductions", label, rep.gap.unwrap_or(f64::INFINITY), 1e-12));
                }
                Err(e) => out.push(Check::failed("reductions", name, &e)),
            }
        }
    }
    out
}

pub fn phi_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let points = [
        (1.0, 0.5, 0.7, 1.5, 0.2, 0.05, 1.0),
        (1.0, 0.0, 0.3, 1.0, 0.4, 0.1, 2.0),
        (0.7, 0.7, 0.6, 2.5, 0.3, 0.03, 0.5),
        (1.0, 0.2, 0.5, 0.5, 1.5, -0.02, 3.0),
    ];
    for &(a, b, h, alpha, sigma, r, t) in &points {
        let name = format!("({a},{b},{h}) alpha={alpha} r={r} T={t}");
        let res = (|| -> Result<f64> {
            let p = GfbmParams::new(a, b, h)?;
            let c = CevParams::new(MarketParams::new(1.0, 1.0, r, sigma, t)?, alpha)?;
            let closed = cev::phi(&p, &c, t)?;
            let quad = cev::phi_quadrature(&p, &c, t, QuadControl {
                abs_tol: 1e-14,
                rel_tol: 1e-13,
                max_intervals: 20_000,
            })?;
            Ok(((closed - quad) / quad).abs())
        })();
        match res {
            Ok(v) => out.push(Check::at_most("phi", format!("{name} closed vs quadrature"), v, 1e-10)),
            Err(e) => out.push(Check::failed("phi", name, &e)),
        }
    }
    for &(alpha, sigma, r, t) in &[(1.5, 2.0, 0.05, 1.0), (0.5, 0.3, 0.1, 2.0), (2.5, 20.0, 0.04, 0.7)] {
        let name = format!("standard k at alpha={alpha} r={r} T={t}");
        let res = (|| -> Result<f64> {
            let p = GfbmParams::standard();
            let c = CevParams::new(MarketParams::new(100.0, 100.0, r, sigma, t)?, alpha)?;
            let k = cev::transform(&p, &c)?.k;
            let q = 2.0 - alpha;
            let expected = 2.0 * r / (sigma * sigma * q * ((q * r * t).exp() - 1.0));
            Ok(((k - expected) / expected).abs())
        })();
        match res {
            Ok(v) => out.push(Check::at_most("phi", name, v, 1e-12)),
            Err(e) => out.push(Check::failed("phi", name, &e)),
        }
    }
    out
}

pub fn limit_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let built = GfbmParams::new(1.0, 0.5, 0.7).and_then(|p| MarketParams::new(100.0, 100.0, 0.05, 0.2, 1.0).map(|m| (p, m)));
    let (p, m) = match built {
        Ok(v) => v,
        Err(e) => return vec![Check::failed("limit", "setup".into(), &e)],
    };
    for (side, alphas) in [("below", [1.9, 1.99, 1.999]), ("above", [2.1, 2.01, 2.001])] {
        match cev::bs_limit_gap(&p, &m, &alphas) {
            Ok(rows) => {
                for w in rows.windows(2) {
                    // a positive value means the gap failed to shrink
                    out.push(Check::at_most(
                        "limit",
                        format!("gap shrinks {side}: alpha {} -> {}", w[0].alpha, w[1].alpha),
                        w[1].gap - w[0].gap,
                        0.0,
                    ));
                }
                let last = &rows[rows.len() - 1];
                out.push(Check::at_most(
                    "limit",
                    format!("relative gap {side} at alpha={}", last.alpha),
                    last.gap / last.bs_price,
                    1e-2,
                ));
            }
            Err(e) => out.push(Check::failed("limit", format!("gap table {side}"), &e)),
        }
    }
    out
}

fn validate(format: Format, suite: Suite, start: Instant) -> RunOutput {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Reductions | Suite::All) {
        checks.extend(reduction_checks());
    }
    if matches!(suite, Suite::Phi | Suite::All) {
        checks.extend(phi_checks());
    }
    if matches!(suite, Suite::Limit | Suite::All) {
        checks.extend(limit_checks());
    }
    let passed = checks.iter().all(|c| c.pass);
    let stdout = match format {
        Format::Json => {
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "suite": c.suite,
                        "check": c.name,
                        "value": finite_or_null(c.value),
                        "tolerance": finite_or_null(c.tolerance),
                        "pass": c.pass,
                    })
                })
                .collect();
            let doc = json!({
                "suite": format!("{suite:?}").to_lowercase(),
                "passed": passed,
                "checks": rows,
                "runtime_ms": elapsed_ms(start),
            });
            let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("suite,check,value,tolerance,pass\r\n");
            for c in &checks {
                let _ = write!(
                    s,
                    "{},{},{},{},{}\r\n",
                    c.suite,
                    csv_field(&json!(c.name)),
                    c.value,
                    c.tolerance,
                    c.pass
                );
            }
            s
        }
    };
    RunOutput {
        code: if passed { 0 } else { 2 },
        stdout,
        stderr: String::new(),
    }
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}
