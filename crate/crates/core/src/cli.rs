//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification, 2 invalid arguments,
//! 3 parameters outside the regime a command needs, 4 file I/O failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::curve::{
    self, gamma_circle, random_nonunique, sawtooth_counterexample, staircase_maximizer, Params,
    Polyline, SAWTOOTH_PARAMS,
};
use crate::error::Error;
use crate::fmt::{g17, serialize_g17, serialize_g17_opt};
use crate::oracle::{anneal_original, minimize_relaxed, DEFAULT_TOL};
use crate::solver::{self, assemble_solution_with, fmin_sweep, linspace, OptimalProfile};
use crate::svg;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REGIME: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Solve,
    Sweep,
    Eval,
    Oracle,
    DemoCounterexample,
    DemoNonunique,
    DemoStaircase,
    Verify,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "euler-profile", version, about = "Minimal-resistance profiles under an area constraint")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Half-beam of the box.
    #[arg(long)]
    pub a: Option<f64>,
    /// Height of the box.
    #[arg(long)]
    pub h: Option<f64>,
    /// Area below the profile.
    #[arg(long = "L")]
    pub l: Option<f64>,
    /// Arc samples for `solve` [default: 8192].
    #[arg(long)]
    pub samples: Option<usize>,
    /// Grid cells for `oracle` [default: 200].
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub l_min: Option<f64>,
    #[arg(long)]
    pub l_max: Option<f64>,
    /// Sweep points, both ends included [default: 61].
    #[arg(long)]
    pub steps: Option<usize>,
    /// Sawtooth index, band runs, or staircase steps.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Annealing proposals for `oracle`; 0 skips the search.
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long = "out-path", visible_alias = "out")]
    pub out_path: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Curve file for `eval` (`.csv` or `.json`).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// JSON file with default values; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Fully resolved settings of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub a: Option<f64>,
    pub h: Option<f64>,
    #[serde(rename = "L")]
    pub l: Option<f64>,
    pub samples: Option<usize>,
    pub grid: Option<usize>,
    pub l_min: Option<f64>,
    pub l_max: Option<f64>,
    pub steps: Option<usize>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub out_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub input: Option<PathBuf>,
}

impl RunConfig {
    /// Overlays the flags given on the command line.
    pub fn merge(mut self, args: Args) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if args.$f.is_some() { self.$f = args.$f; } )* };
        }
        take!(a, h, l, samples, grid, l_min, l_max, steps, n, seed, budget, out_path, format, input);
        self.command = Some(args.command);
        self
    }

    fn params(&self) -> Result<Params, CliError> {
        match (self.a, self.h, self.l) {
            (Some(a), Some(h), Some(l)) => Ok(Params::new(a, h, l)?),
            _ => Err(CliError::usage("--a, --h and --L are required")),
        }
    }

    fn params_or(&self, a: f64, h: f64, l: f64) -> Result<Params, CliError> {
        Ok(Params::new(self.a.unwrap_or(a), self.h.unwrap_or(h), self.l.unwrap_or(l))?)
    }

    fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: msg.into() }
    }

    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Regime(_) | Error::NotApplicable(_) => EXIT_REGIME,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_USAGE,
        };
        CliError { code, message: e.to_string() }
    }
}

/// Where results go: a file when `--out-path` is set, otherwise stdout.
/// Summaries go to stdout in the first case and stderr in the second so
/// that stdout always carries one clean document.
struct Sink<'a> {
    out_path: Option<&'a Path>,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Sink<'_> {
    fn document(&mut self, text: &str) -> Result<(), CliError> {
        match self.out_path {
            Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
            None => self.stdout.write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
        }
    }

    fn summary(&mut self, text: &str) -> Result<(), CliError> {
        let w: &mut dyn Write = if self.out_path.is_some() { self.stdout } else { self.stderr };
        writeln!(w, "{text}").map_err(|e| CliError::io(Path::new("<stdout>"), e))
    }
}

fn curve_text(p: &Polyline, params: &Params, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Csv => {
            let mut buf = Vec::new();
            curve::io::write_csv(p, &mut buf)?;
            String::from_utf8(buf).expect("formatted numbers are ASCII")
        }
        Format::Json => curve::io::to_json(p, params)? + "\n",
        Format::Svg => svg::render(p, params),
    })
}

#[derive(Serialize)]
struct ProfileMeta {
    regime: &'static str,
    #[serde(serialize_with = "serialize_g17_opt")]
    xi_star: Option<f64>,
    #[serde(serialize_with = "serialize_g17_opt")]
    eta_star: Option<f64>,
    #[serde(serialize_with = "serialize_g17")]
    h_star: f64,
    #[serde(rename = "F_min", serialize_with = "serialize_g17")]
    f_min: f64,
    #[serde(serialize_with = "serialize_g17_opt")]
    lambda_bar: Option<f64>,
    #[serde(serialize_with = "serialize_g17_opt")]
    mu_bar: Option<f64>,
    unique: bool,
}

/// Metadata block of a solution as one JSON line.
pub fn profile_metadata(s: &OptimalProfile) -> String {
    let meta = ProfileMeta {
        regime: s.regime.tag(),
        xi_star: s.xi_star,
        eta_star: s.eta_star,
        h_star: s.h_star,
        f_min: s.f_min,
        lambda_bar: s.lambda_bar,
        mu_bar: s.mu_bar,
        unique: s.unique,
    };
    serde_json::to_string(&meta).expect("metadata serializes")
}

fn meta_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

#[derive(Serialize)]
struct EvalReport {
    #[serde(rename = "F", serialize_with = "serialize_g17")]
    f: f64,
    #[serde(serialize_with = "serialize_g17")]
    area_below: f64,
    #[serde(serialize_with = "serialize_g17")]
    area_error: f64,
    endpoints_ok: bool,
    in_box: bool,
    x_monotone: bool,
    y_monotone: bool,
    vertices: usize,
}

/// Executes one resolved configuration.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let command = cfg.command.ok_or_else(|| CliError::usage("no command given"))?;
    let mut sink = Sink { out_path: cfg.out_path.as_deref(), stdout, stderr };
    match command {
        Command::Solve => {
            let params = cfg.params()?;
            let samples = cfg.samples.unwrap_or(solver::DEFAULT_SAMPLES);
            if samples < 2 {
                return Err(CliError::usage("--samples must be at least 2"));
            }
            let s = assemble_solution_with(&params, samples)?;
            sink.document(&curve_text(&s.curve, &params, cfg.format())?)?;
            let meta = profile_metadata(&s);
            if let Some(out) = cfg.out_path.as_deref() {
                let path = meta_path(out);
                fs::write(&path, format!("{meta}\n")).map_err(|e| CliError::io(&path, e))?;
            }
            sink.summary(&meta)?;
        }
        Command::Sweep => {
            let (a, h) = match (cfg.a, cfg.h) {
                (Some(a), Some(h)) => (a, h),
                _ => return Err(CliError::usage("--a and --h are required")),
            };
            let (lo, hi) = match (cfg.l_min, cfg.l_max) {
                (Some(lo), Some(hi)) if lo <= hi => (lo, hi),
                (Some(_), Some(_)) => return Err(CliError::usage("--l-min must not exceed --l-max")),
                _ => return Err(CliError::usage("--l-min and --l-max are required")),
            };
            let rows = fmin_sweep(a, h, &linspace(lo, hi, cfg.steps.unwrap_or(61)));
            let mut ok = Vec::new();
            let mut rejected = Vec::new();
            for r in rows {
                match r {
                    Ok(row) => ok.push(row),
                    Err(e) => rejected.push(e.to_string()),
                }
            }
            let text = match cfg.format() {
                Format::Csv => {
                    let mut s = String::from("L,F_min,regime\n");
                    for r in &ok {
                        s.push_str(&format!("{},{},{}\n", g17(r.l), g17(r.f_min), r.regime.tag()));
                    }
                    s
                }
                Format::Json => {
                    let items: Vec<String> = ok
                        .iter()
                        .map(|r| format!(r#"{{"L":{},"F_min":{},"regime":"{}"}}"#, g17(r.l), g17(r.f_min), r.regime.tag()))
                        .collect();
                    format!("[{}]\n", items.join(","))
                }
                Format::Svg => return Err(CliError::usage("sweep output is csv or json")),
            };
            sink.document(&text)?;
            for msg in &rejected {
                writeln!(sink.stderr, "rejected: {msg}").ok();
            }
            if !rejected.is_empty() {
                return Ok(EXIT_USAGE);
            }
        }
        Command::Eval => {
            let input = cfg.input.as_deref().ok_or_else(|| CliError::usage("--input is required"))?;
            let file = fs::File::open(input).map_err(|e| CliError::io(input, e))?;
            let is_json = input.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
            let (curve, params) = if is_json {
                let doc = curve::io::read_json(file)?;
                let stored = doc.params()?;
                let params = Params::new(
                    cfg.a.unwrap_or(stored.a),
                    cfg.h.unwrap_or(stored.h),
                    cfg.l.unwrap_or(stored.l),
                )?;
                (doc.polyline()?, params)
            } else {
                (curve::io::read_csv(file)?, cfg.params()?)
            };
            let rep = curve.check_admissible(&params, 1e-9);
            let report = EvalReport {
                f: curve.resistance(),
                area_below: rep.area_below,
                area_error: rep.area_error,
                endpoints_ok: rep.endpoints_ok,
                in_box: rep.in_box,
                x_monotone: rep.x_monotone,
                y_monotone: rep.y_monotone,
                vertices: curve.len(),
            };
            let text = serde_json::to_string(&report).expect("report serializes");
            sink.document(&format!("{text}\n"))?;
        }
        Command::Oracle => {
            let params = cfg.params()?;
            let n = cfg.grid.unwrap_or(200);
            let r = minimize_relaxed(&params, n, DEFAULT_TOL)?;
            let text = match cfg.format() {
                Format::Json => serde_json::to_string(&r).expect("result serializes") + "\n",
                f => curve_text(&r.u.to_profile(params.h), &params, f)?,
            };
            sink.document(&text)?;
            sink.summary(&format!(
                "relaxed minimum {} on {n} cells ({} iterations, converged: {})",
                g17(r.f_min),
                r.iterations,
                r.converged
            ))?;
            if let Some(budget) = cfg.budget.filter(|&b| b > 0) {
                let (_, f) = anneal_original(&params, budget, cfg.seed.unwrap_or(0))?;
                sink.summary(&format!("annealed resistance {} after {budget} proposals", g17(f)))?;
            }
        }
        Command::DemoCounterexample => {
            let n = cfg.n.unwrap_or(4);
            let c = sawtooth_counterexample(n)?;
            let params = SAWTOOTH_PARAMS;
            sink.document(&curve_text(&c, &params, cfg.format())?)?;
            let closed = 1.0 / (2.0 * ((n * n) as f64 + 1.0));
            sink.summary(&format!(
                "F = {} (1/(2(n^2+1)) = {}), area = {}",
                g17(c.resistance()),
                g17(closed),
                g17(c.area_below(&params))
            ))?;
        }
        Command::DemoNonunique => {
            let params = cfg.params_or(1.0, 2.0, 1.25)?;
            let c = match cfg.seed {
                Some(seed) => random_nonunique(&params, cfg.n.unwrap_or(3), seed)?,
                None => gamma_circle(&params)?,
            };
            sink.document(&curve_text(&c, &params, cfg.format())?)?;
            sink.summary(&format!(
                "F = {} (h - a/2 = {}), area = {}",
                g17(c.resistance()),
                g17(params.h - params.a / 2.0),
                g17(c.area_below(&params))
            ))?;
        }
        Command::DemoStaircase => {
            let params = cfg.params_or(1.0, 1.0, 0.5)?;
            let k = cfg.n.unwrap_or(4);
            if k < 2 {
                return Err(CliError::usage("--n must be at least 2 for the staircase"));
            }
            let c = staircase_maximizer(&params, k, cfg.seed.unwrap_or(0))?;
            sink.document(&curve_text(&c, &params, cfg.format())?)?;
            sink.summary(&format!(
                "F = {} (h = {}), area = {}",
                g17(c.resistance()),
                g17(params.h),
                g17(c.area_below(&params))
            ))?;
        }
        Command::Verify => {
            let checks = verify::run_all();
            let mut table = String::new();
            for c in &checks {
                table.push_str(&c.line());
                table.push('\n');
            }
            let passed = checks.iter().filter(|c| c.passed).count();
            table.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
            sink.document(&table)?;
            if passed != checks.len() {
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(EXIT_OK)
}

fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let base = match args.config.as_deref().map(load_config).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            return e.code;
        }
    };
    let cfg = base.merge(args);
    match run(&cfg, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["euler-profile"];
        full.extend_from_slice(args);
        let code = main_with(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn counterexample_prints_curve_and_value() {
        let (code, out, err) = run_args(&["demo-counterexample", "--n", "16"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("x,y\n0,0\n"));
        assert!(err.contains(&format!("1/(2(n^2+1)) = {}", g17(1.0 / 514.0))));
    }

    #[test]
    fn bad_parameters_are_usage_errors() {
        assert_eq!(run_args(&["solve", "--a", "1", "--h", "1", "--L", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["solve", "--a", "1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
    }

    #[test]
    fn band_demo_outside_band_is_regime_error() {
        let (code, _, err) = run_args(&["demo-nonunique", "--a", "1", "--h", "2", "--L", "0.4"]);
        assert_eq!(code, EXIT_REGIME, "{err}");
    }

    #[test]
    fn config_merge_prefers_flags() {
        let base = RunConfig { a: Some(5.0), h: Some(1.0), ..Default::default() };
        let args = Args::try_parse_from(["euler-profile", "solve", "--a", "3"]).unwrap();
        let cfg = base.merge(args);
        assert_eq!(cfg.a, Some(3.0));
        assert_eq!(cfg.h, Some(1.0));
        assert_eq!(cfg.command, Some(Command::Solve));
    }

    #[test]
    fn metadata_fields() {
        let s = assemble_solution_with(&Params::new(1.0, 2.0, 1.25).unwrap(), 16).unwrap();
        let m = profile_metadata(&s);
        assert_eq!(
            m,
            r#"{"regime":"NONUNIQUE_BAND","xi_star":null,"eta_star":null,"h_star":1.75,"F_min":1.5,"lambda_bar":null,"mu_bar":null,"unique":false}"#
        );
    }
}
