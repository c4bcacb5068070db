//! The `loewner` command runner.
//!
//! Parameters come from three layers, later ones winning: a flat
//! `key=value` config file (`--config`), environment variables
//! `LOEWNER_<KEY>` and command-line flags. Numbers accept a `π` (or `pi`)
//! suffix as a multiplier. Outputs are written atomically; every CSV starts
//! with a `#` comment line holding the tool version and the full config.
//!
//! Exit codes: 0 success, 1 an asserted bound was violated, 2 configuration
//! or input error, 3 numerical failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Arg, ArgMatches};
use num_complex::Complex64;

use crate::capacity::{
    hcap_mc, hcap_union_two_slits, hcap_zipper_with, segment_capacity, SegmentSpec, DEFAULT_REL_STEP,
};
use crate::chordal::{trace, weld, DrivingPath};
use crate::experiments::{
    alpha_mu_lambda_check, branch_sweep, counterexample_capacity_table, disjoint_sum_check, joint_parametrization,
    kinked_reparam_demo, Check, DisjointRow, Summary,
};
use crate::geom::{format_polyline, read_polyline, Hull, PolylineSlit};
use crate::radial::{bridge_check, bridge_csv};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Keys that steer the run but do not change its numbers.
const GLOBAL_KEYS: [&str; 4] = ["config", "seed", "threads", "out"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Weld,
    Trace,
    Hcap,
    BranchSweep,
    DisjointSum,
    Counterexample,
    BridgeCheck,
    JointParam,
    LambdaCheck,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Weld,
        Command::Trace,
        Command::Hcap,
        Command::BranchSweep,
        Command::DisjointSum,
        Command::Counterexample,
        Command::BridgeCheck,
        Command::JointParam,
        Command::LambdaCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Weld => "weld",
            Command::Trace => "trace",
            Command::Hcap => "hcap",
            Command::BranchSweep => "branch-sweep",
            Command::DisjointSum => "disjoint-sum",
            Command::Counterexample => "counterexample",
            Command::BridgeCheck => "bridge-check",
            Command::JointParam => "joint-param",
            Command::LambdaCheck => "lambda-check",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }

    fn about(self) -> &'static str {
        match self {
            Command::Weld => "Weld a half-plane polyline slit into its driving function (CSV t,U,b)",
            Command::Trace => "Trace the slit generated by a driving function CSV",
            Command::Hcap => "Half-plane capacity by closed form, zipper or Monte Carlo",
            Command::BranchSweep => "Capacity derivative at a branch point for angle pairs",
            Command::DisjointSum => "c(t)/t for two segments at distinct base points",
            Command::Counterexample => "Self-similar slit with a capacity that is not linear",
            Command::BridgeCheck => "Compare half-plane capacity with twice the mapping radius",
            Command::JointParam => "Joint parametrization of two slits with prescribed u1",
            Command::LambdaCheck => "Growth ratio of the union capacity against the squared boundary derivative",
        }
    }

    /// Parameter keys with their help text.
    fn keys(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Command::Weld => &[("slit", "polyline file (half-plane chart)"), ("step", "largest capacity per elementary map")],
            Command::Trace => &[("driving", "driving CSV with header t,U,b"), ("dt", "largest capacity per traced step")],
            Command::Hcap => &[
                ("method", "closed-form | zipper | monte-carlo [default: zipper]"),
                ("alpha", "segment angle for closed-form"),
                ("length", "segment length for closed-form"),
                ("slit", "polyline file"),
                ("slit2", "second polyline file"),
                ("rel-step", "zipper step relative to diam² [default: 1e-3]"),
                ("samples", "Monte Carlo walks [default: 100000]"),
            ],
            Command::BranchSweep => &[
                ("alphas", "angle pairs a1:a2 separated by commas"),
                ("b1", "capacity of the first segment [default: 1]"),
                ("b2", "capacity of the second segment [default: 1]"),
            ],
            Command::DisjointSum => &[
                ("alpha1", "angle of the first segment [default: π/2]"),
                ("alpha2", "angle of the second segment [default: π/2]"),
                ("b1", "capacity rate of the first segment [default: 0.5]"),
                ("b2", "capacity rate of the second segment [default: 0.5]"),
                ("x1", "base of the first segment [default: -5]"),
                ("x2", "base of the second segment [default: 5]"),
                ("t", "times in (0, 1] [default: 1,0.1,0.01,0.001]"),
            ],
            Command::Counterexample => &[
                ("eps", "horizontal offset ε in [0, 1/2) [default: 0]"),
                ("levels", "number of scaled copies [default: 8]"),
                ("t", "capacities to tabulate [default: T/4^n, n = 0..4]"),
            ],
            Command::BridgeCheck => &[
                ("slit", "disk polyline files attached at 1, separated by commas"),
                ("t", "strictly decreasing capacities [default: 0.01,0.001]"),
            ],
            Command::JointParam => &[
                ("slit1", "polyline file of the first slit"),
                ("slit2", "polyline file of the second slit"),
                ("k", "slope of u1(s) = k·s, below 1 [default: 0.5]"),
                ("s-max", "largest total capacity [default: 0.5]"),
                ("n", "number of grid intervals [default: 10]"),
                ("eps", "run the kinked demo with slopes 1/2 ± eps instead"),
            ],
            Command::LambdaCheck => &[
                ("slit1", "polyline file of the growing slit"),
                ("slit2", "polyline file of the other slit"),
                ("t0", "capacity at which the first slit grows [default: 0]"),
                ("deltas", "strictly decreasing increments [default: 0.01,0.001,0.0001]"),
            ],
        }
    }
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    /// `# loewner <version> command=<name> key=value ...` with sorted keys.
    pub fn header(&self) -> String {
        let mut line = format!("# loewner {VERSION} command={}", self.command.name());
        for (k, v) in &self.params {
            let _ = write!(line, " {k}={v}");
        }
        let _ = write!(line, " seed={}", self.seed);
        line
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn required(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::Config(format!("`{}` needs --{key}", self.command.name())))
    }

    fn number(&self, key: &str, default: f64) -> Result<f64> {
        self.get(key).map_or(Ok(default), |v| parse_number(v).map_err(|e| keyed(key, e)))
    }

    fn numbers(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        self.get(key).map_or(Ok(default.to_vec()), |v| parse_list(v).map_err(|e| keyed(key, e)))
    }

    fn integer(&self, key: &str, default: u64) -> Result<u64> {
        self.get(key).map_or(Ok(default), |v| {
            v.trim().parse().map_err(|_| Error::Config(format!("--{key}: expected a nonnegative integer, got `{v}`")))
        })
    }

    fn slit(&self, key: &str) -> Result<PolylineSlit> {
        read_polyline(Path::new(self.required(key)?)).map_err(|e| keyed(key, e))
    }
}

fn keyed(key: &str, e: Error) -> Error {
    match e {
        Error::Numerical(_) => e,
        other => Error::Config(format!("--{key}: {other}")),
    }
}

/// A decimal number with an optional `π` or `pi` multiplier suffix.
pub fn parse_number(text: &str) -> Result<f64> {
    let t = text.trim();
    let (body, factor) = if let Some(b) = t.strip_suffix('π') {
        (b, PI)
    } else if let Some(b) = t.strip_suffix("pi") {
        (b, PI)
    } else {
        (t, 1.0)
    };
    let body = body.trim();
    let value = match body {
        "" if factor == PI => 1.0,
        "-" if factor == PI => -1.0,
        _ => body.parse::<f64>().map_err(|_| Error::Config(format!("not a number: `{text}`")))?,
    };
    let x = value * factor;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Config(format!("not a finite number: `{text}`")))
    }
}

/// Comma-separated numbers.
pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',').map(parse_number).collect()
}

/// Comma-separated pairs `a:b`.
pub fn parse_pairs(text: &str) -> Result<Vec<(f64, f64)>> {
    text.split(',')
        .map(|p| {
            let (a, b) = p
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("expected a pair a:b, got `{p}`")))?;
            Ok((parse_number(a)?, parse_number(b)?))
        })
        .collect()
}

/// Parse a flat `key=value` file; blank lines and `#` comments are skipped.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("config line {}: expected key=value", i + 1)))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn env_name(key: &str) -> String {
    format!("LOEWNER_{}", key.to_uppercase().replace('-', "_"))
}

fn clap_command() -> clap::Command {
    let global = |name: &'static str, help: &'static str| Arg::new(name).long(name).global(true).value_name("VALUE").help(help);
    let mut cmd = clap::Command::new("loewner")
        .version(VERSION)
        .about("Chordal and radial Loewner evolution of one or two slits")
        .subcommand_required(true)
        .arg(global("config", "flat key=value config file"))
        .arg(global("seed", "random seed [default: 0]"))
        .arg(global("threads", "worker threads [default: all cores]"))
        .arg(global("out", "output file [default: stdout]"));
    for c in Command::ALL {
        let mut sub = clap::Command::new(c.name()).about(c.about());
        for &(key, help) in c.keys() {
            sub = sub.arg(Arg::new(key).long(key).value_name("VALUE").allow_hyphen_values(true).help(help));
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

/// Resolve command-line arguments, environment and config file into a run.
/// `Ok(None)` means help or version text was requested and printed.
pub fn parse_args<I, T>(args: I, env: &dyn Fn(&str) -> Option<String>) -> Result<Option<RunConfig>>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match clap_command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(None);
        }
        Err(e) => return Err(Error::Config(e.to_string())),
    };
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let command = Command::from_name(name).expect("subcommands come from Command::ALL");
    let flag = |m: &ArgMatches, k: &str| m.get_one::<String>(k).cloned();

    let mut merged = BTreeMap::new();
    if let Some(path) = flag(sub, "config").or_else(|| env(&env_name("config"))) {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Config(format!("config file {path}: {e}")))?;
        merged = parse_config_file(&text)?;
    }
    let allowed: Vec<&str> = command.keys().iter().map(|k| k.0).chain(GLOBAL_KEYS).collect();
    if let Some(k) = merged.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::Config(format!("unknown key `{k}` for `{}`", command.name())));
    }
    for key in &allowed {
        if let Some(v) = env(&env_name(key)) {
            merged.insert(key.to_string(), v);
        }
        if let Some(v) = flag(sub, key) {
            merged.insert(key.to_string(), v);
        }
    }
    merged.remove("config");
    let seed = match merged.remove("seed") {
        Some(s) => s.trim().parse().map_err(|_| Error::Config(format!("--seed: expected an integer, got `{s}`")))?,
        None => 0,
    };
    let threads = match merged.remove("threads") {
        Some(s) => Some(
            s.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::Config(format!("--threads: expected a positive integer, got `{s}`")))?,
        ),
        None => None,
    };
    let out = merged.remove("out").map(PathBuf::from);
    Ok(Some(RunConfig { command, params: merged, seed, out, threads }))
}

/// Text results of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    /// Main result: CSV, polyline or JSON text.
    pub body: String,
    /// Asserted bounds, for experiment commands.
    pub summary: Option<Summary>,
}

impl Output {
    fn plain(body: String) -> Self {
        Output { body, summary: None }
    }

    pub fn passed(&self) -> bool {
        self.summary.as_ref().is_none_or(|s| s.pass)
    }
}

/// Execute a resolved run without touching the file system except for
/// reading its inputs.
pub fn execute(cfg: &RunConfig) -> Result<Output> {
    let header = cfg.header();
    let with_header = |body: String| format!("{header}\n{body}");
    match cfg.command {
        Command::Weld => {
            let slit = cfg.slit("slit")?;
            if slit.is_empty() {
                return Err(Error::Geometry("--slit: cannot weld an empty slit".into()));
            }
            let default = DEFAULT_REL_STEP * slit.diameter().powi(2);
            let (path, _) = weld(&slit, cfg.number("step", default)?)?;
            Ok(Output::plain(with_header(path.to_csv())))
        }
        Command::Trace => {
            let file = cfg.required("driving")?;
            let text = std::fs::read_to_string(file).map_err(|e| Error::Config(format!("--driving {file}: {e}")))?;
            let path = DrivingPath::from_csv(&text).map_err(|e| keyed("driving", e))?;
            let dt = cfg.number("dt", path.final_time() / 1000.0)?;
            Ok(Output::plain(with_header(format_polyline(&trace(&path, dt)?))))
        }
        Command::Hcap => hcap(cfg),
        Command::BranchSweep => {
            let pairs = parse_pairs(cfg.required("alphas")?).map_err(|e| keyed("alphas", e))?;
            let r = branch_sweep(&pairs, cfg.number("b1", 1.0)?, cfg.number("b2", 1.0)?)?;
            Ok(Output { body: with_header(r.to_csv()), summary: Some(r.summary()) })
        }
        Command::DisjointSum => {
            let (b1, b2) = (cfg.number("b1", 0.5)?, cfg.number("b2", 0.5)?);
            let s1 = SegmentSpec::new(cfg.number("alpha1", PI / 2.0)?, b1, cfg.number("x1", -5.0)?)?;
            let s2 = SegmentSpec::new(cfg.number("alpha2", PI / 2.0)?, b2, cfg.number("x2", 5.0)?)?;
            let rows = disjoint_sum_check(&s1, &s2, &cfg.numbers("t", &[1.0, 0.1, 0.01, 0.001])?)?;
            let last = rows.iter().min_by(|a, b| a.t.total_cmp(&b.t)).map_or(f64::NAN, |r| r.ratio);
            let rel = (last - (b1 + b2)).abs() / (b1 + b2);
            let check = Check::new("c(t)/t at the smallest t against b1 + b2", rel, "<= 0.02", rel <= 0.02);
            Ok(Output { body: with_header(DisjointRow::csv(&rows)), summary: Some(Summary::new("disjoint-sum", vec![check])) })
        }
        Command::Counterexample => {
            let levels = cfg.integer("levels", 8)? as usize;
            let grid = cfg.get("t").map(parse_list).transpose().map_err(|e| keyed("t", e))?;
            let r = counterexample_capacity_table(cfg.number("eps", 0.0)?, levels, grid.as_deref())?;
            Ok(Output { body: with_header(r.table.to_csv()), summary: Some(r.summary()) })
        }
        Command::BridgeCheck => {
            let slits = cfg
                .required("slit")?
                .split(',')
                .map(|p| read_polyline(Path::new(p.trim())).map_err(|e| keyed("slit", e)))
                .collect::<Result<Vec<_>>>()?;
            let rows = bridge_check(&Hull::new(slits)?, &cfg.numbers("t", &[1e-2, 1e-3])?)?;
            let checks = rows
                .iter()
                .filter(|r| r.t <= 1e-3)
                .map(|r| {
                    let dev = (r.ratio - 1.0).abs();
                    Check::new(format!("|ratio - 1| at t = {}", r.t), dev, "<= 0.02", dev <= 0.02)
                })
                .collect();
            Ok(Output { body: with_header(bridge_csv(&rows)), summary: Some(Summary::new("bridge-check", checks)) })
        }
        Command::JointParam => {
            let (s1, s2) = (cfg.slit("slit1")?, cfg.slit("slit2")?);
            if cfg.get("eps").is_some() {
                let r = kinked_reparam_demo(&s1, &s2, cfg.number("eps", 0.0)?)?;
                let body = format!("{}{}", r.joint.to_csv(), r.joint.lambda_csv());
                return Ok(Output { body: with_header(body), summary: Some(r.summary()) });
            }
            let (k, s_max) = (cfg.number("k", 0.5)?, cfg.number("s-max", 0.5)?);
            let n = cfg.integer("n", 10)?.max(1) as usize;
            let s: Vec<f64> = (0..=n).map(|i| s_max * i as f64 / n as f64).collect();
            let u1: Vec<f64> = s.iter().map(|s| k * s).collect();
            let r = joint_parametrization(&s1, &s2, &u1, &s)?;
            let body = format!("{}{}", r.to_csv(), r.lambda_csv());
            Ok(Output { body: with_header(body), summary: Some(r.summary()) })
        }
        Command::LambdaCheck => {
            let (s1, s2) = (cfg.slit("slit1")?, cfg.slit("slit2")?);
            let deltas = cfg.numbers("deltas", &[1e-2, 1e-3, 1e-4])?;
            let r = alpha_mu_lambda_check(&s1, &s2, cfg.number("t0", 0.0)?, &deltas)?;
            Ok(Output { body: with_header(r.to_csv()), summary: Some(r.summary()) })
        }
    }
}

fn hcap(cfg: &RunConfig) -> Result<Output> {
    let method = cfg.get("method").unwrap_or("zipper");
    if method == "closed-form" {
        let c = segment_capacity(cfg.number("alpha", f64::NAN)?, cfg.number("length", f64::NAN)?)
            .map_err(|e| keyed("alpha/length", e))?;
        return Ok(Output::plain(format!("{}\n", crate::numeric::fmt12(c))));
    }
    let mut slits = vec![cfg.slit("slit")?];
    if cfg.get("slit2").is_some() {
        slits.push(cfg.slit("slit2")?);
    }
    let estimate = match method {
        "zipper" => {
            if let [a, b] = &slits[..] {
                if let (Some(sa), Some(sb)) = (as_segment(a), as_segment(b)) {
                    let common = sa.base == sb.base;
                    let e = hcap_union_two_slits(&sa, &sb, common)?;
                    return Ok(Output::plain(e.to_json()));
                }
            }
            hcap_zipper_with(&Hull::new(slits)?, cfg.number("rel-step", DEFAULT_REL_STEP)?)?
        }
        "monte-carlo" => hcap_mc(&Hull::new(slits)?, cfg.integer("samples", 100_000)?, cfg.seed)?,
        other => return Err(Error::Config(format!("--method: unknown method `{other}`"))),
    };
    Ok(Output::plain(estimate.to_json()))
}

/// A single straight half-plane segment as a [`SegmentSpec`].
fn as_segment(slit: &PolylineSlit) -> Option<SegmentSpec> {
    let [tip] = slit.vertices() else {
        return None;
    };
    let d: Complex64 = tip - slit.base();
    SegmentSpec::from_length(d.arg(), d.norm(), slit.base_real()).ok()
}

/// Write `text` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::Config(format!("--out {}: not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}

/// Exit code of an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Numerical(_) => EXIT_NUMERICAL,
        _ => EXIT_CONFIG,
    }
}

/// Parse, execute and write outputs. The main result goes to `--out` or
/// stdout; the summary of an experiment to `<out>.summary.json` or stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run_inner(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("loewner: {e}");
            exit_code(&e)
        }
    }
}

fn run_inner<I, T>(args: I) -> Result<i32>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let Some(cfg) = parse_args(args, &|k| std::env::var(k).ok())? else {
        return Ok(EXIT_OK);
    };
    if let Some(n) = cfg.threads {
        // a pool built earlier in the same process keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let output = execute(&cfg)?;
    let summary = output.summary.as_ref().map(Summary::to_json);
    match &cfg.out {
        Some(path) => {
            write_atomic(path, &output.body)?;
            if let Some(json) = &summary {
                let mut name = path.as_os_str().to_owned();
                name.push(".summary.json");
                write_atomic(Path::new(&name), &format!("{json}\n"))?;
            }
        }
        None => {
            print!("{}", output.body);
            if let Some(json) = &summary {
                eprintln!("{json}");
            }
        }
    }
    Ok(if output.passed() { EXIT_OK } else { EXIT_BOUND })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_env(_: &str) -> Option<String> {
        None
    }

    #[test]
    fn numbers_with_pi_suffix() {
        assert_eq!(parse_number("0.5π").unwrap(), 0.5 * PI);
        assert_eq!(parse_number("π").unwrap(), PI);
        assert_eq!(parse_number("-pi").unwrap(), -PI);
        assert_eq!(parse_number(" 2.5 ").unwrap(), 2.5);
        assert!(parse_number("x").is_err());
        assert_eq!(parse_pairs("0.25π:0.75π,1:2").unwrap(), vec![(0.25 * PI, 0.75 * PI), (1.0, 2.0)]);
    }

    #[test]
    fn flags_override_env_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("run.cfg");
        std::fs::write(&file, "# comment\nb1 = 3\nb2=4\nalphas=1:2\nseed=9\n").unwrap();
        let env = |k: &str| (k == "LOEWNER_B2").then(|| "5".to_string());
        let args = ["loewner", "branch-sweep", "--config", file.to_str().unwrap(), "--b1", "6"];
        let cfg = parse_args(args, &env).unwrap().unwrap();
        assert_eq!(cfg.command, Command::BranchSweep);
        assert_eq!(cfg.get("b1"), Some("6"));
        assert_eq!(cfg.get("b2"), Some("5"));
        assert_eq!(cfg.get("alphas"), Some("1:2"));
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.header(), "# loewner 0.1.0 command=branch-sweep alphas=1:2 b1=6 b2=5 seed=9");
    }

    #[test]
    fn unknown_config_key_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("bad.cfg");
        std::fs::write(&file, "alpha=1\n").unwrap();
        let args = ["loewner", "branch-sweep", "--config", file.to_str().unwrap()];
        assert!(matches!(parse_args(args, &no_env), Err(Error::Config(_))));
        assert!(matches!(parse_args(["loewner", "nope"], &no_env), Err(Error::Config(_))));
    }

    #[test]
    fn closed_form_hcap() {
        let args = ["loewner", "hcap", "--method", "closed-form", "--alpha", "0.5π", "--length", "1"];
        let cfg = parse_args(args, &no_env).unwrap().unwrap();
        assert_eq!(execute(&cfg).unwrap().body, "0.5\n");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.csv");
        write_atomic(&p, "a").unwrap();
        write_atomic(&p, "b").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
