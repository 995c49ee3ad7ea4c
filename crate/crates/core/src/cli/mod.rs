//! Scenario registry and command-line runner. Every scenario binds one lemma
//! to a list of deterministic checks over the library; reports serialize to
//! JSON or plain text.

mod report;
mod scenarios;
mod util;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::catalog;
use crate::conicbundle::{BundleSpec, SuiteConfig};
use crate::error::{Error, Result};
use crate::ideals::{with_default_budget, DEFAULT_BUDGET};

pub use report::{render_json, render_text, CheckResult, ScenarioReport, Status};

/// Lemma label in the source plus a verbatim excerpt of its statement or proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Anchor {
    pub label: &'static str,
    pub quote: &'static str,
}

pub struct Scenario {
    pub name: &'static str,
    pub anchor: Anchor,
    run: fn(&mut Checks),
}

/// Optional scenario inputs read from `--input`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Overrides {
    /// Extra conic bundles checked by `lem-discriminant`.
    pub bundle: Vec<BundleSpec>,
    /// Replacement lattices keyed by builtin name (`p1cubed-point`, `ptp2-point`).
    pub lattice: BTreeMap<String, toml::Value>,
    /// Sampling parameters of the random discriminant suite.
    pub discriminant: Option<SuiteConfig>,
}

impl Overrides {
    pub fn from_toml(text: &str) -> Result<Overrides> {
        let o: Overrides = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let valid = crate::chow::ClassLattice::builtin_names();
        if let Some(k) = o.lattice.keys().find(|k| !valid.contains(&k.as_str())) {
            return Err(Error::Invalid(format!("no builtin lattice '{k}' to replace; valid: {}", valid.join(", "))));
        }
        Ok(o)
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub budget: usize,
    /// Report wall time; off by default so reports are reproducible byte for byte.
    pub timing: bool,
    pub overrides: Overrides,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, budget: DEFAULT_BUDGET, timing: false, overrides: Overrides::default() }
    }
}

/// Collector handed to a scenario body.
pub struct Checks<'a> {
    cfg: &'a RunConfig,
    scenario: &'static str,
    results: Vec<CheckResult>,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

impl Checks<'_> {
    pub fn config(&self) -> &RunConfig {
        self.cfg
    }

    /// Stream determined by the global seed, the scenario and `tag` only.
    pub fn rng(&self, tag: &str) -> ChaCha8Rng {
        let key = format!("{}/{tag}", self.scenario);
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ fnv1a(key.as_bytes()))
    }

    /// Runs one check; errors and panics become `error` results.
    pub fn check(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (status, detail) = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(Ok((true, d))) => (Status::Pass, d),
            Ok(Ok((false, d))) => (Status::Fail, d),
            Ok(Err(e)) => (Status::Error, e.to_string()),
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                (Status::Error, format!("panic: {msg}"))
            }
        };
        self.results.push(CheckResult { name: name.into(), status, detail });
    }

    /// A premise taken from the source rather than computed.
    pub fn assumed(&mut self, name: &str, detail: &str) {
        self.results.push(CheckResult { name: name.into(), status: Status::Assumed, detail: detail.into() });
    }
}

/// All scenarios, sorted by name.
pub fn registry() -> Vec<Scenario> {
    let mut v = scenarios::all();
    v.sort_by_key(|s| s.name);
    v
}

pub fn list_scenarios() -> Vec<(&'static str, Anchor)> {
    registry().into_iter().map(|s| (s.name, s.anchor)).collect()
}

fn unknown(name: &str) -> Error {
    Error::UnknownScenario { name: name.into(), valid: registry().iter().map(|s| s.name).collect::<Vec<_>>().join(", ") }
}

fn execute(s: &Scenario, cfg: &RunConfig) -> ScenarioReport {
    let start = Instant::now();
    let mut ck = Checks { cfg, scenario: s.name, results: Vec::new() };
    with_default_budget(cfg.budget, || (s.run)(&mut ck));
    let elapsed_ms = if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 };
    ScenarioReport { scenario: s.name.into(), seed: cfg.seed, checks: ck.results, elapsed_ms }
}

pub fn run_scenario(name: &str, cfg: &RunConfig) -> Result<ScenarioReport> {
    let reg = registry();
    let s = reg.iter().find(|s| s.name == name).ok_or_else(|| unknown(name))?;
    Ok(execute(s, cfg))
}

/// Runs the named scenarios concurrently; the result is sorted by name.
pub fn run_many(names: &[String], cfg: &RunConfig) -> Result<Vec<ScenarioReport>> {
    let reg = registry();
    let mut picked: Vec<&Scenario> = Vec::new();
    for n in names {
        let s = reg.iter().find(|s| s.name == n).ok_or_else(|| unknown(n))?;
        if !picked.iter().any(|p| p.name == s.name) {
            picked.push(s);
        }
    }
    let mut out: Vec<ScenarioReport> = picked.par_iter().map(|s| execute(s, cfg)).collect();
    out.sort_by(|a, b| a.scenario.cmp(&b.scenario));
    Ok(out)
}

pub fn run_all(cfg: &RunConfig) -> Vec<ScenarioReport> {
    let names: Vec<String> = registry().iter().map(|s| s.name.to_string()).collect();
    run_many(&names, cfg).expect("registered names")
}

/// 0 if everything passed or was assumed, 1 on any failure, 2 on any error.
pub fn exit_code(reports: &[ScenarioReport]) -> i32 {
    let statuses = || reports.iter().flat_map(|r| r.checks.iter().map(|c| c.status));
    if statuses().any(|s| s == Status::Error) {
        2
    } else if statuses().any(|s| s == Status::Fail) {
        1
    } else {
        0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "fanocheck", version, about = "Run exact verification scenarios")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Cap on S-pair reductions per Groebner basis.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: usize,
    /// TOML file with extra bundles, replacement lattices or suite parameters.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Report wall time in elapsed_ms instead of 0.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run scenarios.
    Run(RunArgs),
    /// List scenario names with their anchors.
    List,
    /// Print the catalog entries.
    Catalog,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct RunArgs {
    #[arg(long = "scenario", value_name = "NAME")]
    scenarios: Vec<String>,
    #[arg(long)]
    all: bool,
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let overrides = match &cli.input {
        Some(p) => Overrides::from_toml(&std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?)?,
        None => Overrides::default(),
    };
    Ok(RunConfig { seed: cli.seed, budget: cli.budget, timing: cli.timing, overrides })
}

/// Parses `args` (including the program name), writes to `out`, returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let res = (|| -> Result<(String, i32)> {
        match &cli.command {
            Command::List => {
                let items = list_scenarios();
                let text = match cli.format {
                    Format::Json => {
                        let v: Vec<_> = items
                            .iter()
                            .map(|(n, a)| serde_json::json!({"name": n, "label": a.label, "quote": a.quote}))
                            .collect();
                        serde_json::to_string_pretty(&v).expect("json") + "\n"
                    }
                    Format::Text => items.iter().map(|(n, a)| format!("{n}\t{}\n", a.label)).collect(),
                };
                Ok((text, 0))
            }
            Command::Catalog => {
                let e = catalog::entries();
                let text = match cli.format {
                    Format::Json => catalog::export_json(&e) + "\n",
                    Format::Text => catalog::export_toml(&e),
                };
                Ok((text, 0))
            }
            Command::Run(r) => {
                let cfg = build_config(&cli)?;
                let reports = if r.all { run_all(&cfg) } else { run_many(&r.scenarios, &cfg)? };
                let text = match cli.format {
                    Format::Json => render_json(&reports),
                    Format::Text => render_text(&reports),
                };
                Ok((text, exit_code(&reports)))
            }
        }
    })();
    match res {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
