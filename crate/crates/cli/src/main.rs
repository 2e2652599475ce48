use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use dehnkit::knots::KnotSpec;
use dehnkit::obstruction::{render, run_scenario, Format, Scenario, ScenarioName};

/// Directory searched for relative `--config` paths.
const CONFIG_PATH_VAR: &str = "DEHNKIT_CONFIG_PATH";

#[derive(Parser)]
#[command(name = "dehnkit", version, about = "Obstruction reports for spheres and tori in boundaries of 4-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named scenario and print its report.
    Report(ReportArgs),
    /// List the scenario names.
    Scenarios,
}

#[derive(clap::Args)]
struct ReportArgs {
    /// sphere-lens, sphere-smooth-h, sphere-smooth-e8h, torus-solid,
    /// torus-top-vs-smooth or twist-extension. Optional when the config
    /// file names one.
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    /// Knot J: a name (left-trefoil), torus:p,q, twist:k, whitehead:+/-, or JSON.
    #[arg(long = "knot-j", allow_hyphen_values = true)]
    knot_j: Option<String>,
    /// Knot K, same syntax as --knot-j.
    #[arg(long = "knot-k", allow_hyphen_values = true)]
    knot_k: Option<String>,
    #[arg(long, default_value = "text")]
    format: String,
    /// Scenario config (JSON). Command-line parameters override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn locate_config(path: &Path) -> PathBuf {
    if path.is_absolute() || path.exists() {
        return path.to_path_buf();
    }
    if let Some(dirs) = std::env::var_os(CONFIG_PATH_VAR) {
        for dir in std::env::split_paths(&dirs) {
            let candidate = dir.join(path);
            if candidate.exists() {
                return candidate;
            }
        }
    }
    path.to_path_buf()
}

fn build_scenario(args: &ReportArgs) -> Result<Scenario> {
    let mut scenario = match &args.config {
        Some(path) => {
            let path = locate_config(path);
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {}", path.display()))?;
            Scenario::from_json(&text).with_context(|| format!("parsing config {}", path.display()))?
        }
        None => {
            let Some(name) = &args.scenario else {
                bail!("--scenario is required when no --config is given");
            };
            Scenario::new(name.parse::<ScenarioName>()?)
        }
    };
    if let Some(name) = &args.scenario {
        let name: ScenarioName = name.parse()?;
        if args.config.is_some() && name != scenario.scenario {
            bail!("--scenario {name} conflicts with config scenario {}", scenario.scenario);
        }
        scenario.scenario = name;
    }
    scenario.p = args.p.or(scenario.p);
    scenario.q = args.q.or(scenario.q);
    scenario.n = args.n.or(scenario.n);
    if let Some(k) = &args.knot_j {
        scenario.knot_j = Some(KnotSpec::parse(k).context("--knot-j")?);
    }
    if let Some(k) = &args.knot_k {
        scenario.knot_k = Some(KnotSpec::parse(k).context("--knot-k")?);
    }
    Ok(scenario)
}

fn report(args: &ReportArgs) -> Result<String> {
    let format: Format = args.format.parse()?;
    let scenario = build_scenario(args)?;
    let report = run_scenario(&scenario).with_context(|| format!("running scenario {}", scenario.scenario))?;
    Ok(render(&report, format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Report(args) => report(args),
        Command::Scenarios => Ok(ScenarioName::ALL.iter().map(|n| format!("{n}\n")).collect()),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
