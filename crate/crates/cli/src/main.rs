use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use weylkit_cli::{error_exit_code, run, Options, Scenario, Task, WindowSpec};

#[derive(Parser)]
#[command(name = "weylkit", version, about = "Verify finite Weyl representations, vacua and fermionic structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Scenario file (JSON).
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Numerical tolerance for residual checks.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest representation dimension to build.
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Include wall-clock timings (makes the report nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the multiplier axioms and report its antisymmetrization.
    Verify,
    /// Polars, isotropy and a maximal isotropic extension of the subgroup.
    Isotropy,
    /// Build the model and check the representation law.
    Model,
    /// Sector decomposition, vacuum space and normalizer checks.
    Vacuum,
    /// Descend to the vacuum and extract Clifford generators.
    Fermion,
    /// Vacuum profile of a p-adic window.
    Padic {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        d: Option<usize>,
        /// Keep per-sector data even for large windows.
        #[arg(long)]
        full_report: bool,
    },
    /// Intertwiners between the models induced from two maximal isotropic subgroups.
    Svn,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("weylkit: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = Options { tolerance: cli.tolerance, seed: cli.seed, max_dim: cli.max_dim, timings: cli.timings, ..Options::default() };
    let task = match cli.command {
        Command::Verify => Task::Verify,
        Command::Isotropy => Task::Isotropy,
        Command::Model => Task::Model,
        Command::Vacuum => Task::Vacuum,
        Command::Fermion => Task::Fermion,
        Command::Svn => Task::Svn,
        Command::Padic { p, k, d, full_report } => {
            opts.full_report = full_report;
            match (p, k, d) {
                (Some(p), k, d) => opts.window = Some(WindowSpec { p, k: k.unwrap_or(1), d: d.unwrap_or(1) }),
                (None, None, None) => {}
                _ => return fail(2, "--k and --d need --p"),
            }
            Task::Padic
        }
    };
    let scenario = match &cli.scenario {
        Some(path) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return fail(2, format!("cannot read {}: {e}", path.display())),
            };
            match Scenario::parse(&text, &path.display().to_string()) {
                Ok(s) => s,
                Err(e) => return fail(2, e),
            }
        }
        None if task == Task::Padic && opts.window.is_some() => Scenario::default(),
        None => return fail(2, "--scenario is required for this task"),
    };
    let report = match run(task, scenario, &opts) {
        Ok(r) => r,
        Err(e) => return fail(error_exit_code(&e) as u8, e),
    };
    let mut text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable report"),
        Format::Text => report.to_text(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let written = match &cli.out {
        Some(path) => fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        return fail(2, format!("cannot write report: {e}"));
    }
    ExitCode::from(report.exit_code() as u8)
}
