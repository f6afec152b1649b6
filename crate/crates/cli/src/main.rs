use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use metallic::scenario::{self, Report, Scenario, BUILTINS};

/// Exact verification of metallic structures and their tangent-bundle lifts.
#[derive(Parser)]
#[command(name = "metallic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a bundled scenario.
    ///
    /// Exit status: 0 if every check passes, 1 if any check fails or errors,
    /// 2 if the scenario cannot be loaded.
    Run {
        /// Scenario file.
        file: Option<PathBuf>,
        /// Seed for the numeric corroboration (defaults to the scenario's seed).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// List the bundled scenarios and exit.
        #[arg(long)]
        list_builtin: bool,
        /// Run a bundled scenario instead of a file; `all` runs every one.
        #[arg(long, value_name = "NAME", conflicts_with = "file")]
        builtin: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    /// Pretty-printed JSON.
    Structured,
}

fn load(file: Option<PathBuf>, builtin: Option<String>) -> anyhow::Result<Vec<Scenario>> {
    match (file, builtin) {
        (Some(path), None) => {
            Ok(vec![scenario::load_scenario(&path).with_context(|| format!("cannot load {}", path.display()))?])
        }
        (None, Some(name)) if name == "all" => BUILTINS
            .iter()
            .map(|(n, _)| scenario::load_builtin(n).map_err(Into::into))
            .collect(),
        (None, Some(name)) => Ok(vec![scenario::load_builtin(&name)?]),
        _ => bail!("give a scenario file, --builtin NAME or --list-builtin"),
    }
}

fn emit(reports: &[Report], format: Format) {
    match format {
        Format::Text => {
            for r in reports {
                print!("{}", r.render_text());
            }
        }
        Format::Structured if reports.len() == 1 => println!("{}", reports[0].to_json()),
        Format::Structured => {
            let items: Vec<String> = reports.iter().map(Report::to_json).collect();
            println!("[\n{}\n]", items.join(",\n"));
        }
    }
}

fn main() -> ExitCode {
    let Command::Run { file, seed, format, list_builtin, builtin } = Cli::parse().command;
    if list_builtin {
        for (name, _) in BUILTINS {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    let scenarios = match load(file, builtin) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let reports: Vec<Report> = scenarios
        .iter()
        .map(|s| scenario::run_scenario(s, seed.unwrap_or(s.seed)))
        .collect();
    emit(&reports, format);
    if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
