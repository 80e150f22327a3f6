//! `twb`: twisted conjugacy classes and Reidemeister numbers.
//!
//! Exit status: 0 success, 1 invalid input, 2 a checked property failed.

mod commands;

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Outcome, Status};

#[derive(Parser, Debug)]
#[command(name = "twb", version, about = "Twisted conjugacy classes, Reidemeister numbers and twisted Burnside checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Read the JSON input from FILE (`-` for stdin).
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Number of iterates for sequences and congruences.
    #[arg(long, global = true, value_name = "K")]
    n_max: Option<usize>,

    /// Largest group order swept by `corpus`.
    #[arg(long, global = true, value_name = "K", default_value_t = 24)]
    max_order: usize,

    /// Worker threads for `corpus`.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    jobs: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Twisted conjugacy classes of an endomorphism of a finite group.
    Classes { json: Option<String> },
    /// Compare R(φ) with the number of characters fixed by χ ↦ χ∘φ.
    Burnside { json: Option<String> },
    /// Sweep the built-in groups and all their endomorphisms.
    Corpus {
        #[arg(long)]
        automorphisms_only: bool,
        /// Report S + 1 instead of S, to exercise the failure path.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Reidemeister number of an endomorphism of a finitely generated abelian group.
    Abelian { json: Option<String> },
    /// Reidemeister number of φ(v, n) = (Bv, εn) on ℤᵏ ⋊_θ ℤ.
    Extension { json: Option<String> },
    /// R(fⁿ) = |det(I − Aⁿ)| for the torus map induced by A.
    Torus { json: Option<String> },
    /// Möbius congruences for a sequence, a torus matrix or a group endomorphism.
    Congruence { json: Option<String> },
}

fn read_input(cli: &Cli, inline: &Option<String>) -> Result<String, String> {
    match (inline, &cli.input) {
        (Some(_), Some(_)) => Err("give either inline JSON or --input, not both".into()),
        (Some(text), None) => Ok(text.clone()),
        (None, Some(path)) if path == "-" => read_stdin(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}")),
        (None, None) => read_stdin(),
    }
}

fn read_stdin() -> Result<String, String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).map_err(|e| format!("cannot read stdin: {e}"))?;
    Ok(s)
}

fn dispatch(cli: &Cli) -> Result<Outcome, String> {
    let config = twb_core::group::GroupConfig::from_env();
    match &cli.command {
        Command::Classes { json } => commands::classes(&read_input(cli, json)?, &config),
        Command::Burnside { json } => commands::burnside(&read_input(cli, json)?, &config),
        Command::Corpus { automorphisms_only, inject_fault } => {
            let opts = twb_core::corpus::CorpusOptions {
                max_order: cli.max_order,
                automorphisms_only: *automorphisms_only,
                n_max: cli.n_max.unwrap_or(12),
                jobs: cli.jobs,
                config,
                inject_fault: *inject_fault,
            };
            commands::corpus(&opts)
        }
        Command::Abelian { json } => commands::abelian(&read_input(cli, json)?, cli.n_max),
        Command::Extension { json } => commands::extension(&read_input(cli, json)?, cli.n_max),
        Command::Torus { json } => commands::torus(&read_input(cli, json)?, cli.n_max.unwrap_or(12)),
        Command::Congruence { json } => commands::congruence(&read_input(cli, json)?, cli.n_max.unwrap_or(12), &config),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&outcome.json).expect("serializable output") + "\n",
                Format::Table => outcome.table,
            };
            let mut out = io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            match outcome.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Violation => {
                    eprintln!("twb: a checked property failed");
                    ExitCode::from(2)
                }
            }
        }
        Err(msg) => {
            eprintln!("twb: {msg}");
            ExitCode::from(1)
        }
    }
}
