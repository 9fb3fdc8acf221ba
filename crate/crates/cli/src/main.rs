//! `catlogic`: check theories and compute their algebras, spaces, models and
//! syntactic categories at desk scale.

mod commands;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use catlogic::equational::Backend;
use catlogic::Error;

#[derive(Debug, Parser)]
#[command(name = "catlogic", version, about = "Finite syntax/semantics dualities")]
struct Cli {
    /// Worker threads for the parallel searches (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Largest number of candidates any single search may visit.
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a theory file.
    Check { file: PathBuf },

    /// Lindenbaum-Tarski algebra of a propositional theory.
    Lt { file: PathBuf },

    /// Stone space of the Lindenbaum-Tarski algebra.
    Stone {
        file: PathBuf,
        /// Verify that b -> D(b) is an isomorphism onto the clopens.
        #[arg(long)]
        roundtrip: bool,
    },

    /// Models on carriers of one size.
    Models {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        size: u64,
        /// Group the models into isomorphism classes.
        #[arg(long)]
        upto_iso: bool,
    },

    /// Groupoid of models with carrier sizes in `min..=max`.
    Groupoid {
        file: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        min: u64,
        #[arg(long)]
        max: u64,
        /// Also write the groupoid as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },

    /// A hom-set of the syntactic category.
    Syn {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["N", "M"])]
        arity: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Rewrite)]
        backend: BackendArg,
        /// Largest model consulted by the modeleval backend.
        #[arg(long, default_value_t = 3)]
        model_size: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Rewrite,
    Modeleval,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Rewrite => Backend::Rewrite,
            BackendArg::Modeleval => Backend::ModelEval,
        }
    }
}

/// Why a command stopped; decides the exit status.
#[derive(Debug)]
pub enum Failure {
    User(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvariantViolation(_) => Failure::Internal(e.to_string()),
            _ => Failure::User(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    };
    let mut limits = catlogic::Limits::default();
    if let Some(b) = cli.budget {
        limits.budget = b;
    }
    let result = pool.install(|| commands::run(&cli.command, cli.format, &limits));
    let report = match result {
        Ok(r) => r,
        Err(Failure::User(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &report).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(report.as_bytes())
            .map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(m) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_classes() {
        assert!(matches!(Failure::from(Error::InvariantViolation("x".into())), Failure::Internal(_)));
        assert!(matches!(Failure::from(Error::DegenerateAlgebra), Failure::User(_)));
        assert!(matches!(
            Failure::from(Error::BackendUnavailable("x".into())),
            Failure::User(_)
        ));
    }

    #[test]
    fn arguments() {
        let cli = Cli::try_parse_from(["catlogic", "syn", "t.thy", "--arity", "2", "1", "--workers", "4"]).unwrap();
        assert_eq!(cli.workers, 4);
        assert!(matches!(cli.command, Command::Syn { ref arity, depth: 2, .. } if arity == &[2, 1]));
        assert!(Cli::try_parse_from(["catlogic", "syn", "t.thy", "--arity", "2"]).is_err());
        assert!(Cli::try_parse_from(["catlogic", "groupoid", "t.thy", "--min", "0", "--max", "2"]).is_err());
    }
}
