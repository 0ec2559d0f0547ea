//! `eta235`: evaluate eta functions of (2,3,5) nilmanifolds, dump truncated
//! spectra and run the verification batteries.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 internal inconsistency.

mod eval;
mod output;
mod spectrum;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

use eta235::verify::{run_suite, Suite, VerifyOptions};

#[derive(Parser)]
#[command(name = "eta235", version, about = "Eta invariants of (2,3,5) nilmanifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate η_S, η̃, η_Hurw or Im Li at one or more points.
    Eval(eval::EvalArgs),
    /// η_S at 0, the negative odd integers and the negative even integers.
    SpecialValues(eval::SpecialArgs),
    /// Eigenvalues of a truncated representation matrix of S.
    Spectrum(spectrum::SpectrumArgs),
    /// Run a verification suite and report every check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    /// Hermite modes per component for the spectral checks.
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u64).range(8..=2048))]
    basis_size: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Specfun,
    TildeEta,
    Oracle,
    Nilmanifold,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Specfun => Suite::Specfun,
            SuiteArg::TildeEta => Suite::TildeEta,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Nilmanifold => Suite::Nilmanifold,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Output format for evaluation records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    let report = run_suite(
        args.suite.into(),
        &VerifyOptions {
            basis_size: args.basis_size as usize,
        },
    );
    for check in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("check failed: [{}] {}", check.suite, check.name);
    }
    output::emit(args.out.as_deref(), &eta235::report::to_json(&report))?;
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Eval(args) => eval::run_eval(args).map(|_| ExitCode::SUCCESS),
        Command::SpecialValues(args) => eval::run_special(args).map(|_| ExitCode::SUCCESS),
        Command::Spectrum(args) => spectrum::run_spectrum(args).map(|_| ExitCode::SUCCESS),
        Command::Verify(args) => run_verify(args),
    }
}

/// 3 for an inconsistency inside the library, 2 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    let inconsistent = err
        .chain()
        .filter_map(|e| e.downcast_ref::<eta235::Error>())
        .any(|e| !e.is_validation());
    if inconsistent {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_kind() {
        let bad_input = anyhow::Error::new(eta235::Error::Domain("a must not be an integer".into()));
        assert_eq!(exit_code(&bad_input), 2);
        let inconsistent = anyhow::Error::new(eta235::Error::Inconsistency("routes disagree".into()))
            .context("evaluating η_S(-2)");
        assert_eq!(exit_code(&inconsistent), 3);
        assert_eq!(exit_code(&anyhow::anyhow!("--hbar is required")), 2);
    }
}
