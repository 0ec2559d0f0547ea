//! Verification batteries.
//!
//! Each check compares a library result against an independent route
//! (oracles in [`oracles`], closed forms, or a second formula) and records
//! the measured error next to its tolerance. A failing computation becomes a
//! failed check, never a panic.

pub mod oracles;
mod suites;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::Fixed;

/// Named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Specfun,
    TildeEta,
    Oracle,
    Nilmanifold,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::TildeEta => "tilde-eta",
            Suite::Oracle => "oracle",
            Suite::Nilmanifold => "nilmanifold",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "specfun" => Suite::Specfun,
            "tilde-eta" => Suite::TildeEta,
            "oracle" => Suite::Oracle,
            "nilmanifold" => Suite::Nilmanifold,
            "all" => Suite::All,
            other => return Err(Error::domain(format!("unknown suite `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Hermite modes per component for the spectral checks.
    pub basis_size: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { basis_size: 256 }
    }
}

/// One comparison. `measured` is `null` in JSON when the computation failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub measured: Fixed,
    pub tolerance: Fixed,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub basis_size: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Collects checks for one suite.
pub(crate) struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Recorder {
            suite: suite.name(),
            checks: Vec::new(),
        }
    }

    /// `measured ≤ tolerance`, with the error folded into a failed check.
    pub(crate) fn error_at_most(&mut self, name: impl Into<String>, tolerance: f64, measured: Result<f64>) {
        self.push(name.into(), tolerance, measured, None);
    }

    /// Like [`Recorder::error_at_most`] with a note kept in the report.
    pub(crate) fn error_at_most_with(
        &mut self,
        name: impl Into<String>,
        tolerance: f64,
        measured: Result<f64>,
        detail: String,
    ) {
        self.push(name.into(), tolerance, measured, Some(detail));
    }

    /// A yes/no property; `measured` is `0` on success and `1` otherwise.
    pub(crate) fn holds(&mut self, name: impl Into<String>, outcome: Result<bool>) {
        let measured = outcome.map(|ok| if ok { 0.0 } else { 1.0 });
        self.push(name.into(), 0.0, measured, None);
    }

    fn push(&mut self, name: String, tolerance: f64, measured: Result<f64>, detail: Option<String>) {
        let check = match measured {
            Ok(m) => Check {
                suite: self.suite,
                name,
                measured: Fixed(m),
                tolerance: Fixed(tolerance),
                passed: m <= tolerance,
                detail,
            },
            Err(e) => Check {
                suite: self.suite,
                name,
                measured: Fixed(f64::NAN),
                tolerance: Fixed(tolerance),
                passed: false,
                detail: Some(e.to_string()),
            },
        };
        self.checks.push(check);
    }
}

/// Run a suite. `All` runs the four suites in order.
pub fn run_suite(suite: Suite, options: &VerifyOptions) -> VerifyReport {
    let order = match suite {
        Suite::All => vec![Suite::Specfun, Suite::TildeEta, Suite::Oracle, Suite::Nilmanifold],
        one => vec![one],
    };
    let mut checks = Vec::new();
    for part in order {
        let mut rec = Recorder::new(part);
        match part {
            Suite::Specfun => suites::specfun_suite(&mut rec),
            Suite::TildeEta => suites::tilde_eta_suite(&mut rec),
            Suite::Oracle => suites::oracle_suite(&mut rec, options),
            Suite::Nilmanifold => suites::nilmanifold_suite(&mut rec),
            Suite::All => unreachable!(),
        }
        checks.extend(rec.checks);
    }
    VerifyReport {
        suite: suite.name(),
        basis_size: options.basis_size,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// Largest of a sequence of fallible errors.
pub(crate) fn max_of<I: IntoIterator<Item = Result<f64>>>(items: I) -> Result<f64> {
    let mut worst = 0.0f64;
    for e in items {
        let e = e?;
        if e.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(e);
    }
    Ok(worst)
}
