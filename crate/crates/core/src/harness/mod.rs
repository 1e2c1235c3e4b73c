//! Deterministic verification runs over every module's identities.
//!
//! Each check draws its points from its own seeded stream, so a report
//! depends only on the configuration. Checks run in parallel; the report
//! lists them in declaration order.

mod checks;
mod grid;

pub use grid::{emit_grid, render_grid, GridError, GridKind};

use crate::algebra::SignLedger;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::{self, Write as _};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_SAMPLES: usize = 50;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bicomplex,
    Charts,
    Laplace,
    Algebra,
    Projective,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Bicomplex,
        Suite::Charts,
        Suite::Laplace,
        Suite::Algebra,
        Suite::Projective,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Bicomplex => "bicomplex",
            Suite::Charts => "charts",
            Suite::Laplace => "laplace",
            Suite::Algebra => "algebra",
            Suite::Projective => "projective",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse(name: &str) -> Result<Vec<Suite>, ConfigError> {
        if name == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .map(|s| vec![s])
            .ok_or_else(|| ConfigError::UnknownSuite(name.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub suites: Vec<Suite>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            tol: DEFAULT_TOL,
            suites: Suite::ALL.to_vec(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.samples == 0 {
            return Err(ConfigError::NoSamples);
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(ConfigError::BadTolerance(self.tol));
        }
        Ok(())
    }

    /// Suites in canonical order without repeats.
    fn selected(&self) -> Vec<Suite> {
        let mut s = if self.suites.is_empty() {
            Suite::ALL.to_vec()
        } else {
            self.suites.clone()
        };
        s.sort();
        s.dedup();
        s
    }

    /// Tolerance for identities that hold exactly in floating point arithmetic.
    pub(crate) fn exact_tol(&self) -> f64 {
        self.tol * 1e-2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: Suite,
    pub check: String,
    /// The identity being verified.
    pub identity: String,
    pub status: Status,
    pub samples: usize,
    /// `null` when a check could not produce a defect.
    pub max_defect: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub ledgers: Vec<SignLedger>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub suites: Vec<Suite>,
    pub status: Status,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(
                out,
                "{} {}/{} max defect {:.3e} (tol {:.1e}, n = {})",
                c.status, c.suite, c.check, c.max_defect, c.tolerance, c.samples
            );
            if let Some(d) = &c.detail {
                let _ = write!(out, ": {d}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed (seed {}, samples {}, tol {:e})",
            self.status, self.passed, self.failed, self.seed, self.samples, self.tol
        );
        out
    }
}

/// Running maximum of defects; a NaN defect poisons the result.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    max: f64,
    nan: bool,
    count: usize,
    notes: Vec<String>,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, defect: f64) {
        self.count += 1;
        if defect.is_nan() {
            self.nan = true;
        } else {
            self.max = self.max.max(defect);
        }
    }

    /// Records a failure that has no numeric defect.
    pub fn flag(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn max(&self) -> f64 {
        if self.nan {
            f64::NAN
        } else {
            self.max
        }
    }
}

/// What a check hands back to the report.
pub(crate) struct Outcome {
    pub max_defect: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub ok: bool,
    pub detail: Option<String>,
    pub ledgers: Vec<SignLedger>,
}

impl Outcome {
    pub fn from_tally(t: Tally, tolerance: f64) -> Self {
        let ok = t.notes.is_empty() && !t.nan && t.max <= tolerance;
        let max_defect = t.max();
        let detail = (!t.notes.is_empty()).then(|| {
            let mut notes = t.notes;
            notes.dedup();
            if notes.len() > 3 {
                let more = notes.len() - 3;
                notes.truncate(3);
                notes.push(format!("{more} more"));
            }
            notes.join("; ")
        });
        Self {
            max_defect,
            tolerance,
            samples: t.count,
            ok,
            detail,
            ledgers: Vec::new(),
        }
    }

    pub fn with_ledgers(mut self, ledgers: Vec<SignLedger>) -> Self {
        self.ledgers = ledgers;
        self
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(match self.detail {
            Some(d) => format!("{d}; {detail}"),
            None => detail,
        });
        self
    }
}

pub(crate) struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub identity: &'static str,
    pub run: fn(&SuiteConfig) -> Outcome,
}

/// Runs every check of the selected suites. Failures become report entries.
pub fn run_suite(cfg: &SuiteConfig) -> VerificationReport {
    let suites = cfg.selected();
    let selected: Vec<&Check> = checks::CHECKS
        .iter()
        .filter(|c| suites.contains(&c.suite))
        .collect();
    let checks: Vec<CheckRecord> = selected
        .par_iter()
        .map(|c| {
            let out = (c.run)(cfg);
            CheckRecord {
                suite: c.suite,
                check: c.name.to_string(),
                identity: c.identity.to_string(),
                status: if out.ok { Status::Pass } else { Status::Fail },
                samples: out.samples,
                max_defect: out.max_defect,
                tolerance: out.tolerance,
                detail: out.detail,
                ledgers: out.ledgers,
            }
        })
        .collect();
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    VerificationReport {
        schema_version: SCHEMA_VERSION,
        seed: cfg.seed,
        samples: cfg.samples,
        tol: cfg.tol,
        suites,
        status: if failed == 0 { Status::Pass } else { Status::Fail },
        passed: checks.len() - failed,
        failed,
        checks,
    }
}

/// Names of all checks in declaration order.
pub fn check_names(suite: Suite) -> Vec<&'static str> {
    checks::CHECKS
        .iter()
        .filter(|c| c.suite == suite)
        .map(|c| c.name)
        .collect()
}
