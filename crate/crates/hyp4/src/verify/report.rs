//! Configuration and report types for the verification suites.
//!
//! Reports are deterministic functions of their configuration: the same
//! `SuiteConfig` always serializes to the same bytes except for the
//! trailing `wall_time_ms` field, which callers comparing reports are
//! expected to strip.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{Exp3Reading, EXP3_READING};
use crate::{Hyp4Error, Result};

/// Everything a suite run depends on. Two runs with equal configs produce
/// byte-identical reports apart from wall time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite_id: String,
    pub trials: u64,
    pub seed: u64,
    pub mu: f64,
    pub nu: f64,
    pub tolerances: BTreeMap<String, f64>,
    pub exp3_reading: Exp3Reading,
}

impl SuiteConfig {
    /// Config with the default parameter ranges: `μ = 0.1`, `ν = 0.3`, no
    /// extra tolerances.
    pub fn new(suite_id: &str, trials: u64, seed: u64) -> SuiteConfig {
        SuiteConfig {
            suite_id: suite_id.to_owned(),
            trials,
            seed,
            mu: 0.1,
            nu: 0.3,
            tolerances: BTreeMap::new(),
            exp3_reading: EXP3_READING,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Hyp4Error::InvalidInput(
                "suite config needs at least one trial".to_owned(),
            ));
        }
        if !(self.mu.is_finite() && self.mu > 0.0 && self.nu.is_finite() && self.nu > 0.0) {
            return Err(Hyp4Error::InvalidInput(format!(
                "mu and nu must be positive finite, got mu={} nu={}",
                self.mu, self.nu
            )));
        }
        for (name, tol) in &self.tolerances {
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(Hyp4Error::InvalidInput(format!(
                    "tolerance {name} must be positive finite, got {tol}"
                )));
            }
        }
        Ok(())
    }
}

/// One scored trial that broke its bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub inputs: BTreeMap<String, f64>,
    pub measured: f64,
    pub bound: f64,
    pub margin: f64,
}

/// Outcome of one suite run. `pass` holds exactly when `violations` is
/// empty; `worst_margin` is the smallest `bound − measured` seen over the
/// scored trials (`+inf` when nothing was scored).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite_id: String,
    pub config: SuiteConfig,
    pub trials: u64,
    pub violations: Vec<Violation>,
    pub worst_margin: f64,
    pub degeneracies: u64,
    pub pass: bool,
    pub wall_time_ms: f64,
}

/// Accumulates scored trials into a report.
#[derive(Debug)]
pub struct SuiteRecorder {
    config: SuiteConfig,
    trials: u64,
    violations: Vec<Violation>,
    worst_margin: f64,
    degeneracies: u64,
}

impl SuiteRecorder {
    pub fn new(config: SuiteConfig) -> SuiteRecorder {
        SuiteRecorder {
            config,
            trials: 0,
            violations: Vec::new(),
            worst_margin: f64::INFINITY,
            degeneracies: 0,
        }
    }

    /// Scores one trial: `measured` must stay at or below `bound`.
    pub fn score(&mut self, inputs: BTreeMap<String, f64>, measured: f64, bound: f64) {
        self.trials += 1;
        let margin = bound - measured;
        if margin < self.worst_margin {
            self.worst_margin = margin;
        }
        if measured > bound {
            self.violations.push(Violation {
                inputs,
                measured,
                bound,
                margin,
            });
        }
    }

    /// Scores a trial that must satisfy a predicate rather than a numeric
    /// bound; a failed predicate is a violation with zero bound and unit
    /// measurement.
    pub fn score_flag(&mut self, inputs: BTreeMap<String, f64>, holds: bool, margin: f64) {
        self.trials += 1;
        if margin < self.worst_margin {
            self.worst_margin = margin;
        }
        if !holds {
            self.violations.push(Violation {
                inputs,
                measured: 1.0,
                bound: 0.0,
                margin,
            });
        }
    }

    /// Counts a trial whose hypotheses could not be met; it is never
    /// scored.
    pub fn skip_degenerate(&mut self) {
        self.degeneracies += 1;
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn finish(self) -> VerificationReport {
        let pass = self.violations.is_empty();
        VerificationReport {
            suite_id: self.config.suite_id.clone(),
            config: self.config,
            trials: self.trials,
            violations: self.violations,
            worst_margin: self.worst_margin,
            degeneracies: self.degeneracies,
            pass,
            wall_time_ms: 0.0,
        }
    }
}
