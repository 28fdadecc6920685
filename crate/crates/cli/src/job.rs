use std::io::BufRead;

use ghgd_core::{Instance, OverlapMode};
use serde::{Deserialize, Serialize};

use crate::run::CliError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Stats,
    Pmf,
    Bound,
    Significance,
    Oracle,
    Simulate,
    Crosscheck,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Stats => "stats",
            Command::Pmf => "pmf",
            Command::Bound => "bound",
            Command::Significance => "significance",
            Command::Oracle => "oracle",
            Command::Simulate => "simulate",
            Command::Crosscheck => "crosscheck",
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Plain,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Mode {
    #[serde(rename = "exact-t")]
    #[value(name = "exact-t")]
    Exact,
    #[serde(rename = "at-least-t")]
    #[value(name = "at-least-t")]
    AtLeast,
}

impl From<Mode> for OverlapMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Exact => OverlapMode::Exact,
            Mode::AtLeast => OverlapMode::AtLeast,
        }
    }
}

/// One unit of work, from command-line flags or one batch record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    pub n: u64,
    pub m: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed_k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

pub const DEFAULT_TRIALS: u64 = 10_000;
pub const DEFAULT_ALPHA: f64 = 0.05;
pub const DEFAULT_CROSSCHECK_ORDER: u32 = 4;

/// A [`JobSpec`] that passed validation, with defaults filled in.
#[derive(Clone, Debug)]
pub struct ValidJob {
    pub command: Command,
    pub instance: Instance,
    /// `None` only for a crosscheck over every level.
    pub t: Option<usize>,
    pub mode: Option<OverlapMode>,
    pub v: u32,
    pub trials: u64,
    pub seed: u64,
    pub alpha: f64,
    pub observed_k: u64,
    pub budget: u64,
    pub format: Format,
}

impl JobSpec {
    /// Checks the instance and rejects options the command does not use.
    pub fn validate(&self, default_budget: u64) -> Result<ValidJob, CliError> {
        let instance = Instance::new(self.n, self.m.clone()).map_err(|e| CliError::Validation(e.to_string()))?;
        let subsets = instance.subsets();
        if let Some(t) = self.t {
            if t > subsets {
                return Err(CliError::Validation(format!("t = {t} exceeds the number of subsets {subsets}")));
            }
        }

        let allowed: &[&str] = match self.command {
            Command::Stats => &["t", "mode", "v"],
            Command::Pmf | Command::Oracle => &["t", "mode", "budget"],
            Command::Bound => &["t", "mode", "alpha"],
            Command::Significance => &["t", "mode", "observed_k", "budget"],
            Command::Simulate => &["t", "mode", "trials", "seed"],
            Command::Crosscheck => &["t", "mode", "v", "budget"],
        };
        let given = [
            ("t", self.t.is_some()),
            ("mode", self.mode.is_some()),
            ("v", self.v.is_some()),
            ("trials", self.trials.is_some()),
            ("seed", self.seed.is_some()),
            ("alpha", self.alpha.is_some()),
            ("observed_k", self.observed_k.is_some()),
            ("budget", self.budget.is_some()),
        ];
        if let Some((name, _)) = given.iter().find(|(name, set)| *set && !allowed.contains(name)) {
            return Err(CliError::Validation(format!(
                "option `{}` does not apply to `{}`",
                name.replace('_', "-"),
                self.command.as_str()
            )));
        }

        let t = match self.command {
            Command::Crosscheck => self.t,
            _ => Some(self.t.unwrap_or(subsets)),
        };
        let mode = match self.command {
            Command::Crosscheck => self.mode.map(Into::into),
            _ => Some(self.mode.map_or(OverlapMode::Exact, Into::into)),
        };
        let v = match self.command {
            Command::Crosscheck => self.v.unwrap_or(DEFAULT_CROSSCHECK_ORDER),
            _ => self.v.unwrap_or(2),
        };
        if self.command == Command::Stats && v > 2 && t != Some(subsets) {
            return Err(CliError::Validation(format!(
                "moments above order 2 need t = T = {subsets} (the full-overlap variable)"
            )));
        }
        let trials = self.trials.unwrap_or(DEFAULT_TRIALS);
        if trials == 0 {
            return Err(CliError::Validation("trials must be at least 1".into()));
        }
        let alpha = self.alpha.unwrap_or(DEFAULT_ALPHA);
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(CliError::Validation(format!("alpha = {alpha} must lie in (0, 1)")));
        }
        if self.command == Command::Significance && self.observed_k.is_none() {
            return Err(CliError::Validation("significance needs observed-k".into()));
        }

        Ok(ValidJob {
            command: self.command,
            instance,
            t,
            mode,
            v,
            trials,
            seed: self.seed.unwrap_or(0),
            alpha,
            observed_k: self.observed_k.unwrap_or(0),
            budget: self.budget.unwrap_or(default_budget),
            format: self.format.unwrap_or_default(),
        })
    }
}

/// Reads newline-delimited JSON job records. Blank lines are skipped.
///
/// Parsing is all-or-nothing: the first malformed or invalid record aborts
/// with its 1-based line number.
pub fn parse_batch(reader: impl BufRead, default_budget: u64) -> Result<Vec<JobSpec>, CliError> {
    let mut jobs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| CliError::Io(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let job: JobSpec = serde_json::from_str(&line).map_err(|e| CliError::Batch {
            line: line_no,
            message: e.to_string(),
        })?;
        job.validate(default_budget).map_err(|e| CliError::Batch {
            line: line_no,
            message: e.to_string(),
        })?;
        jobs.push(job);
    }
    Ok(jobs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(n: u64, m: &[u64]) -> JobSpec {
        JobSpec {
            command: Command::Stats,
            n,
            m: m.to_vec(),
            t: None,
            mode: None,
            v: None,
            trials: None,
            seed: None,
            alpha: None,
            observed_k: None,
            budget: None,
            format: None,
        }
    }

    #[test]
    fn defaults_fill_in() {
        let job = stats(4, &[2, 2]).validate(100).unwrap();
        assert_eq!(job.t, Some(2));
        assert_eq!(job.mode, Some(OverlapMode::Exact));
        assert_eq!(job.v, 2);
        assert_eq!(job.budget, 100);
        assert_eq!(job.format, Format::Json);
    }

    #[test]
    fn rejects_foreign_options() {
        let mut job = stats(4, &[2, 2]);
        job.trials = Some(5);
        let err = job.validate(100).unwrap_err();
        assert!(err.to_string().contains("`trials` does not apply to `stats`"), "{err}");
    }

    #[test]
    fn rejects_high_order_for_partial_overlap() {
        let mut job = stats(4, &[2, 2]);
        job.t = Some(1);
        job.v = Some(3);
        assert!(matches!(job.validate(100), Err(CliError::Validation(_))));
    }

    #[test]
    fn names_oversized_subset() {
        let err = stats(4, &[2, 5]).validate(100).unwrap_err();
        assert!(err.to_string().contains("subset 2"), "{err}");
    }

    #[test]
    fn batch_parsing() {
        assert!(parse_batch("".as_bytes(), 10).unwrap().is_empty());
        let one = parse_batch(r#"{"command":"stats","n":4,"m":[2,2],"t":2}"#.as_bytes(), 10).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].t, Some(2));

        let bad = "{\"command\":\"stats\",\"n\":4,\"m\":[2,2]}\n\n{\"command\":\"pmf\",\"n\":4,\"m\":[2,9]}\n";
        match parse_batch(bad.as_bytes(), 10) {
            Err(CliError::Batch { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("subset 2"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let unknown = r#"{"command":"stats","n":4,"m":[2,2],"bogus":1}"#;
        assert!(matches!(parse_batch(unknown.as_bytes(), 10), Err(CliError::Batch { line: 1, .. })));
    }
}
