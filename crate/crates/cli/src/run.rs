use ghgd_core::bounds::{
    chebyshev_p_at_least_one, max_mean_for_alpha, overlap_significance, ThresholdMethod,
};
use ghgd_core::combinatorics::{pmf_full_overlap, total_configurations};
use ghgd_core::distribution::DistributionTable;
use ghgd_core::moments::{
    central_moment_full, expectation_at_least_t, expectation_exact_t, expectation_full, moment_report,
    raw_moment_full, variance_at_least_t, variance_exact_t, variance_full,
};
use ghgd_core::oracle::{enumerate_distribution, simulate, OverlapTally};
use ghgd_core::{BigRational, Instance, OverlapMode};
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exit;
use crate::job::{Command, JobSpec, ValidJob};
use crate::report::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("line {line}: {message}")]
    Batch { line: usize, message: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Budget(_) => exit::BUDGET,
            _ => exit::USAGE,
        }
    }
}

impl From<ghgd_core::Error> for CliError {
    fn from(e: ghgd_core::Error) -> Self {
        match e {
            ghgd_core::Error::BudgetExceeded { .. } => {
                CliError::Budget(format!("{e}; raise --budget to enumerate anyway"))
            }
            _ => CliError::Compute(e.to_string()),
        }
    }
}

/// Exit status for a successfully produced report.
pub fn report_exit_code(report: &Report) -> u8 {
    match report {
        Report::Crosscheck(c) if !c.verdict => exit::MISMATCH,
        _ => exit::SUCCESS,
    }
}

/// Validates and executes one job.
pub fn run(job: &JobSpec, default_budget: u64) -> Result<(Report, ValidJob), CliError> {
    let job = job.validate(default_budget)?;
    let report = execute(&job)?;
    Ok((report, job))
}

fn variable_name(inst: &Instance, t: usize, mode: OverlapMode) -> &'static str {
    if t == inst.subsets() {
        "full-overlap"
    } else {
        mode.as_str()
    }
}

fn mean_and_variance(inst: &Instance, t: usize, mode: OverlapMode) -> Result<(BigRational, BigRational), CliError> {
    Ok(if t == inst.subsets() {
        (expectation_full(inst), variance_full(inst))
    } else {
        match mode {
            OverlapMode::Exact => (expectation_exact_t(inst, t)?, variance_exact_t(inst, t)?),
            OverlapMode::AtLeast => (expectation_at_least_t(inst, t)?, variance_at_least_t(inst, t)?),
        }
    })
}

fn pmf_report(inst: &Instance, t: usize, mode: OverlapMode, method: &str, table: &DistributionTable) -> PmfReport {
    PmfReport {
        instance: inst.into(),
        t,
        mode: mode.as_str().into(),
        variable: variable_name(inst, t, mode).into(),
        method: method.into(),
        total_configurations: total_configurations(inst).to_string(),
        rows: table
            .probs()
            .iter()
            .enumerate()
            .map(|(k, p)| PmfRow { k: k as u64, p: p.into() })
            .collect(),
        mean: table.mean().into(),
        variance: table.variance().into(),
    }
}

pub fn execute(job: &ValidJob) -> Result<Report, CliError> {
    let inst = &job.instance;
    let subsets = inst.subsets();
    // Present for every command except a crosscheck over all levels.
    let t = job.t.unwrap_or(subsets);
    let mode = job.mode.unwrap_or(OverlapMode::Exact);
    Ok(match job.command {
        Command::Stats => {
            let r = moment_report(inst, t, mode, job.v)?;
            let moments = |values: &[BigRational]| {
                values
                    .iter()
                    .enumerate()
                    .map(|(order, v)| Moment { order: order as u32, value: v.into() })
                    .collect()
            };
            Report::Stats(StatsReport {
                instance: inst.into(),
                t,
                mode: mode.as_str().into(),
                variable: variable_name(inst, t, mode).into(),
                mean: (&r.mean).into(),
                variance: (&r.variance).into(),
                second_moment: (&r.second_moment).into(),
                raw_moments: moments(&r.raw_moments),
                central_moments: moments(&r.central_moments),
            })
        }
        Command::Pmf if t == subsets => {
            Report::Pmf(pmf_report(inst, t, mode, "recursion", &pmf_full_overlap(inst)))
        }
        Command::Pmf => {
            let table = enumerate_distribution(inst, t, mode, job.budget)?;
            Report::Pmf(pmf_report(inst, t, mode, "enumeration", &table))
        }
        Command::Oracle => {
            let table = enumerate_distribution(inst, t, mode, job.budget)?;
            Report::Oracle(pmf_report(inst, t, mode, "enumeration", &table))
        }
        Command::Bound => {
            let (mean, variance) = mean_and_variance(inst, t, mode)?;
            let cheb = chebyshev_p_at_least_one(&mean, &variance);
            let mean_f = mean.to_f64().unwrap_or(f64::INFINITY);
            let thresholds = [ThresholdMethod::ChebyshevMeanSubstituted, ThresholdMethod::VysochanskiiPetunin]
                .into_iter()
                .map(|method| {
                    let max_mean = max_mean_for_alpha(job.alpha, method)?;
                    Ok(Threshold { method: method.as_str().into(), max_mean, mean_within: mean_f <= max_mean })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Report::Bound(BoundReportOut {
                instance: inst.into(),
                t,
                mode: mode.as_str().into(),
                mean: (&mean).into(),
                variance: (&variance).into(),
                alpha: job.alpha,
                bounds: vec![(&cheb.general).into(), (&cheb.mean_substituted).into()],
                thresholds,
            })
        }
        Command::Significance => {
            let r = overlap_significance(inst, t, mode, job.observed_k, job.budget)?;
            Report::Significance(SignificanceReport {
                instance: inst.into(),
                t,
                mode: mode.as_str().into(),
                observed_k: job.observed_k,
                mean: (&r.mean).into(),
                variance: (&r.variance).into(),
                result: (&r).into(),
            })
        }
        Command::Simulate => {
            let s = simulate(inst, t, mode, job.trials, job.seed)?;
            let expected = match mode {
                OverlapMode::Exact => expectation_exact_t(inst, t)?,
                OverlapMode::AtLeast => expectation_at_least_t(inst, t)?,
            };
            Report::Simulate(SimulateReport {
                instance: inst.into(),
                t,
                mode: mode.as_str().into(),
                trials: s.trials,
                seed: s.seed,
                mean: s.mean,
                variance: s.variance,
                standard_error: s.standard_error(),
                min: s.min,
                max: s.max,
                expected_mean: expected.into(),
            })
        }
        Command::Crosscheck => Report::Crosscheck(crosscheck(job)?),
    })
}

fn crosscheck(job: &ValidJob) -> Result<CrosscheckReport, CliError> {
    let inst = &job.instance;
    let subsets = inst.subsets();
    let tally = OverlapTally::enumerate(inst, job.budget)?;
    let mut checks = Vec::new();
    let mut push = |quantity: &str, t: Option<usize>, mode: Option<OverlapMode>, index: Option<u64>, formula: BigRational, oracle: BigRational| {
        checks.push(Check {
            quantity: quantity.into(),
            t,
            mode: mode.map(|m| m.as_str().to_string()),
            index,
            equal: formula == oracle,
            formula: formula.into(),
            oracle: oracle.into(),
        });
    };

    let levels: Vec<usize> = match job.t {
        Some(t) => vec![t],
        None => (0..=subsets).collect(),
    };
    let modes: Vec<OverlapMode> = match job.mode {
        Some(m) => vec![m],
        None => vec![OverlapMode::Exact, OverlapMode::AtLeast],
    };

    if levels.contains(&subsets) {
        let oracle = tally.distribution(subsets, OverlapMode::Exact)?;
        let formula = pmf_full_overlap(inst);
        for k in 0..=oracle.k_max().max(formula.k_max()) {
            push("pmf_full_overlap", Some(subsets), None, Some(k as u64), formula.probability(k), oracle.probability(k));
        }
        push("mean_full", Some(subsets), None, None, expectation_full(inst), oracle.mean());
        push("variance_full", Some(subsets), None, None, variance_full(inst), oracle.variance());
        for v in 0..=job.v {
            push("raw_moment_full", Some(subsets), None, Some(v as u64), raw_moment_full(inst, v), oracle.raw_moment(v));
        }
        for v in 0..=job.v {
            push("central_moment_full", Some(subsets), None, Some(v as u64), central_moment_full(inst, v), oracle.central_moment(v));
        }
    }
    for &t in &levels {
        for &mode in &modes {
            let oracle = tally.distribution(t, mode)?;
            let (mean, variance) = match mode {
                OverlapMode::Exact => (expectation_exact_t(inst, t)?, variance_exact_t(inst, t)?),
                OverlapMode::AtLeast => (expectation_at_least_t(inst, t)?, variance_at_least_t(inst, t)?),
            };
            let (mean_name, var_name) = match mode {
                OverlapMode::Exact => ("mean_exact_t", "variance_exact_t"),
                OverlapMode::AtLeast => ("mean_at_least_t", "variance_at_least_t"),
            };
            push(mean_name, Some(t), Some(mode), None, mean, oracle.mean());
            push(var_name, Some(t), Some(mode), None, variance, oracle.variance());
        }
    }
    let verdict = checks.iter().all(|c| c.equal);
    Ok(CrosscheckReport {
        instance: inst.into(),
        total_configurations: tally.total().to_string(),
        checks,
        verdict,
    })
}
