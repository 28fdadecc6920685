//! Serialisable reports. JSON is the normative encoding; every exact value
//! carries its `num/den` string next to a 12-digit decimal approximation.

use ghgd_core::bounds::{BoundReport, BoundValue};
use ghgd_core::decimal;
use ghgd_core::{BigRational, Instance};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exact {
    /// Authoritative value, `num/den` or an integer.
    pub exact: String,
    /// Rounded to 12 significant digits, ties to even.
    pub approx: String,
}

impl From<&BigRational> for Exact {
    fn from(q: &BigRational) -> Self {
        Exact { exact: q.to_string(), approx: decimal::approx(q) }
    }
}

impl From<BigRational> for Exact {
    fn from(q: BigRational) -> Self {
        Exact::from(&q)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceOut {
    pub n: u64,
    pub m: Vec<u64>,
}

impl From<&Instance> for InstanceOut {
    fn from(inst: &Instance) -> Self {
        InstanceOut { n: inst.population(), m: inst.sizes().to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moment {
    pub order: u32,
    pub value: Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub instance: InstanceOut,
    pub t: usize,
    pub mode: String,
    pub variable: String,
    pub mean: Exact,
    pub variance: Exact,
    pub second_moment: Exact,
    pub raw_moments: Vec<Moment>,
    pub central_moments: Vec<Moment>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PmfRow {
    pub k: u64,
    pub p: Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PmfReport {
    pub instance: InstanceOut,
    pub t: usize,
    pub mode: String,
    pub variable: String,
    /// `recursion` or `enumeration`.
    pub method: String,
    pub total_configurations: String,
    pub rows: Vec<PmfRow>,
    pub mean: Exact,
    pub variance: Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundValueOut {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub approx: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundOut {
    pub method: String,
    pub threshold: u64,
    pub bound: BoundValueOut,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&BoundReport> for BoundOut {
    fn from(r: &BoundReport) -> Self {
        let bound = match &r.bound {
            BoundValue::Exact(q) => BoundValueOut { exact: Some(q.to_string()), approx: decimal::approx(q) },
            BoundValue::Approximate(x) => BoundValueOut { exact: None, approx: float_text(*x) },
        };
        BoundOut {
            method: r.method.as_str().to_string(),
            threshold: r.threshold,
            bound,
            valid: r.valid,
            reason: r.reason.clone(),
        }
    }
}

/// `f64` rendered with 12 significant digits.
pub fn float_text(x: f64) -> String {
    match BigRational::from_float(x) {
        Some(q) => decimal::approx(&q),
        None => x.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub method: String,
    pub max_mean: f64,
    /// Whether the exact mean is at or below `max_mean`.
    pub mean_within: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReportOut {
    pub instance: InstanceOut,
    pub t: usize,
    pub mode: String,
    pub mean: Exact,
    pub variance: Exact,
    pub alpha: f64,
    /// Chebyshev bounds on `P(x >= 1)`.
    pub bounds: Vec<BoundOut>,
    pub thresholds: Vec<Threshold>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignificanceReport {
    pub instance: InstanceOut,
    pub t: usize,
    pub mode: String,
    pub observed_k: u64,
    pub mean: Exact,
    pub variance: Exact,
    pub result: BoundOut,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub instance: InstanceOut,
    pub t: usize,
    pub mode: String,
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    pub variance: f64,
    pub standard_error: f64,
    pub min: u64,
    pub max: u64,
    /// Closed-form mean for comparison.
    pub expected_mean: Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub quantity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// `k` for pmf rows, the order for moments.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
    pub formula: Exact,
    pub oracle: Exact,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub instance: InstanceOut,
    pub total_configurations: String,
    pub checks: Vec<Check>,
    /// True when every formula value equals its oracle value.
    pub verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Stats(StatsReport),
    Pmf(PmfReport),
    Oracle(PmfReport),
    Bound(BoundReportOut),
    Significance(SignificanceReport),
    Simulate(SimulateReport),
    Crosscheck(CrosscheckReport),
}
