//! Tail bounds and significance for overlap counts.
//!
//! Bounds are inequalities and are evaluated in `f64`. Exact tail
//! probabilities, when the instance allows them, stay rational.

use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::pmf_full_overlap;
use crate::error::{Error, Result};
use crate::moments::{
    expectation_at_least_t, expectation_exact_t, expectation_full, variance_at_least_t, variance_exact_t,
    variance_full,
};
use crate::oracle::enumerate_distribution;
use crate::{Instance, OverlapMode};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoundMethod {
    /// `E / (1 - E)^2`: Chebyshev at threshold 1 with the variance replaced by the mean.
    ChebyshevMeanSubstituted,
    /// `Var / (k - E)^2`.
    ChebyshevGeneral,
    /// Whole-sigma threshold from the Vysochanskii-Petunin inequality.
    VysochanskiiPetunin,
    /// Tail of the enumerated pmf.
    ExactEnumeration,
    /// Tail of the full-overlap pmf from the counting recursion.
    ExactFullOverlap,
}

impl BoundMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundMethod::ChebyshevMeanSubstituted => "chebyshev-mean-substituted",
            BoundMethod::ChebyshevGeneral => "chebyshev-general",
            BoundMethod::VysochanskiiPetunin => "vysochanskii-petunin",
            BoundMethod::ExactEnumeration => "exact-enumeration",
            BoundMethod::ExactFullOverlap => "exact-full-overlap",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, BoundMethod::ExactEnumeration | BoundMethod::ExactFullOverlap)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Exact(BigRational),
    Approximate(f64),
}

impl BoundValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            BoundValue::Approximate(x) => *x,
        }
    }
}

/// Estimate of `P(x >= threshold)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub mean: BigRational,
    pub variance: BigRational,
    pub method: BoundMethod,
    pub threshold: u64,
    pub bound: BoundValue,
    /// False when the method's precondition fails and the bound is vacuous.
    pub valid: bool,
    pub reason: Option<String>,
}

/// Both Chebyshev forms of the bound on `P(x >= 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebyshevBounds {
    pub general: BoundReport,
    pub mean_substituted: BoundReport,
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `Var / (k - E)^2` clamped to 1; the whole interval when `k <= E`.
pub fn one_sided_chebyshev(mean: &BigRational, variance: &BigRational, threshold: u64) -> BoundReport {
    let gap = BigRational::from_integer(BigInt::from(threshold)) - mean;
    let (bound, reason) = if gap.is_positive() {
        let b = to_f64(variance) / (to_f64(&gap) * to_f64(&gap));
        (b.min(1.0), None)
    } else {
        (1.0, Some(String::from("observed value does not exceed the mean")))
    };
    BoundReport {
        mean: mean.clone(),
        variance: variance.clone(),
        method: BoundMethod::ChebyshevGeneral,
        threshold,
        bound: BoundValue::Approximate(bound),
        valid: true,
        reason,
    }
}

/// Chebyshev bounds on `P(x >= 1)`: `Var / (1 - E)^2` and, using `Var ~ E`
/// for small means, `E / (1 - E)^2`. Both are vacuous once `E >= 1`.
pub fn chebyshev_p_at_least_one(mean: &BigRational, variance: &BigRational) -> ChebyshevBounds {
    let report = |method, numerator: &BigRational| {
        let one = BigRational::one();
        if *mean >= one {
            BoundReport {
                mean: mean.clone(),
                variance: variance.clone(),
                method,
                threshold: 1,
                bound: BoundValue::Approximate(1.0),
                valid: false,
                reason: Some(String::from("mean >= 1; the bound is vacuous")),
            }
        } else {
            let lambda = to_f64(&(one - mean));
            let b = to_f64(numerator) / (lambda * lambda);
            BoundReport {
                mean: mean.clone(),
                variance: variance.clone(),
                method,
                threshold: 1,
                bound: BoundValue::Approximate(b.min(1.0)),
                valid: true,
                reason: None,
            }
        }
    };
    ChebyshevBounds {
        general: report(BoundMethod::ChebyshevGeneral, variance),
        mean_substituted: report(BoundMethod::ChebyshevMeanSubstituted, mean),
    }
}

/// How [`max_mean_for_alpha`] turns a significance level into a mean.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ThresholdMethod {
    ChebyshevMeanSubstituted,
    VysochanskiiPetunin,
}

impl ThresholdMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ThresholdMethod::ChebyshevMeanSubstituted => BoundMethod::ChebyshevMeanSubstituted.as_str(),
            ThresholdMethod::VysochanskiiPetunin => BoundMethod::VysochanskiiPetunin.as_str(),
        }
    }
}

/// Whole number of standard deviations `lambda` with
/// `P(|x - mu| >= lambda sigma) <= alpha` under the Vysochanskii-Petunin
/// inequality. At `alpha = 0.05` this is the 3-sigma rule.
pub fn sigma_multiple(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    // 4 / (9 l^2) for l >= sqrt(8/3), 4 / (3 l^2) - 1/3 below.
    let exact = if alpha <= 1.0 / 6.0 {
        libm::sqrt(4.0 / (9.0 * alpha))
    } else {
        libm::sqrt(4.0 / (3.0 * alpha + 1.0))
    };
    Ok(libm::ceil(exact - 1e-9))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha)
    }
}

/// Largest mean `E` for which the chosen rule still certifies
/// `P(x >= 1) <= alpha`, assuming `Var ~ E`.
///
/// * Chebyshev: the root in `(0, 1)` of `E / (1 - E)^2 = alpha`.
/// * Vysochanskii-Petunin: the root of `E + lambda sqrt(E) = 1` with
///   `lambda = sigma_multiple(alpha)`.
pub fn max_mean_for_alpha(alpha: f64, method: ThresholdMethod) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(match method {
        // Smaller root of alpha E^2 - (2 alpha + 1) E + alpha, in the form
        // that avoids cancellation.
        ThresholdMethod::ChebyshevMeanSubstituted => {
            2.0 * alpha / (2.0 * alpha + 1.0 + libm::sqrt(4.0 * alpha + 1.0))
        }
        ThresholdMethod::VysochanskiiPetunin => {
            let lambda = sigma_multiple(alpha)?;
            let root = 2.0 / (lambda + libm::sqrt(lambda * lambda + 4.0));
            root * root
        }
    })
}

/// `E(x_T) - Var(x_T)` and its size relative to the mean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub mean: BigRational,
    pub variance: BigRational,
    pub gap: BigRational,
    /// `gap / E`; undefined when `E = 0`.
    pub ratio: Option<BigRational>,
    /// Whether `gap / E < E`, i.e. the gap is below `E^2`.
    pub ratio_below_mean: Option<bool>,
}

pub fn mean_variance_gap(inst: &Instance) -> GapReport {
    let mean = expectation_full(inst);
    let variance = variance_full(inst);
    let gap = &mean - &variance;
    let ratio = (!mean.is_zero()).then(|| &gap / &mean);
    let ratio_below_mean = ratio.as_ref().map(|r| *r < mean);
    GapReport { mean, variance, gap, ratio, ratio_below_mean }
}

/// Tail probability `P(x >= observed_k)` for `x_t` or `x_{>=t}`.
///
/// Exact when possible: from the counting recursion for `t = T`, otherwise by
/// enumeration within `budget`. Beyond the budget this falls back to
/// [`one_sided_chebyshev`] with the exact mean and variance.
pub fn overlap_significance(
    inst: &Instance,
    t: usize,
    mode: OverlapMode,
    observed_k: u64,
    budget: u64,
) -> Result<BoundReport> {
    inst.check_level(t)?;
    let (mean, variance) = if t == inst.subsets() {
        (expectation_full(inst), variance_full(inst))
    } else {
        match mode {
            OverlapMode::Exact => (expectation_exact_t(inst, t)?, variance_exact_t(inst, t)?),
            OverlapMode::AtLeast => (expectation_at_least_t(inst, t)?, variance_at_least_t(inst, t)?),
        }
    };
    let exact = |method, tail: BigRational| BoundReport {
        mean: mean.clone(),
        variance: variance.clone(),
        method,
        threshold: observed_k,
        bound: BoundValue::Exact(tail),
        valid: true,
        reason: None,
    };
    let k = usize::try_from(observed_k).unwrap_or(usize::MAX);
    if t == inst.subsets() {
        return Ok(exact(BoundMethod::ExactFullOverlap, pmf_full_overlap(inst).tail(k)));
    }
    match enumerate_distribution(inst, t, mode, budget) {
        Ok(table) => Ok(exact(BoundMethod::ExactEnumeration, table.tail(k))),
        Err(Error::BudgetExceeded { .. }) => Ok(one_sided_chebyshev(&mean, &variance, observed_k)),
        Err(e) => Err(e),
    }
}
