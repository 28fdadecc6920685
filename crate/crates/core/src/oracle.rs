//! Ground truth by brute force.
//!
//! [`enumerate_distribution`] visits every one of the `prod_i C(n, m_i)`
//! configurations and tallies overlap counts exactly. It shares nothing with
//! the closed forms beyond [`total_configurations`]. [`simulate`] samples
//! configurations for instances too large to enumerate.
//!
//! Enumeration runs an odometer over one lexicographic combination walker per
//! subset, updating per-element overlap levels incrementally. Memory is
//! `O(n + sum m_i)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combination::Combination;
use crate::combinatorics::total_configurations;
use crate::distribution::{DistributionTable, VariableKind};
use crate::error::{Error, Result};
use crate::moments::SubsetSelection;
use crate::{Instance, OverlapMode};

/// Default cap on the number of configurations a single enumeration visits.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Number of elements at each overlap level `0..=T` in one configuration.
///
/// `counts` sums to `n` and `sum_t t * counts[t]` equals `sum_i m_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OverlapProfile {
    pub counts: Vec<u64>,
}

impl OverlapProfile {
    /// `x_t` or `x_{>=t}` for this configuration.
    pub fn value(&self, t: usize, mode: OverlapMode) -> u64 {
        match mode {
            OverlapMode::Exact => self.counts.get(t).copied().unwrap_or(0),
            OverlapMode::AtLeast => self.counts.iter().skip(t).sum(),
        }
    }
}

trait Tracker {
    fn enter(&mut self, subset: usize, element: usize);
    fn leave(&mut self, subset: usize, element: usize);
    fn observe(&mut self);
}

fn check_budget(inst: &Instance, budget: u64) -> Result<u128> {
    let configurations = total_configurations(inst);
    match configurations.to_u128() {
        Some(total) if total <= budget as u128 => Ok(total),
        _ => Err(Error::BudgetExceeded { configurations, budget }),
    }
}

/// Visits every configuration once. Subset 0 is the outermost wheel.
fn walk(inst: &Instance, tracker: &mut impl Tracker) {
    let n = inst.population() as usize;
    let mut wheels: Vec<Combination> = inst
        .sizes()
        .iter()
        .map(|&m| Combination::first(n, m as usize))
        .collect();
    for (i, wheel) in wheels.iter().enumerate() {
        for &e in wheel.items() {
            tracker.enter(i, e);
        }
    }
    loop {
        tracker.observe();
        let mut i = wheels.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            let wheel = &mut wheels[i];
            for &e in wheel.items() {
                tracker.leave(i, e);
            }
            let advanced = wheel.advance();
            if !advanced {
                wheel.reset();
            }
            for &e in wheel.items() {
                tracker.enter(i, e);
            }
            if advanced {
                break;
            }
        }
    }
}

struct ProfileTracker<F> {
    level: Vec<usize>,
    profile: OverlapProfile,
    visit: F,
}

impl<F: FnMut(&OverlapProfile)> Tracker for ProfileTracker<F> {
    fn enter(&mut self, _subset: usize, element: usize) {
        let l = &mut self.level[element];
        self.profile.counts[*l] -= 1;
        *l += 1;
        self.profile.counts[*l] += 1;
    }

    fn leave(&mut self, _subset: usize, element: usize) {
        let l = &mut self.level[element];
        self.profile.counts[*l] -= 1;
        *l -= 1;
        self.profile.counts[*l] += 1;
    }

    fn observe(&mut self) {
        (self.visit)(&self.profile);
    }
}

/// Calls `visit` with the overlap profile of every configuration.
pub fn for_each_profile(inst: &Instance, budget: u64, visit: impl FnMut(&OverlapProfile)) -> Result<()> {
    check_budget(inst, budget)?;
    let n = inst.population() as usize;
    let mut counts = vec![0; inst.subsets() + 1];
    counts[0] = n as u64;
    let mut tracker = ProfileTracker {
        level: vec![0; n],
        profile: OverlapProfile { counts },
        visit,
    };
    walk(inst, &mut tracker);
    Ok(())
}

/// Upper end of the support table for an overlap variable at level `t`.
///
/// `n` at `t = 0` (`x_{>=0}` is always `n`), `m_min` at `t = T` and
/// `min(sum m_i, n)` otherwise.
pub fn support_max(inst: &Instance, t: usize) -> u64 {
    if t == 0 {
        inst.population()
    } else if t == inst.subsets() {
        inst.min_size()
    } else {
        inst.size_sum().min(inst.population())
    }
}

/// Exact joint tally of every `x_t` and `x_{>=t}` over all configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapTally {
    subsets: usize,
    total: u128,
    // [t][k] -> number of configurations with x = k
    exact: Vec<Vec<u128>>,
    at_least: Vec<Vec<u128>>,
    k_max: Vec<usize>,
}

impl OverlapTally {
    pub fn enumerate(inst: &Instance, budget: u64) -> Result<Self> {
        let n = inst.population() as usize;
        let levels = inst.subsets() + 1;
        let mut exact = vec![vec![0u128; n + 1]; levels];
        let mut at_least = vec![vec![0u128; n + 1]; levels];
        let mut total = 0u128;
        for_each_profile(inst, budget, |p| {
            total += 1;
            let mut above = 0usize;
            for t in (0..levels).rev() {
                let c = p.counts[t] as usize;
                above += c;
                exact[t][c] += 1;
                at_least[t][above] += 1;
            }
        })?;
        let k_max = (0..levels).map(|t| support_max(inst, t) as usize).collect();
        Ok(OverlapTally { subsets: inst.subsets(), total, exact, at_least, k_max })
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    /// Number of configurations with `x = k` for the chosen variable.
    pub fn count(&self, t: usize, mode: OverlapMode, k: usize) -> u128 {
        let table = match mode {
            OverlapMode::Exact => &self.exact,
            OverlapMode::AtLeast => &self.at_least,
        };
        table.get(t).and_then(|row| row.get(k)).copied().unwrap_or(0)
    }

    pub fn distribution(&self, t: usize, mode: OverlapMode) -> Result<DistributionTable> {
        if t > self.subsets {
            return Err(Error::OverlapLevelOutOfRange { level: t, subsets: self.subsets });
        }
        let counts: Vec<BigUint> = (0..=self.k_max[t])
            .map(|k| BigUint::from(self.count(t, mode, k)))
            .collect();
        // Both modes coincide at t = T.
        let kind = if t == self.subsets { VariableKind::FullOverlap } else { mode.into() };
        Ok(DistributionTable::from_counts(kind, t, &counts, &BigUint::from(self.total)))
    }
}

/// Exact pmf of `x_t` or `x_{>=t}` by exhaustive enumeration.
///
/// Refuses instances with more than `budget` configurations.
pub fn enumerate_distribution(inst: &Instance, t: usize, mode: OverlapMode, budget: u64) -> Result<DistributionTable> {
    inst.check_level(t)?;
    OverlapTally::enumerate(inst, budget)?.distribution(t, mode)
}

/// Tracks how many elements match a selection's membership pattern exactly.
struct Pattern {
    direct: Vec<bool>,
    mismatches: Vec<usize>,
    matching: u128,
}

impl Pattern {
    fn new(selection: &SubsetSelection, subsets: usize, n: usize) -> Self {
        let direct: Vec<bool> = (0..subsets).map(|i| selection.contains(i)).collect();
        // With every subset empty each element misses all direct entries.
        let initial = selection.level();
        Pattern {
            direct,
            mismatches: vec![initial; n],
            matching: if initial == 0 { n as u128 } else { 0 },
        }
    }

    fn step(&mut self, subset: usize, element: usize, entering: bool) {
        let before = self.mismatches[element];
        let after = if self.direct[subset] == entering { before - 1 } else { before + 1 };
        self.mismatches[element] = after;
        if before == 0 {
            self.matching -= 1;
        } else if after == 0 {
            self.matching += 1;
        }
    }
}

struct PairTracker {
    a: Pattern,
    b: Pattern,
    sum: u128,
}

impl Tracker for PairTracker {
    fn enter(&mut self, subset: usize, element: usize) {
        self.a.step(subset, element, true);
        self.b.step(subset, element, true);
    }

    fn leave(&mut self, subset: usize, element: usize) {
        self.a.step(subset, element, false);
        self.b.step(subset, element, false);
    }

    fn observe(&mut self) {
        self.sum += self.a.matching * self.b.matching;
    }
}

/// `E(x_a x_b)` by enumeration, where `x_a` counts elements whose membership
/// across the subsets is exactly the pattern of selection `a`.
pub fn oracle_cross_moment(
    inst: &Instance,
    a: &SubsetSelection,
    b: &SubsetSelection,
    budget: u64,
) -> Result<BigRational> {
    let n = inst.population() as usize;
    let t = inst.subsets();
    let fits = |s: &SubsetSelection| {
        s.population() == inst.population()
            && s.extended().len() == t
            && s.extended().iter().zip(inst.sizes()).all(|(e, &m)| e.subset_size(inst.population()) == m)
    };
    if !fits(a) || !fits(b) {
        return Err(Error::SelectionMismatch);
    }
    let total = check_budget(inst, budget)?;
    let mut tracker = PairTracker { a: Pattern::new(a, t, n), b: Pattern::new(b, t, n), sum: 0 };
    walk(inst, &mut tracker);
    Ok(BigRational::new(BigInt::from(tracker.sum), BigInt::from(total)))
}

/// Summary of a Monte Carlo run.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleStats {
    pub trials: u64,
    pub mean: f64,
    /// Unbiased sample variance; zero for a single trial.
    pub variance: f64,
    pub min: u64,
    pub max: u64,
    pub seed: u64,
}

impl SampleStats {
    /// Standard error of the sample mean.
    pub fn standard_error(&self) -> f64 {
        libm::sqrt(self.variance / self.trials as f64)
    }
}

/// Generator for trial `trial` of a run seeded with `seed`.
///
/// The key is `ChaCha8Rng::seed_from_u64(seed)` and the ChaCha stream id is the
/// trial index, so every trial draws from its own stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Marks a uniform `m`-combination of `0..n` in `levels` using a partial
/// Fisher-Yates shuffle of `scratch`, which must hold a permutation of `0..n`.
fn draw_subset(rng: &mut impl Rng, scratch: &mut [usize], m: usize, levels: &mut [usize]) {
    let n = scratch.len();
    for j in 0..m {
        let r = rng.gen_range(j..n);
        scratch.swap(j, r);
        levels[scratch[j]] += 1;
    }
}

/// Samples `trials` independent configurations and summarises `x_t` or
/// `x_{>=t}`. Identical arguments give identical results.
pub fn simulate(inst: &Instance, t: usize, mode: OverlapMode, trials: u64, seed: u64) -> Result<SampleStats> {
    inst.check_level(t)?;
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let n = inst.population() as usize;
    let mut scratch: Vec<usize> = (0..n).collect();
    let mut levels = vec![0usize; n];
    let (mut sum, mut sum_sq) = (0u128, 0u128);
    let (mut min, mut max) = (u64::MAX, 0u64);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        levels.iter_mut().for_each(|l| *l = 0);
        for &m in inst.sizes() {
            for (i, s) in scratch.iter_mut().enumerate() {
                *s = i;
            }
            draw_subset(&mut rng, &mut scratch, m as usize, &mut levels);
        }
        let x = levels
            .iter()
            .filter(|&&l| match mode {
                OverlapMode::Exact => l == t,
                OverlapMode::AtLeast => l >= t,
            })
            .count() as u64;
        sum += x as u128;
        sum_sq += (x as u128) * (x as u128);
        min = min.min(x);
        max = max.max(x);
    }
    let mean = BigRational::new(BigInt::from(sum), BigInt::from(trials));
    let variance = if trials > 1 {
        let num = BigInt::from(trials as u128 * sum_sq) - BigInt::from(sum) * BigInt::from(sum);
        BigRational::new(num, BigInt::from(trials as u128 * (trials as u128 - 1)))
    } else {
        BigRational::from_integer(0.into())
    };
    Ok(SampleStats {
        trials,
        mean: mean.to_f64().unwrap_or(f64::NAN),
        variance: variance.to_f64().unwrap_or(f64::NAN),
        min,
        max,
        seed,
    })
}
