//! Closed-form moments of `x_T`, `x_t` and `x_{>=t}`.
//!
//! The exact-`t` variable splits as a sum over `t`-selections of subsets: an
//! element counts towards selection `S` when it lies in every subset of `S`
//! and in none of the others. Replacing each unselected size `m_j` by its
//! complement `n - m_j` turns that count into a full-overlap count, so every
//! first moment reduces to [`expectation_full`] on an extended size list.
//! Second moments add product moments between pairs of selections, which
//! factor over subsets once each subset is classified as having the same
//! membership polarity in both selections or not.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::combination::all_combinations;
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::{Instance, OverlapMode};

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `num / den`, taking `0 / 0` as zero.
///
/// Falling-factorial moments `prod_i (m_i)_r / ((n)_r)^(T-1)` have a vanishing
/// denominator only when `n < r`, and then every `m_i <= n < r` makes the
/// numerator vanish too. The event is impossible and its moment is zero.
fn ratio_or_zero(num: BigUint, den: BigUint) -> BigRational {
    if num.is_zero() {
        BigRational::zero()
    } else {
        BigRational::new(num.into(), den.into())
    }
}

/// `prod values / n^(T-1)` for a size list of length `T`.
fn mean_of(n: u64, values: &[u64]) -> BigRational {
    let num: BigUint = values.iter().map(|&v| BigUint::from(v)).product();
    let exp = values.len().saturating_sub(1) as u32;
    ratio_or_zero(num, Pow::pow(BigUint::from(n), exp))
}

/// Mean of `x_T` under `(n - d, M - d)`; zero once any size would go negative.
fn shifted_mean(n: u64, values: &[u64], d: u64) -> BigRational {
    if values.iter().any(|&v| v < d) || n < d {
        return BigRational::zero();
    }
    let shifted: Vec<u64> = values.iter().map(|&v| v - d).collect();
    mean_of(n - d, &shifted)
}

/// `E(x_T^2) = E(x_T) (1 + E(x_T | n-1, M-1))` for an arbitrary size list.
fn second_moment_of(n: u64, values: &[u64]) -> BigRational {
    let mean = mean_of(n, values);
    if mean.is_zero() {
        return mean;
    }
    &mean * (BigRational::one() + shifted_mean(n, values, 1))
}

/// `E(x_T) = prod m_i / n^(T-1)`.
pub fn expectation_full(inst: &Instance) -> BigRational {
    mean_of(inst.population(), inst.sizes())
}

/// Raw moments `E(x_T^j)` for `j = 0..=v`.
///
/// Uses `E(x^v) = E(x) sum_{i<v} C(v-1, i) E(x^i | n-1, M-1)` with
/// `E(x^0) = 1`. The table is filled from the deepest shift upwards so each
/// shifted moment is computed once.
pub fn raw_moments_full(inst: &Instance, v: u32) -> Vec<BigRational> {
    let n = inst.population();
    let sizes = inst.sizes();
    let depth = v as usize;
    // below[j] = E(x^j | n - d - 1, M - d - 1) while processing shift d.
    let mut below: Vec<BigRational> = alloc::vec![BigRational::one()];
    for d in (0..=depth).rev() {
        let order = depth - d;
        let mean = shifted_mean(n, sizes, d as u64);
        let mut current = Vec::with_capacity(order + 1);
        current.push(BigRational::one());
        for j in 1..=order {
            let sum = (0..j).fold(BigRational::zero(), |acc, i| {
                acc + int(binomial(j as u64 - 1, i as i64)) * &below[i]
            });
            current.push(&mean * sum);
        }
        below = current;
    }
    below
}

/// `E(x_T^v)`.
pub fn raw_moment_full(inst: &Instance, v: u32) -> BigRational {
    raw_moments_full(inst, v).pop().unwrap_or_else(BigRational::one)
}

/// `E((x_T - E x_T)^v)` from the raw moments.
pub fn central_moment_full(inst: &Instance, v: u32) -> BigRational {
    central_from_raw(&raw_moments_full(inst, v), v)
}

fn central_from_raw(raw: &[BigRational], v: u32) -> BigRational {
    let mean = raw.get(1).cloned().unwrap_or_else(BigRational::zero);
    (0..=v).fold(BigRational::zero(), |acc, j| {
        let term = int(binomial(v as u64, j as i64)) * &raw[j as usize] * Pow::pow(&mean, v - j);
        if (v - j) % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// `Var(x_T) = E(x_T) (1 + E(x_T | n-1, M-1) - E(x_T))`.
pub fn variance_full(inst: &Instance) -> BigRational {
    let mean = expectation_full(inst);
    let shifted = shifted_mean(inst.population(), inst.sizes(), 1);
    &mean * (BigRational::one() + shifted - &mean)
}

/// Membership a selection requires of one subset.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    /// The element lies in the subset; the entry's value is `m_i`.
    Direct,
    /// The element lies outside the subset; the entry's value is `n - m_i`.
    Complement,
}

/// One entry of an extended size list.
///
/// Equality is structural, by `(index, polarity)`. Two entries with the same
/// numeric value but different origin are distinct.
#[derive(Copy, Clone, Debug)]
pub struct SignedSize {
    pub index: usize,
    pub polarity: Polarity,
    pub value: u64,
}

impl PartialEq for SignedSize {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.polarity == other.polarity
    }
}

impl Eq for SignedSize {}

impl SignedSize {
    /// The subset size `m_index` the entry was derived from.
    pub fn subset_size(&self, n: u64) -> u64 {
        match self.polarity {
            Polarity::Direct => self.value,
            Polarity::Complement => n - self.value,
        }
    }
}

/// A `t`-subset of subset indices together with its extended size list.
///
/// Indices are 0-based and kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSelection {
    population: u64,
    indices: Vec<usize>,
    extended: Vec<SignedSize>,
}

impl SubsetSelection {
    pub fn population(&self) -> u64 {
        self.population
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The `T` entries: direct sizes for chosen indices, complements otherwise.
    pub fn extended(&self) -> &[SignedSize] {
        &self.extended
    }

    pub fn values(&self) -> Vec<u64> {
        self.extended.iter().map(|e| e.value).collect()
    }

    /// Number of chosen subsets `t`.
    pub fn level(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    fn same_instance(&self, other: &Self) -> bool {
        self.population == other.population
            && self.extended.len() == other.extended.len()
            && self
                .extended
                .iter()
                .zip(&other.extended)
                .all(|(a, b)| a.subset_size(self.population) == b.subset_size(other.population))
    }

    fn belongs_to(&self, inst: &Instance) -> bool {
        self.population == inst.population()
            && self.extended.len() == inst.subsets()
            && self
                .extended
                .iter()
                .zip(inst.sizes())
                .all(|(e, &m)| e.subset_size(self.population) == m)
    }
}

/// Builds the extended size list `M(M_t)` for the chosen indices.
pub fn extended_sizes(inst: &Instance, indices: &[usize]) -> Result<SubsetSelection> {
    let t = inst.subsets();
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::DuplicateIndex { index: pair[0] });
        }
    }
    if let Some(&index) = sorted.iter().find(|&&i| i >= t) {
        return Err(Error::IndexOutOfRange { index, subsets: t });
    }
    Ok(selection_unchecked(inst, sorted))
}

fn selection_unchecked(inst: &Instance, indices: Vec<usize>) -> SubsetSelection {
    let n = inst.population();
    let extended = inst
        .sizes()
        .iter()
        .enumerate()
        .map(|(index, &m)| {
            if indices.binary_search(&index).is_ok() {
                SignedSize { index, polarity: Polarity::Direct, value: m }
            } else {
                SignedSize { index, polarity: Polarity::Complement, value: n - m }
            }
        })
        .collect();
    SubsetSelection { population: n, indices, extended }
}

/// All `C(T, t)` selections of size `t`, in lexicographic order.
pub fn selections(inst: &Instance, t: usize) -> Result<Vec<SubsetSelection>> {
    inst.check_level(t)?;
    Ok(all_combinations(inst.subsets(), t)
        .into_iter()
        .map(|idx| selection_unchecked(inst, idx))
        .collect())
}

/// `E(x_t) = sum over t-selections of prod M(M_t) / n^(T-1)`.
pub fn expectation_exact_t(inst: &Instance, t: usize) -> Result<BigRational> {
    let n = inst.population();
    Ok(selections(inst, t)?
        .iter()
        .fold(BigRational::zero(), |acc, s| acc + mean_of(n, &s.values())))
}

/// `E(x_t)` when every subset has size `m`:
/// `C(T, t) (n - m)^(T-t) m^t / n^(T-1)`.
pub fn expectation_equal_m(n: u64, m: u64, subsets: usize, t: usize) -> Result<BigRational> {
    // Validates n, m and T.
    let inst = Instance::new(n, alloc::vec![m; subsets])?;
    inst.check_level(t)?;
    let num = binomial(subsets as u64, t as i64)
        * Pow::pow(BigUint::from(n - m), (subsets - t) as u32)
        * Pow::pow(BigUint::from(m), t as u32);
    Ok(ratio_or_zero(num, Pow::pow(BigUint::from(n), (subsets - 1) as u32)))
}

/// `E(x_{>=t}) = sum_{i=t}^{T} E(x_i)`.
pub fn expectation_at_least_t(inst: &Instance, t: usize) -> Result<BigRational> {
    inst.check_level(t)?;
    (t..=inst.subsets()).try_fold(BigRational::zero(), |acc, i| Ok(acc + expectation_exact_t(inst, i)?))
}

/// Structural split of the extended list of `a` against that of `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamePartition {
    /// Entries with the same polarity in both selections.
    pub same: Vec<SignedSize>,
    /// The remaining entries of `a`'s extended list.
    pub no_same: Vec<SignedSize>,
}

pub fn same_partition(a: &SubsetSelection, b: &SubsetSelection) -> Result<SamePartition> {
    if !a.same_instance(b) {
        return Err(Error::SelectionMismatch);
    }
    let (same, no_same) = a
        .extended
        .iter()
        .zip(&b.extended)
        .partition::<Vec<_>, _>(|(x, y)| x == y);
    Ok(SamePartition {
        same: same.into_iter().map(|(x, _)| *x).collect(),
        no_same: no_same.into_iter().map(|(x, _)| *x).collect(),
    })
}

/// Candidate denominators for the product moment of two distinct selections.
///
/// For two distinct elements and a uniform `m`-subset, the chance that both
/// match a pair of polarities has denominator `n (n - 1)`. With one such
/// factor per subset and `n (n - 1)` ordered element pairs, the product moment
/// carries `(n (n - 1))^(T-1)`. [`PairDenominator::PopulationPowerT`] is the
/// alternative `n^T (n - 1)^(T-1)`, kept so the oracle suites can show it is
/// off by a factor `n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PairDenominator {
    /// `n^(T-1) (n-1)^(T-1)`.
    FallingPair,
    /// `n^T (n-1)^(T-1)`.
    PopulationPowerT,
}

impl PairDenominator {
    pub fn value(self, n: u64, subsets: usize) -> BigUint {
        let base = Pow::pow(BigUint::from(n) * BigUint::from(n.saturating_sub(1)), (subsets - 1) as u32);
        match self {
            PairDenominator::FallingPair => base,
            PairDenominator::PopulationPowerT => base * n,
        }
    }
}

/// Denominator used by [`cross_moment`]; the one that agrees with enumeration.
pub const PAIR_DENOMINATOR: PairDenominator = PairDenominator::FallingPair;

/// `E(x_a x_b)` for distinct selections `a` and `b`:
/// `prod_{no_same} v (n - v) prod_{same} v (v - 1)` over the pair denominator.
pub fn cross_moment(inst: &Instance, a: &SubsetSelection, b: &SubsetSelection) -> Result<BigRational> {
    cross_moment_with(PAIR_DENOMINATOR, inst, a, b)
}

/// [`cross_moment`] with an explicit denominator candidate.
pub fn cross_moment_with(
    denominator: PairDenominator,
    inst: &Instance,
    a: &SubsetSelection,
    b: &SubsetSelection,
) -> Result<BigRational> {
    if !a.belongs_to(inst) || !b.belongs_to(inst) {
        return Err(Error::SelectionMismatch);
    }
    if a == b {
        return Err(Error::IdenticalSelections);
    }
    let n = inst.population();
    let part = same_partition(a, b)?;
    let mixed = part
        .no_same
        .iter()
        .map(|e| BigUint::from(e.value) * (n - e.value));
    // v (v - 1) with v = 0 is zero; no underflow.
    let paired = part
        .same
        .iter()
        .map(|e| BigUint::from(e.value) * e.value.saturating_sub(1));
    let num: BigUint = mixed.chain(paired).product();
    Ok(ratio_or_zero(num, denominator.value(n, inst.subsets())))
}

/// Sum of `E(x_a x_b)` over ordered pairs drawn from `pool`.
fn pair_sum(denominator: PairDenominator, inst: &Instance, pool: &[SubsetSelection]) -> Result<BigRational> {
    let n = inst.population();
    let mut acc = BigRational::zero();
    for a in pool {
        for b in pool {
            if a == b {
                acc += second_moment_of(n, &a.values());
            } else {
                acc += cross_moment_with(denominator, inst, a, b)?;
            }
        }
    }
    Ok(acc)
}

/// `E(x_t^2)`: product moments over ordered pairs of `t`-selections, with the
/// full-overlap second moment of the extended list on the diagonal.
pub fn second_moment_exact_t(inst: &Instance, t: usize) -> Result<BigRational> {
    second_moment_exact_t_with(PAIR_DENOMINATOR, inst, t)
}

pub fn second_moment_exact_t_with(denominator: PairDenominator, inst: &Instance, t: usize) -> Result<BigRational> {
    pair_sum(denominator, inst, &selections(inst, t)?)
}

pub fn variance_exact_t(inst: &Instance, t: usize) -> Result<BigRational> {
    let mean = expectation_exact_t(inst, t)?;
    Ok(second_moment_exact_t(inst, t)? - &mean * &mean)
}

fn at_least_pool(inst: &Instance, t: usize) -> Result<Vec<SubsetSelection>> {
    inst.check_level(t)?;
    let mut pool = Vec::new();
    for level in t..=inst.subsets() {
        pool.extend(selections(inst, level)?);
    }
    Ok(pool)
}

/// `E(x_{>=t}^2)`: the pair sum over all selections of size `t..=T`.
pub fn second_moment_at_least_t(inst: &Instance, t: usize) -> Result<BigRational> {
    second_moment_at_least_t_with(PAIR_DENOMINATOR, inst, t)
}

pub fn second_moment_at_least_t_with(denominator: PairDenominator, inst: &Instance, t: usize) -> Result<BigRational> {
    pair_sum(denominator, inst, &at_least_pool(inst, t)?)
}

pub fn variance_at_least_t(inst: &Instance, t: usize) -> Result<BigRational> {
    let mean = expectation_at_least_t(inst, t)?;
    Ok(second_moment_at_least_t(inst, t)? - &mean * &mean)
}

/// Exact summary of one overlap variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentReport {
    pub level: usize,
    pub mode: OverlapMode,
    pub mean: BigRational,
    pub variance: BigRational,
    pub second_moment: BigRational,
    /// `E(x^j)` for `j = 0..=v`.
    pub raw_moments: Vec<BigRational>,
    /// `E((x - E x)^j)` for `j = 0..=v`.
    pub central_moments: Vec<BigRational>,
}

/// Mean, variance and moments up to `max_order` of `x_t` or `x_{>=t}`.
///
/// Orders above 2 exist in closed form only for the full-overlap variable,
/// which is `t = T` in either mode.
pub fn moment_report(inst: &Instance, t: usize, mode: OverlapMode, max_order: u32) -> Result<MomentReport> {
    inst.check_level(t)?;
    let full = t == inst.subsets();
    let raw_moments = if full {
        raw_moments_full(inst, max_order.max(2))
    } else {
        if max_order > 2 {
            return Err(Error::MomentOrderUnsupported { order: max_order });
        }
        let (mean, second) = match mode {
            OverlapMode::Exact => (expectation_exact_t(inst, t)?, second_moment_exact_t(inst, t)?),
            OverlapMode::AtLeast => (expectation_at_least_t(inst, t)?, second_moment_at_least_t(inst, t)?),
        };
        alloc::vec![BigRational::one(), mean, second]
    };
    let central_moments: Vec<BigRational> = (0..=max_order.max(2)).map(|v| central_from_raw(&raw_moments, v)).collect();
    let mean = raw_moments[1].clone();
    let second_moment = raw_moments[2].clone();
    let variance = central_moments[2].clone();
    let keep = max_order as usize + 1;
    Ok(MomentReport {
        level: t,
        mode,
        mean,
        variance,
        second_moment,
        raw_moments: raw_moments.into_iter().take(keep).collect(),
        central_moments: central_moments.into_iter().take(keep).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn inst(n: u64, m: &[u64]) -> Instance {
        Instance::new(n, m.to_vec()).unwrap()
    }

    #[test]
    fn full_overlap_means() {
        assert_eq!(expectation_full(&inst(4, &[2, 2])), q(1, 1));
        assert_eq!(expectation_full(&inst(5, &[5, 5, 5])), q(5, 1));
        assert_eq!(expectation_full(&inst(4, &[2, 2, 2])), q(1, 2));
    }

    #[test]
    fn full_overlap_moments() {
        let i = inst(4, &[2, 2]);
        assert_eq!(raw_moment_full(&i, 0), q(1, 1));
        assert_eq!(raw_moment_full(&i, 1), expectation_full(&i));
        assert_eq!(raw_moment_full(&i, 2), q(4, 3));
        // sum (k - 1)^3 p(k) over (1/6, 2/3, 1/6) vanishes by symmetry.
        assert_eq!(central_moment_full(&i, 3), q(0, 1));
        assert_eq!(central_moment_full(&i, 1), q(0, 1));
        assert_eq!(central_moment_full(&i, 2), variance_full(&i));
        assert_eq!(variance_full(&i), q(1, 3));
        assert_eq!(variance_full(&inst(5, &[5, 5])), q(0, 1));
        assert_eq!(variance_full(&inst(4, &[2, 2, 2])), q(11, 36));
    }

    #[test]
    fn recursion_survives_exhausted_shifts() {
        // n = 1 shifts down to (0, [0, 0]).
        let i = inst(1, &[1, 1]);
        assert_eq!(raw_moments_full(&i, 4), [q(1, 1), q(1, 1), q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(variance_full(&i), q(0, 1));
        let zero = inst(6, &[0, 3]);
        assert_eq!(raw_moments_full(&zero, 3), [q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn extended_lists() {
        let i = inst(10, &[3, 4, 5]);
        let s = extended_sizes(&i, &[0]).unwrap();
        assert_eq!(s.values(), [3, 6, 5]);
        let pols: Vec<_> = s.extended().iter().map(|e| e.polarity).collect();
        assert_eq!(pols, [Polarity::Direct, Polarity::Complement, Polarity::Complement]);
        assert_eq!(extended_sizes(&i, &[2, 0, 1]).unwrap().values(), [3, 4, 5]);
        assert_eq!(extended_sizes(&i, &[1, 1]), Err(Error::DuplicateIndex { index: 1 }));
        assert_eq!(extended_sizes(&i, &[3]), Err(Error::IndexOutOfRange { index: 3, subsets: 3 }));

        let five = inst(20, &[1, 2, 3, 4, 5]);
        assert_eq!(extended_sizes(&five, &[0, 1, 3]).unwrap().values(), [1, 2, 17, 4, 15]);
    }

    #[test]
    fn exact_t_means() {
        assert_eq!(expectation_exact_t(&inst(4, &[2, 2]), 1).unwrap(), q(2, 1));
        assert_eq!(expectation_exact_t(&inst(4, &[2, 2, 2]), 2).unwrap(), q(3, 2));
        let i = inst(9, &[2, 7, 4]);
        assert_eq!(expectation_exact_t(&i, 3).unwrap(), expectation_full(&i));
        assert_eq!(
            expectation_exact_t(&i, 4),
            Err(Error::OverlapLevelOutOfRange { level: 4, subsets: 3 })
        );
    }

    #[test]
    fn equal_m_means() {
        assert_eq!(expectation_equal_m(4, 2, 3, 2).unwrap(), q(3, 2));
        assert_eq!(expectation_equal_m(7, 3, 4, 4).unwrap(), q(81, 343));
        for t in 0..3 {
            assert_eq!(expectation_equal_m(5, 5, 3, t).unwrap(), q(0, 1));
        }
        assert_eq!(expectation_equal_m(5, 5, 3, 3).unwrap(), q(5, 1));
        assert!(expectation_equal_m(5, 6, 3, 1).is_err());
    }

    #[test]
    fn at_least_means() {
        let i = inst(4, &[2, 2]);
        assert_eq!(expectation_at_least_t(&i, 0).unwrap(), q(4, 1));
        assert_eq!(expectation_at_least_t(&i, 1).unwrap(), q(3, 1));
        assert_eq!(expectation_at_least_t(&i, 2).unwrap(), expectation_full(&i));
    }

    #[test]
    fn same_partition_is_structural() {
        let i = inst(20, &[1, 2, 3, 4, 5]);
        let a = extended_sizes(&i, &[0, 1, 2]).unwrap();
        let b = extended_sizes(&i, &[0, 1, 3]).unwrap();
        let p = same_partition(&a, &b).unwrap();
        let vals = |v: &[SignedSize]| v.iter().map(|e| e.value).collect::<Vec<_>>();
        assert_eq!(vals(&p.same), [1, 2, 15]);
        assert_eq!(vals(&p.no_same), [3, 16]);

        let p = same_partition(&a, &a).unwrap();
        assert_eq!(p.same.len(), 5);
        assert!(p.no_same.is_empty());

        // n - m_2 = m_1 numerically, but the entries differ in origin.
        let two = inst(4, &[2, 2]);
        let a = extended_sizes(&two, &[0]).unwrap();
        let b = extended_sizes(&two, &[1]).unwrap();
        let p = same_partition(&a, &b).unwrap();
        assert!(p.same.is_empty());
        assert_eq!(vals(&p.no_same), [2, 2]);

        let other = extended_sizes(&inst(4, &[1, 2]), &[0]).unwrap();
        assert_eq!(same_partition(&a, &other), Err(Error::SelectionMismatch));
    }

    #[test]
    fn cross_moments() {
        let i = inst(2, &[1, 1]);
        let a = extended_sizes(&i, &[0]).unwrap();
        let b = extended_sizes(&i, &[1]).unwrap();
        assert_eq!(cross_moment(&i, &a, &b).unwrap(), q(1, 2));
        assert_eq!(cross_moment(&i, &a, &a), Err(Error::IdenticalSelections));

        let i = inst(2, &[2, 1]);
        let a = extended_sizes(&i, &[0]).unwrap();
        let b = extended_sizes(&i, &[0, 1]).unwrap();
        assert_eq!(cross_moment(&i, &a, &b).unwrap(), q(1, 1));

        // Full against empty selection: prod m_i (n - m_i) / (n (n-1))^(T-1).
        let i = inst(6, &[2, 3, 4]);
        let full = extended_sizes(&i, &[0, 1, 2]).unwrap();
        let none = extended_sizes(&i, &[]).unwrap();
        assert_eq!(cross_moment(&i, &full, &none).unwrap(), q(8 * 9 * 8, 900));
    }

    #[test]
    fn exact_t_second_moments() {
        let i = inst(4, &[2, 2]);
        assert_eq!(second_moment_exact_t(&i, 1).unwrap(), q(16, 3));
        assert_eq!(second_moment_exact_t(&i, 2).unwrap(), q(4, 3));
        assert_eq!(variance_exact_t(&i, 1).unwrap(), q(4, 3));
        assert_eq!(variance_exact_t(&i, 2).unwrap(), q(1, 3));
        assert_eq!(variance_exact_t(&inst(5, &[5, 5]), 2).unwrap(), q(0, 1));
        let j = inst(7, &[3, 5, 2]);
        assert_eq!(second_moment_exact_t(&j, 3).unwrap(), raw_moment_full(&j, 2));
    }

    #[test]
    fn at_least_variances() {
        let i = inst(4, &[2, 2]);
        assert_eq!(variance_at_least_t(&i, 1).unwrap(), q(1, 3));
        assert_eq!(variance_at_least_t(&i, 0).unwrap(), q(0, 1));
        let j = inst(7, &[3, 5, 2]);
        assert_eq!(variance_at_least_t(&j, 3).unwrap(), variance_full(&j));
    }

    #[test]
    fn report_orders() {
        let i = inst(4, &[2, 2]);
        let r = moment_report(&i, 2, OverlapMode::Exact, 4).unwrap();
        assert_eq!(r.mean, q(1, 1));
        assert_eq!(r.variance, q(1, 3));
        assert_eq!(r.raw_moments.len(), 5);
        assert_eq!(r.central_moments[1], q(0, 1));
        let r = moment_report(&i, 1, OverlapMode::Exact, 1).unwrap();
        assert_eq!(r.variance, q(4, 3));
        assert_eq!(r.raw_moments, [q(1, 1), q(2, 1)]);
        assert_eq!(
            moment_report(&i, 1, OverlapMode::AtLeast, 3),
            Err(Error::MomentOrderUnsupported { order: 3 })
        );
    }
}
