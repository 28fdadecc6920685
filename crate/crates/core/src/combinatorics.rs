//! Exact counting: binomial coefficients, configuration totals and the
//! distribution of the full-overlap variable `x_T`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::distribution::{DistributionTable, VariableKind};
use crate::error::{Error, Result};
use crate::Instance;

/// Binomial coefficient `C(m, k)`; zero when `k < 0` or `k > m`.
pub fn binomial(m: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > m {
        return BigUint::zero();
    }
    let k = (k as u64).min(m - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Number of ways to draw the subsets: `prod_i C(n, m_i)`.
pub fn total_configurations(inst: &Instance) -> BigUint {
    let n = inst.population();
    inst.sizes().iter().map(|&m| binomial(n, m as i64)).product()
}

/// The vector `C(x_T = k)` for `k = 0..=m_min`.
///
/// The counts come from the downward recursion
/// `C(x_T = k) = C(n, k) prod_i C(n - k, m_i - k) - sum_{i > k} C(i, k) C(x_T = i)`,
/// which starts at `k = m_min` and reuses every higher entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullOverlapCounts {
    counts: Vec<BigUint>,
}

impl FullOverlapCounts {
    pub fn new(inst: &Instance) -> Self {
        Self::from_sizes(inst.population(), inst.sizes())
    }

    /// Same as [`FullOverlapCounts::new`] without instance validation, so that
    /// shifted parameters such as `(n - 1, M - 1)` with `n = 1` can be counted.
    /// Sizes larger than `n` yield all-zero counts.
    pub fn from_sizes(n: u64, sizes: &[u64]) -> Self {
        let m_min = sizes.iter().copied().min().unwrap_or(0);
        let mut counts = alloc::vec![BigUint::zero(); m_min as usize + 1];
        for k in (0..=m_min).rev() {
            let mut c: BigUint = sizes
                .iter()
                .map(|&m| binomial(n.saturating_sub(k), m as i64 - k as i64))
                .product();
            c *= binomial(n, k as i64);
            for i in k + 1..=m_min {
                c -= binomial(i, k as i64) * &counts[i as usize];
            }
            counts[k as usize] = c;
        }
        FullOverlapCounts { counts }
    }

    /// `C(x_T = k)`; zero above `m_min`.
    pub fn count(&self, k: u64) -> BigUint {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.counts.get(k))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Memo of [`FullOverlapCounts`] keyed by `(n, sorted sizes)`.
#[derive(Clone, Debug, Default)]
pub struct CountCache {
    entries: BTreeMap<(u64, Vec<u64>), FullOverlapCounts>,
}

impl CountCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, inst: &Instance) -> &FullOverlapCounts {
        let n = inst.population();
        let key = (n, inst.canonical_sizes());
        self.entries
            .entry(key)
            .or_insert_with_key(|(n, sizes)| FullOverlapCounts::from_sizes(*n, sizes))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Number of configurations with exactly `k` elements in every subset.
///
/// `k > m_min` is an impossible outcome and counts zero; negative `k` is an
/// error.
pub fn count_full_overlap(inst: &Instance, k: i64) -> Result<BigUint> {
    if k < 0 {
        return Err(Error::NegativeCount { k });
    }
    if k as u64 > inst.min_size() {
        return Ok(BigUint::zero());
    }
    Ok(FullOverlapCounts::new(inst).count(k as u64))
}

/// Exact pmf of `x_T` over `k = 0..=m_min`.
pub fn pmf_full_overlap(inst: &Instance) -> DistributionTable {
    let counts = FullOverlapCounts::new(inst);
    DistributionTable::from_counts(
        VariableKind::FullOverlap,
        inst.subsets(),
        counts.counts(),
        &total_configurations(inst),
    )
}
