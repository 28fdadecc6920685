use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Parameters of the distribution: a population of `n` elements and the
/// sizes of the `T >= 2` subsets drawn from it.
///
/// Sizes are kept in the order given. Every quantity in this crate is
/// symmetric under permutation of the sizes; [`Instance::canonical_sizes`]
/// gives the sorted form used as a cache key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    n: u64,
    sizes: Vec<u64>,
}

impl Instance {
    pub fn new(n: u64, sizes: impl Into<Vec<u64>>) -> Result<Self> {
        let sizes = sizes.into();
        if n == 0 {
            return Err(Error::EmptyPopulation);
        }
        if sizes.len() < 2 {
            return Err(Error::TooFewSubsets { count: sizes.len() });
        }
        if let Some((index, &size)) = sizes.iter().enumerate().find(|(_, &m)| m > n) {
            return Err(Error::SubsetTooLarge { index, size, population: n });
        }
        Ok(Instance { n, sizes })
    }

    /// Population size `n`.
    pub fn population(&self) -> u64 {
        self.n
    }

    /// Subset sizes `m_1..m_T` in the order given.
    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Number of subsets `T`.
    pub fn subsets(&self) -> usize {
        self.sizes.len()
    }

    pub fn min_size(&self) -> u64 {
        self.sizes.iter().copied().min().unwrap_or(0)
    }

    pub fn size_sum(&self) -> u64 {
        self.sizes.iter().sum()
    }

    pub fn canonical_sizes(&self) -> Vec<u64> {
        let mut sorted = self.sizes.clone();
        sorted.sort_unstable();
        sorted
    }

    pub(crate) fn check_level(&self, t: usize) -> Result<()> {
        if t > self.subsets() {
            Err(Error::OverlapLevelOutOfRange { level: t, subsets: self.subsets() })
        } else {
            Ok(())
        }
    }
}
