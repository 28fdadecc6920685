//! Exact probability tables for overlap variables.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::OverlapMode;

/// The random variable a [`DistributionTable`] describes.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum VariableKind {
    /// `x_t`: elements in exactly `t` subsets.
    ExactT,
    /// `x_{>=t}`: elements in at least `t` subsets.
    AtLeastT,
    /// `x_T`: elements in every subset.
    FullOverlap,
}

impl VariableKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VariableKind::ExactT => "exact-t",
            VariableKind::AtLeastT => "at-least-t",
            VariableKind::FullOverlap => "full-overlap",
        }
    }
}

impl From<OverlapMode> for VariableKind {
    fn from(mode: OverlapMode) -> Self {
        match mode {
            OverlapMode::Exact => VariableKind::ExactT,
            OverlapMode::AtLeast => VariableKind::AtLeastT,
        }
    }
}

/// Exact pmf `p(x = k)` over the support `k = 0..=k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    kind: VariableKind,
    level: usize,
    probs: Vec<BigRational>,
}

impl DistributionTable {
    /// Builds the table `counts[k] / total`.
    ///
    /// `total` must be non-zero.
    pub fn from_counts(kind: VariableKind, level: usize, counts: &[BigUint], total: &BigUint) -> Self {
        let den = BigInt::from(total.clone());
        let probs = counts
            .iter()
            .map(|c| BigRational::new(BigInt::from(c.clone()), den.clone()))
            .collect();
        DistributionTable { kind, level, probs }
    }

    pub fn kind(&self) -> VariableKind {
        self.kind
    }

    /// The overlap level `t` of the variable.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn k_max(&self) -> usize {
        self.probs.len().saturating_sub(1)
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    /// `p(x = k)`, zero outside the support.
    pub fn probability(&self, k: usize) -> BigRational {
        self.probs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `P(x >= k)`.
    pub fn tail(&self, k: usize) -> BigRational {
        self.probs.iter().skip(k).fold(BigRational::zero(), |acc, p| acc + p)
    }

    pub fn total(&self) -> BigRational {
        self.tail(0)
    }

    pub fn is_normalized(&self) -> bool {
        self.total().is_one()
    }

    /// `E(x^v)`.
    pub fn raw_moment(&self, v: u32) -> BigRational {
        self.probs
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (k, p)| {
                acc + p * BigRational::from_integer(BigInt::from(k).pow(v))
            })
    }

    pub fn mean(&self) -> BigRational {
        self.raw_moment(1)
    }

    /// `E((x - E x)^v)`.
    pub fn central_moment(&self, v: u32) -> BigRational {
        let mean = self.mean();
        self.probs
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (k, p)| {
                let dev = BigRational::from_integer(BigInt::from(k)) - &mean;
                acc + p * Pow::pow(dev, v)
            })
    }

    pub fn variance(&self) -> BigRational {
        self.central_moment(2)
    }
}
