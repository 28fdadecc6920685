//! Exact arithmetic for the general hypergeometric distribution (GHGD).
//!
//! Draw `T` subsets of fixed sizes `m_1..m_T` uniformly and independently from
//! a population of `n` elements. Every element then lies in between `0` and `T`
//! of the subsets. This crate describes the random variables
//!
//! * `x_t`: the number of elements lying in exactly `t` subsets,
//! * `x_{>=t}`: the number of elements lying in at least `t` subsets,
//! * `x_T`: the number of elements shared by all subsets (full overlap),
//!
//! with exact big-integer counts and exact rationals throughout. The
//! [`oracle`] module enumerates every configuration to provide ground truth
//! for the closed forms in [`combinatorics`] and [`moments`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
mod combination;
pub mod combinatorics;
pub mod decimal;
pub mod distribution;
mod error;
mod instance;
pub mod moments;
pub mod oracle;

pub use error::{Error, Result};
pub use instance::Instance;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

/// Which overlap variable is being described.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum OverlapMode {
    /// Elements lying in exactly `t` subsets.
    Exact,
    /// Elements lying in at least `t` subsets.
    AtLeast,
}

impl OverlapMode {
    pub fn as_str(self) -> &'static str {
        match self {
            OverlapMode::Exact => "exact-t",
            OverlapMode::AtLeast => "at-least-t",
        }
    }
}

impl core::fmt::Display for OverlapMode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for OverlapMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-t" | "exact" => Ok(OverlapMode::Exact),
            "at-least-t" | "at-least" => Ok(OverlapMode::AtLeast),
            _ => Err(Error::UnknownMode),
        }
    }
}
