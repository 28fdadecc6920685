use core::fmt;

use num_bigint::BigUint;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    /// The population must contain at least one element.
    EmptyPopulation,
    /// At least two subsets are required.
    TooFewSubsets { count: usize },
    /// Subset `index` (0-based) is larger than the population.
    SubsetTooLarge { index: usize, size: u64, population: u64 },
    /// An overlap level outside `0..=T`.
    OverlapLevelOutOfRange { level: usize, subsets: usize },
    /// A negative count was requested where only `k >= 0` is meaningful.
    NegativeCount { k: i64 },
    /// A subset index outside `0..T`.
    IndexOutOfRange { index: usize, subsets: usize },
    /// A subset index was given twice in one selection.
    DuplicateIndex { index: usize },
    /// Two selections that do not belong to the same instance.
    SelectionMismatch,
    /// The product moment of a selection with itself goes through the
    /// diagonal formula instead.
    IdenticalSelections,
    /// Exhaustive enumeration would visit more configurations than allowed.
    BudgetExceeded { configurations: BigUint, budget: u64 },
    /// Significance level outside the open interval `(0, 1)`.
    InvalidAlpha,
    /// At least one Monte Carlo trial is required.
    NoTrials,
    /// Moments above order 2 are only available for the full-overlap variable.
    MomentOrderUnsupported { order: u32 },
    /// Unrecognised overlap mode name.
    UnknownMode,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyPopulation => write!(f, "population size must be positive"),
            Error::TooFewSubsets { count } => {
                write!(f, "at least 2 subsets are required, got {count}")
            }
            Error::SubsetTooLarge { index, size, population } => write!(
                f,
                "subset {} has size {size}, larger than the population {population}",
                index + 1
            ),
            Error::OverlapLevelOutOfRange { level, subsets } => {
                write!(f, "overlap level {level} outside 0..={subsets}")
            }
            Error::NegativeCount { k } => write!(f, "count argument {k} is negative"),
            Error::IndexOutOfRange { index, subsets } => {
                write!(f, "subset index {index} outside 0..{subsets}")
            }
            Error::DuplicateIndex { index } => write!(f, "subset index {index} given twice"),
            Error::SelectionMismatch => write!(f, "selections belong to different instances"),
            Error::IdenticalSelections => write!(
                f,
                "selections are identical; use the diagonal second-moment formula"
            ),
            Error::BudgetExceeded { configurations, budget } => write!(
                f,
                "enumeration needs {configurations} configurations, budget is {budget}"
            ),
            Error::InvalidAlpha => write!(f, "significance level must lie in (0, 1)"),
            Error::NoTrials => write!(f, "at least one trial is required"),
            Error::MomentOrderUnsupported { order } => write!(
                f,
                "moment of order {order} is only available for the full-overlap variable (t = T)"
            ),
            Error::UnknownMode => write!(f, "mode must be `exact-t` or `at-least-t`"),
        }
    }
}

impl core::error::Error for Error {}
