//! Job parsing, execution and report rendering for the `ghgd` binary.

pub mod job;
pub mod output;
pub mod report;
pub mod run;

pub use job::{parse_batch, Command, Format, JobSpec};
pub use run::{run, CliError};

/// Overrides the default enumeration budget when set.
pub const BUDGET_ENV: &str = "GHGD_BUDGET";

pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const BUDGET: u8 = 2;
    pub const MISMATCH: u8 = 3;
}
