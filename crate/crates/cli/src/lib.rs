//! Front end for `strichartz-core`: run configuration, JSON reports, one
//! pipeline per subcommand and the verification suite.

pub mod checks;
pub mod commands;
pub mod config;
pub mod input;
pub mod report;

pub use commands::execute;
pub use config::{Cli, Command, Profile, RunConfig};
pub use report::Report;

/// Exit code for a passing verdict.
pub const EXIT_PASS: i32 = 0;
/// Exit code for a failing or indeterminate verdict.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for usage and configuration errors.
pub const EXIT_USAGE: i32 = 2;
