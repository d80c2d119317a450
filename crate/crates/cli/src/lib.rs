//! Verification suites and experiment drivers behind the `hriesz` binary.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{ConfigError, Format, Overrides, SuiteConfig, SuiteName};
pub use report::{Check, Observation, Report, Summary, REPORT_SCHEMA_VERSION};
pub use suites::{catalog, run_suite, Catalog, CatalogEntry};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    /// At least one check exceeded its tolerance.
    pub const CHECK_FAILED: i32 = 1;
    /// Malformed command line, including unknown suites.
    pub const USAGE: i32 = 2;
    pub const CONFIG: i32 = 3;
    /// A computation or the report output failed.
    pub const RUNTIME: i32 = 4;
}
