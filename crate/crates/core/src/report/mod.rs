//! The JSON report schema, the verification suites and the command
//! implementations behind the `gstopo` binary.

pub mod commands;
pub mod document;
pub mod suites;

pub use commands::{
    build_target, cmd_analyze, cmd_arrangement, cmd_enumerate, cmd_homology, cmd_verify, HomologyTarget,
};
pub use document::{ReportDocument, SCHEMA_VERSION};
pub use suites::{run_suite, Suite, SuiteConfig, SuiteOutcome};
