//! File formats, the `sc-cli` command line and the benchmark harness.
//!
//! Exit codes: 0 for YES or success, 1 for NO, 2 for usage and I/O errors,
//! 3 for internal invariant failures.

pub mod bench;
mod cli;
pub mod io;

pub use cli::{cli_main, EXIT_INTERNAL, EXIT_NO, EXIT_USAGE, EXIT_YES};
