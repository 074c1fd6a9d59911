//! Command implementations behind the `transversals` binary.
//!
//! Each command returns a [`report::RunReport`] or a [`error::CliError`];
//! the binary prints the report as JSON on stdout and maps failures to exit
//! codes 2 (input), 3 (budget / inconclusive) and 4 (precondition).
//!
//! Resample logs (`sample-set --debug-log`) are line-delimited JSON, one
//! object per step: `{"step", "kind", "location", "redrawn"}`, with
//! locations in the naturally indexed labeling of the planted transversal.

pub mod commands;
pub mod error;
pub mod instance;
pub mod report;
pub mod setspec;
