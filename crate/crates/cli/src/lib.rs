//! Command-line front end and HTTP session service for `quiverlab-core`.
//!
//! Both entry points only format what the core computes; structured output
//! goes through [`structured`] so the two produce identical bytes.

pub mod cli;
pub mod commands;
mod input;
pub mod paper;
pub mod service;

pub use commands::{run, CliError, Report};

/// Compact JSON, the structured format shared by the CLI and the service.
pub fn structured<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report values always serialize")
}

/// Environment variable holding the default maximum search depth.
pub const MAX_DEPTH_ENV: &str = "QUIVERLAB_MAX_DEPTH";
/// Environment variable holding the default certificate mutation depth.
pub const MUTATION_DEPTH_ENV: &str = "QUIVERLAB_MUTATION_DEPTH";
/// Environment variable holding the default certificate recursion depth.
pub const RECURSION_DEPTH_ENV: &str = "QUIVERLAB_RECURSION_DEPTH";
