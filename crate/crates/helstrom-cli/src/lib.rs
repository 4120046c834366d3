//! Library backing the `helstrom` binary: configuration layering, grid
//! sweeps, single-point reports, and convergence tables.
//!
//! The binary in `main.rs` only parses arguments and maps errors to exit
//! codes; everything observable lives here so it can be driven from tests.

pub mod config;
pub mod converge;
pub mod error;
pub mod format;
pub mod grid;
pub mod point;

pub use config::{DimMode, Settings};
pub use error::CliError;

/// Version string recorded in run manifests.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
