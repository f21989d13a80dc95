//! Command-line front end for `legendre-phase`: single evaluations,
//! coefficient dumps, error and timing tables, figure data and a self-test.

pub mod checks;
pub mod cli;
pub mod error;
pub mod eval;
pub mod figures;
pub mod numbers;
pub mod output;
pub mod tables;
pub mod timing;

pub use error::{CliError, CliResult};
