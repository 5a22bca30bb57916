//! Command-line front end for `cha-core`.
//!
//! Every command prints one table. CSV output holds the table alone; JSON
//! output wraps it in a record with the parameters, oracle precision,
//! summary values and (unless `--no-timing`) the elapsed time.

mod commands;
pub mod indices;
pub mod output;

pub use commands::{
    fraction, run, Cli, CliError, Command, Common, Outcome, HEAVY_CHI_N, HEAVY_ORACLE_DIGITS,
};
