//! Library side of the `cubeorder` command: argument definitions, validated
//! run plans and the CSV-producing commands.

pub mod args;
pub mod commands;
pub mod output;
pub mod plan;

pub use args::{Cli, Command};
pub use commands::{cmd_bench_pack, cmd_bench_stencil, cmd_cachesim, cmd_dump_order, cmd_hist, SCHEMA_LINE};
pub use output::write_atomically;
pub use plan::{CacheMode, RunConfig};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] cubeorder_core::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
