use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubeorder_core::BlockOrder;

use crate::plan::ModeArg;

#[derive(Debug, Parser)]
#[command(name = "cubeorder", version, about = "Space-filling-curve layouts, locality models and stencil benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print every path index with its (k, i, j) location.
    DumpOrder(DumpArgs),
    /// Accumulated memory-offset histograms for a stencil sweep.
    Hist(HistArgs),
    /// LRU cache-miss counts for stencil or surface sweeps.
    Cachesim(CacheArgs),
    /// Time the 3D Game-of-Life stencil kernel.
    BenchStencil(StencilArgs),
    /// Time packing the six halo surfaces into buffers.
    BenchPack(PackArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderingName {
    Rowmajor,
    Morton,
    Hilbert,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum AccessArg {
    /// Read the full stencil around each centre.
    #[default]
    Stencil,
    /// Read only the centre item.
    Center,
}

#[derive(Debug, Clone, Args)]
pub struct OrderingArgs {
    /// Orderings to run; repeat or comma-separate for a sweep.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [OrderingName::Rowmajor])]
    pub ordering: Vec<OrderingName>,
    /// Morton recursion levels (default: m-1, full interleaving).
    #[arg(long, value_delimiter = ',')]
    pub level: Vec<u32>,
    /// Block exponents t (block side 2^t). For hybrids this is required; for
    /// Morton it selects level m-t, with t=0 meaning full interleaving.
    #[arg(long = "block-exp", value_delimiter = ',')]
    pub block_exp: Vec<u32>,
    /// Ordering inside hybrid blocks.
    #[arg(long, default_value = "rowmajor")]
    pub inner: BlockOrder,
    /// Ordering between hybrid blocks.
    #[arg(long, default_value = "morton")]
    pub outer: BlockOrder,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write CSV here instead of stdout. The file is replaced atomically.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DumpArgs {
    #[command(flatten)]
    pub ordering: OrderingArgs,
    /// Cube side exponent, M = 2^m.
    #[arg(long = "m", default_value_t = 2)]
    pub m: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HistArgs {
    #[command(flatten)]
    pub ordering: OrderingArgs,
    #[arg(long = "m", value_delimiter = ',', default_values_t = [5])]
    pub m: Vec<u32>,
    /// Stencil half-widths.
    #[arg(long = "g", value_delimiter = ',', default_values_t = [1])]
    pub g: Vec<u32>,
    /// Run independent sweep points on all cores.
    #[arg(long)]
    pub parallel: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CacheArgs {
    #[command(flatten)]
    pub ordering: OrderingArgs,
    #[arg(long = "m", value_delimiter = ',', default_values_t = [5])]
    pub m: Vec<u32>,
    #[arg(long = "g", value_delimiter = ',', default_values_t = [1])]
    pub g: Vec<u32>,
    /// Items per cache line.
    #[arg(long = "b", value_delimiter = ',', default_values_t = [8])]
    pub b: Vec<u64>,
    /// Lines held by the cache.
    #[arg(long = "c", value_delimiter = ',', default_values_t = [512])]
    pub c: Vec<u64>,
    /// interior, border, surface:<id> or surface:all.
    #[arg(long, value_delimiter = ',', default_values_t = [ModeArg::Interior])]
    pub mode: Vec<ModeArg>,
    /// What border and surface sweeps read at each centre.
    #[arg(long, value_enum, default_value_t = AccessArg::Stencil)]
    pub access: AccessArg,
    #[arg(long)]
    pub parallel: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct StencilArgs {
    #[command(flatten)]
    pub ordering: OrderingArgs,
    #[arg(long = "m", value_delimiter = ',', default_values_t = [6])]
    pub m: Vec<u32>,
    #[arg(long = "g", value_delimiter = ',', default_values_t = [1])]
    pub g: Vec<u32>,
    /// Survival interval LO,HI (default scales with g).
    #[arg(long, value_parser = parse_interval)]
    pub survive: Option<(u32, u32)>,
    /// Birth interval LO,HI (default scales with g).
    #[arg(long, value_parser = parse_interval)]
    pub born: Option<(u32, u32)>,
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Generations per timed run.
    #[arg(long, default_value_t = 10)]
    pub iterations: u32,
    /// Timed runs averaged per row.
    #[arg(long, default_value_t = 10)]
    pub repeats: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PackArgs {
    #[command(flatten)]
    pub ordering: OrderingArgs,
    #[arg(long = "m", value_delimiter = ',', default_values_t = [6])]
    pub m: Vec<u32>,
    /// Halo widths.
    #[arg(long = "g", value_delimiter = ',', default_values_t = [1])]
    pub g: Vec<u32>,
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub repeats: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_interval(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| format!("expected LO,HI, got '{s}'"))?;
    let p = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("'{x}': {e}"));
    Ok((p(lo)?, p(hi)?))
}
