//! Validated, fully expanded run configurations.
//!
//! Every constraint of the underlying models is checked here, before any
//! command starts producing output.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cubeorder_core::layout::MAX_LAYOUT_EXPONENT;
use cubeorder_core::{
    AccessMode, CacheConfig, Dims, Error, OrderingSpec, RuleSpec, StencilSpec, SurfaceId,
};

use crate::args::{AccessArg, Command, OrderingArgs, OrderingName};

/// `--mode` value before expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Interior,
    Border,
    /// `None` expands to all six surfaces.
    Surface(Option<SurfaceId>),
}

impl FromStr for ModeArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "interior" => Ok(ModeArg::Interior),
            "border" => Ok(ModeArg::Border),
            "surface:all" => Ok(ModeArg::Surface(None)),
            _ => match s.strip_prefix("surface:") {
                Some(id) => Ok(ModeArg::Surface(Some(id.parse()?))),
                None => Err(Error::InvalidArgument(format!(
                    "unknown mode '{s}' (expected interior, border, surface:<id> or surface:all)"
                ))),
            },
        }
    }
}

impl fmt::Display for ModeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeArg::Interior => f.write_str("interior"),
            ModeArg::Border => f.write_str("border"),
            ModeArg::Surface(None) => f.write_str("surface:all"),
            ModeArg::Surface(Some(s)) => write!(f, "surface:{s}"),
        }
    }
}

/// One cache-simulation variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheMode {
    Interior,
    Border(AccessMode),
    Surface(SurfaceId, AccessMode),
}

impl CacheMode {
    /// Value of the `mode` CSV column.
    pub fn label(&self) -> &'static str {
        let access = |a: &AccessMode| match a {
            AccessMode::Stencil => 0,
            AccessMode::CenterOnly => 1,
        };
        match self {
            CacheMode::Interior => "interior",
            CacheMode::Border(a) => ["border:stencil", "border:center"][access(a)],
            CacheMode::Surface(_, a) => ["surface:stencil", "surface:center"][access(a)],
        }
    }

    /// Value of the `surface` CSV column.
    pub fn surface_label(&self) -> &'static str {
        match self {
            CacheMode::Surface(s, _) => s.name(),
            _ => "-",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DumpPlan {
    pub spec: OrderingSpec,
}

#[derive(Debug, Clone)]
pub struct HistPlan {
    pub points: Vec<(OrderingSpec, StencilSpec)>,
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct CachePoint {
    pub spec: OrderingSpec,
    pub stencil: StencilSpec,
    pub cache: CacheConfig,
    pub mode: CacheMode,
}

#[derive(Debug, Clone)]
pub struct CachePlan {
    pub points: Vec<CachePoint>,
    pub parallel: bool,
}

#[derive(Debug, Clone)]
pub struct StencilPlan {
    pub points: Vec<(OrderingSpec, RuleSpec)>,
    pub density: f64,
    pub seed: u64,
    pub iterations: u32,
    pub repeats: u32,
}

#[derive(Debug, Clone)]
pub struct PackPlan {
    pub points: Vec<(OrderingSpec, u32)>,
    pub density: f64,
    pub seed: u64,
    pub repeats: u32,
}

#[derive(Debug, Clone)]
pub enum RunConfig {
    DumpOrder(DumpPlan),
    Hist(HistPlan),
    Cachesim(CachePlan),
    BenchStencil(StencilPlan),
    BenchPack(PackPlan),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, Error> {
    Err(Error::InvalidArgument(msg.into()))
}

/// Expands the ordering flags into concrete specs over `dims`.
pub fn orderings(args: &OrderingArgs, dims: Dims) -> Result<Vec<OrderingSpec>, Error> {
    let m = dims.exponent();
    let mut out = Vec::new();
    for name in &args.ordering {
        match name {
            OrderingName::Rowmajor => out.push(OrderingSpec::row_major(dims)),
            OrderingName::Hilbert => out.push(OrderingSpec::hilbert(dims)?),
            OrderingName::Morton => {
                if m == 0 {
                    return invalid("Morton ordering needs m >= 1");
                }
                let mut levels = args.level.clone();
                for &t in &args.block_exp {
                    if t >= m {
                        return invalid(format!("Morton block exponent {t} must be below m={m}"));
                    }
                    levels.push(if t == 0 { m - 1 } else { m - t });
                }
                if levels.is_empty() {
                    levels.push(m - 1);
                }
                for r in levels {
                    out.push(OrderingSpec::morton(dims, r)?);
                }
            }
            OrderingName::Hybrid => {
                if args.block_exp.is_empty() {
                    return invalid("hybrid ordering needs at least one --block-exp");
                }
                for &t in &args.block_exp {
                    out.push(OrderingSpec::hybrid(dims, args.inner, args.outer, t)?);
                }
            }
        }
    }
    Ok(out)
}

fn checked_dims(m: u32) -> Result<Dims, Error> {
    if m > MAX_LAYOUT_EXPONENT {
        return Err(Error::Resource(format!("m={m} exceeds the largest tabulated layout (m={MAX_LAYOUT_EXPONENT})")));
    }
    Dims::new(m)
}

fn dims_list(ms: &[u32]) -> Result<Vec<Dims>, Error> {
    if ms.is_empty() {
        return invalid("at least one --m is required");
    }
    ms.iter().map(|&m| checked_dims(m)).collect()
}

fn check_density(d: f64) -> Result<(), Error> {
    if !(0.0..=1.0).contains(&d) {
        return invalid(format!("density {d} outside [0, 1]"));
    }
    Ok(())
}

fn check_positive(name: &str, v: u32) -> Result<(), Error> {
    if v == 0 {
        return invalid(format!("--{name} must be at least 1"));
    }
    Ok(())
}

impl RunConfig {
    pub fn from_command(cmd: &Command) -> Result<Self, Error> {
        Ok(match cmd {
            Command::DumpOrder(a) => {
                let dims = checked_dims(a.m)?;
                let specs = orderings(&a.ordering, dims)?;
                let [spec] = specs.as_slice() else {
                    return invalid(format!("dump-order takes exactly one ordering, got {}", specs.len()));
                };
                RunConfig::DumpOrder(DumpPlan { spec: *spec })
            }
            Command::Hist(a) => {
                let mut points = Vec::new();
                for dims in dims_list(&a.m)? {
                    for spec in orderings(&a.ordering, dims)? {
                        for &g in &a.g {
                            points.push((spec, StencilSpec::for_dims(g, dims)?));
                        }
                    }
                }
                RunConfig::Hist(HistPlan { points, parallel: a.parallel })
            }
            Command::Cachesim(a) => {
                let access = match a.access {
                    AccessArg::Stencil => AccessMode::Stencil,
                    AccessArg::Center => AccessMode::CenterOnly,
                };
                let mut modes = Vec::new();
                for m in &a.mode {
                    match m {
                        ModeArg::Interior => modes.push(CacheMode::Interior),
                        ModeArg::Border => modes.push(CacheMode::Border(access)),
                        ModeArg::Surface(Some(s)) => modes.push(CacheMode::Surface(*s, access)),
                        ModeArg::Surface(None) => {
                            modes.extend(SurfaceId::ALL.iter().map(|&s| CacheMode::Surface(s, access)))
                        }
                    }
                }
                let mut points = Vec::new();
                for dims in dims_list(&a.m)? {
                    for spec in orderings(&a.ordering, dims)? {
                        for &g in &a.g {
                            let stencil = StencilSpec::for_dims(g, dims)?;
                            for &b in &a.b {
                                for &c in &a.c {
                                    let cache = CacheConfig::new(b, c)?;
                                    cache.check_fits(dims)?;
                                    for &mode in &modes {
                                        points.push(CachePoint { spec, stencil, cache, mode });
                                    }
                                }
                            }
                        }
                    }
                }
                RunConfig::Cachesim(CachePlan { points, parallel: a.parallel })
            }
            Command::BenchStencil(a) => {
                check_density(a.density)?;
                check_positive("iterations", a.iterations)?;
                check_positive("repeats", a.repeats)?;
                let mut points = Vec::new();
                for dims in dims_list(&a.m)? {
                    for spec in orderings(&a.ordering, dims)? {
                        for &g in &a.g {
                            let default = RuleSpec::default_for(g)?;
                            let rule = RuleSpec::new(
                                g,
                                a.survive.unwrap_or((default.survive_lo, default.survive_hi)),
                                a.born.unwrap_or((default.born_lo, default.born_hi)),
                            )?;
                            rule.stencil.check_fits(dims)?;
                            points.push((spec, rule));
                        }
                    }
                }
                RunConfig::BenchStencil(StencilPlan {
                    points,
                    density: a.density,
                    seed: a.seed,
                    iterations: a.iterations,
                    repeats: a.repeats,
                })
            }
            Command::BenchPack(a) => {
                check_density(a.density)?;
                check_positive("repeats", a.repeats)?;
                let mut points = Vec::new();
                for dims in dims_list(&a.m)? {
                    for spec in orderings(&a.ordering, dims)? {
                        for &g in &a.g {
                            StencilSpec::for_dims(g, dims)?;
                            points.push((spec, g));
                        }
                    }
                }
                RunConfig::BenchPack(PackPlan { points, density: a.density, seed: a.seed, repeats: a.repeats })
            }
        })
    }
}

/// Destination from the command's `--out` flag.
pub fn out_path(cmd: &Command) -> Option<&Path> {
    let out: &Option<PathBuf> = match cmd {
        Command::DumpOrder(a) => &a.output.out,
        Command::Hist(a) => &a.output.out,
        Command::Cachesim(a) => &a.output.out,
        Command::BenchStencil(a) => &a.output.out,
        Command::BenchPack(a) => &a.output.out,
    };
    out.as_deref()
}
