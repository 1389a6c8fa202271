//! The five subcommands. Each renders its whole CSV in memory so a failure
//! never leaves partial output behind.

use cubeorder_core::timing::clock_resolution;
use cubeorder_core::{
    bench_pack, bench_stencil, build_layout, build_surface_lists, init_grid, offset_histogram, simulate,
    AccessMode, CenterSelection, LayoutMap, OrderingSpec,
};
use rayon::prelude::*;

use crate::plan::{CacheMode, CachePlan, DumpPlan, HistPlan, PackPlan, RunConfig, StencilPlan};
use crate::Result;

/// First line of every CSV this tool writes.
pub const SCHEMA_LINE: &str = "# schema=1";

pub const DUMP_HEADER: [&str; 4] = ["path", "k", "i", "j"];
pub const HIST_HEADER: [&str; 5] = ["ordering", "M", "g", "offset", "count"];
pub const CACHESIM_HEADER: [&str; 9] = ["ordering", "M", "g", "b", "c", "mode", "surface", "nmisses", "naccesses"];
pub const BENCH_STENCIL_HEADER: [&str; 6] =
    ["ordering", "M", "g", "iterations", "mean_time_per_update_s", "std_dev_s"];
pub const BENCH_PACK_HEADER: [&str; 6] = ["ordering", "M", "g", "surface", "mean_time_s", "std_dev_s"];

/// Nine significant digits.
fn sci(x: f64) -> String {
    format!("{x:.8e}")
}

fn timing_comment() -> String {
    format!("# clock=monotonic resolution_ns={}\n", clock_resolution().as_nanos())
}

struct CsvOut {
    writer: csv::Writer<Vec<u8>>,
}

impl CsvOut {
    fn new(extra_comments: &str, header: &[&str]) -> Result<Self> {
        let mut prefix = format!("{SCHEMA_LINE}\n").into_bytes();
        prefix.extend_from_slice(extra_comments.as_bytes());
        let mut writer = csv::WriterBuilder::new().from_writer(prefix);
        writer.write_record(header)?;
        Ok(Self { writer })
    }

    fn row<I, T>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u8]>,
    {
        self.writer.write_record(fields)?;
        Ok(())
    }

    fn finish(self) -> Result<String> {
        let bytes = self.writer.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn map_points<P, R, F>(points: &[P], parallel: bool, f: F) -> Result<Vec<R>>
where
    P: Sync,
    R: Send,
    F: Fn(&P) -> Result<R> + Sync + Send,
{
    if parallel {
        points.par_iter().map(&f).collect()
    } else {
        points.iter().map(f).collect()
    }
}

/// `(path, k, i, j)` for every cell along the ordering.
pub fn cmd_dump_order(plan: &DumpPlan) -> Result<String> {
    let layout = build_layout(plan.spec)?;
    let mut out = CsvOut::new("", &DUMP_HEADER)?;
    for path in 0..layout.dims().volume() {
        let c = layout.coord_of(path);
        out.row([path.to_string(), c.k.to_string(), c.i.to_string(), c.j.to_string()])?;
    }
    out.finish()
}

/// One sparse histogram group per `(ordering, M, g)`, rows sorted by offset.
pub fn cmd_hist(plan: &HistPlan) -> Result<String> {
    let groups = map_points(&plan.points, plan.parallel, |(spec, stencil)| {
        let layout = build_layout(*spec)?;
        Ok(offset_histogram(&layout, *stencil)?)
    })?;
    let mut out = CsvOut::new("", &HIST_HEADER)?;
    for ((spec, stencil), hist) in plan.points.iter().zip(groups) {
        let (label, side, g) = (spec.to_string(), spec.dims().side().to_string(), stencil.half_width().to_string());
        for &(offset, count) in hist.bins() {
            out.row([label.as_str(), &side, &g, &offset.to_string(), &count.to_string()])?;
        }
    }
    out.finish()
}

/// Layouts are built once per ordering and shared across the points using it.
fn layouts_for(specs: impl Iterator<Item = OrderingSpec>) -> Result<Vec<LayoutMap>> {
    let mut unique: Vec<OrderingSpec> = Vec::new();
    for s in specs {
        if !unique.contains(&s) {
            unique.push(s);
        }
    }
    Ok(unique.into_iter().map(build_layout).collect::<std::result::Result<_, _>>()?)
}

pub fn cmd_cachesim(plan: &CachePlan) -> Result<String> {
    let layouts = layouts_for(plan.points.iter().map(|p| p.spec))?;
    let stats = map_points(&plan.points, plan.parallel, |p| {
        let layout = layouts.iter().find(|l| l.spec() == &p.spec).expect("layout built");
        let (centers, access) = match p.mode {
            CacheMode::Interior => (CenterSelection::Interior, AccessMode::Stencil),
            CacheMode::Border(a) => (CenterSelection::Border, a),
            CacheMode::Surface(s, a) => (CenterSelection::Surface(s), a),
        };
        Ok(simulate(layout, p.stencil, p.cache, centers, access)?)
    })?;
    let mut out = CsvOut::new("", &CACHESIM_HEADER)?;
    for (p, s) in plan.points.iter().zip(stats) {
        out.row([
            p.spec.to_string(),
            p.spec.dims().side().to_string(),
            p.stencil.half_width().to_string(),
            p.cache.line_items().to_string(),
            p.cache.lines().to_string(),
            p.mode.label().to_string(),
            p.mode.surface_label().to_string(),
            s.misses.to_string(),
            s.accesses.to_string(),
        ])?;
    }
    out.finish()
}

/// Runs serially: concurrent timing runs would disturb each other.
pub fn cmd_bench_stencil(plan: &StencilPlan) -> Result<String> {
    let mut out = CsvOut::new(&timing_comment(), &BENCH_STENCIL_HEADER)?;
    for (spec, rule) in &plan.points {
        let layout = build_layout(*spec)?;
        let t = bench_stencil(&layout, rule, plan.density, plan.seed, plan.iterations, plan.repeats)?;
        out.row([
            spec.to_string(),
            spec.dims().side().to_string(),
            rule.stencil.half_width().to_string(),
            plan.iterations.to_string(),
            sci(t.per_cell_update.mean),
            sci(t.per_cell_update.std_dev),
        ])?;
    }
    out.finish()
}

pub fn cmd_bench_pack(plan: &PackPlan) -> Result<String> {
    let mut out = CsvOut::new(&timing_comment(), &BENCH_PACK_HEADER)?;
    for &(spec, g) in &plan.points {
        let layout = build_layout(spec)?;
        let lists = build_surface_lists(&layout, g)?;
        let grid = init_grid(&layout, plan.density, plan.seed)?;
        for rec in bench_pack(&grid, &lists, plan.repeats)? {
            out.row([
                rec.ordering,
                rec.side.to_string(),
                rec.g.to_string(),
                rec.surface.to_string(),
                sci(rec.time.mean),
                sci(rec.time.std_dev),
            ])?;
        }
    }
    out.finish()
}

impl RunConfig {
    pub fn execute(&self) -> Result<String> {
        match self {
            RunConfig::DumpOrder(p) => cmd_dump_order(p),
            RunConfig::Hist(p) => cmd_hist(p),
            RunConfig::Cachesim(p) => cmd_cachesim(p),
            RunConfig::BenchStencil(p) => cmd_bench_stencil(p),
            RunConfig::BenchPack(p) => cmd_bench_pack(p),
        }
    }
}
