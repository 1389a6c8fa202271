//! Generalised 3D Game of Life whose sweep follows the active layout's path.
//!
//! Updates are synchronous (double buffered) and the border of width `g` is
//! frozen, so the result never depends on which ordering stores the cells.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::geometry::{Coord3, Dims};
use crate::layout::LayoutMap;
use crate::locality::StencilSpec;
use crate::ordering::OrderingSpec;
use crate::timing::Summary;

/// Live-neighbour thresholds (inclusive) for survival and birth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSpec {
    pub stencil: StencilSpec,
    pub survive_lo: u32,
    pub survive_hi: u32,
    pub born_lo: u32,
    pub born_hi: u32,
}

impl RuleSpec {
    pub fn new(g: u32, survive: (u32, u32), born: (u32, u32)) -> Result<Self> {
        let stencil = StencilSpec::new(g)?;
        let max = stencil.volume() as u32 - 1;
        for (name, (lo, hi)) in [("survive", survive), ("born", born)] {
            if lo > hi || hi > max {
                return invalid(format!("{name} interval [{lo}, {hi}] must satisfy lo <= hi <= {max}"));
            }
        }
        Ok(Self { stencil, survive_lo: survive.0, survive_hi: survive.1, born_lo: born.0, born_hi: born.1 })
    }

    /// Classic 23/3 at `g = 1`; above that the thresholds scale with the
    /// neighbourhood size `V = (2g+1)^3 - 1`.
    pub fn default_for(g: u32) -> Result<Self> {
        if g == 1 {
            return Self::new(1, (2, 3), (3, 3));
        }
        let v = (StencilSpec::new(g)?.volume() - 1) as f64;
        let f = |x: f64| (x * v).floor() as u32;
        Self::new(g, (f(0.08), f(0.12)), (f(0.11), f(0.11)))
    }

    #[inline]
    pub fn next_state(&self, alive: bool, live_neighbors: u32) -> bool {
        if alive {
            (self.survive_lo..=self.survive_hi).contains(&live_neighbors)
        } else {
            (self.born_lo..=self.born_hi).contains(&live_neighbors)
        }
    }
}

/// Cell states stored in the path order of one layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    ordering: OrderingSpec,
    cells: Vec<u8>,
    generation: u64,
}

impl Grid {
    pub fn dims(&self) -> Dims {
        self.ordering.dims()
    }

    pub fn ordering(&self) -> &OrderingSpec {
        &self.ordering
    }

    /// States indexed by path index.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub(crate) fn cells_mut(&mut self) -> &mut [u8] {
        &mut self.cells
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn state_at(&self, layout: &LayoutMap, c: Coord3) -> bool {
        self.cells[layout.path_of(c) as usize] != 0
    }

    pub fn live_count(&self) -> usize {
        self.cells.iter().filter(|&&s| s != 0).count()
    }

    /// States re-indexed by row-major offset, for layout-independent comparison.
    pub fn to_row_major(&self, layout: &LayoutMap) -> Vec<u8> {
        layout.rmo_to_path().iter().map(|&p| self.cells[p as usize]).collect()
    }

    pub(crate) fn check_layout(&self, layout: &LayoutMap) -> Result<()> {
        if layout.spec() != &self.ordering {
            return invalid(format!("grid stored as {} but layout is {}", self.ordering, layout.spec()));
        }
        Ok(())
    }
}

/// Builds a grid from states given in row-major order.
pub fn grid_from_row_major(layout: &LayoutMap, states: &[u8]) -> Result<Grid> {
    let dims = layout.dims();
    if states.len() as u64 != dims.volume() {
        return invalid(format!("expected {} states, got {}", dims.volume(), states.len()));
    }
    let cells = layout.path_to_rmo().iter().map(|&rmo| states[rmo as usize]).collect();
    Ok(Grid { ordering: *layout.spec(), cells, generation: 0 })
}

/// Seeded random fill. The random stream is consumed in row-major order, so
/// the state of each `(k,i,j)` is the same whatever the layout.
pub fn init_grid(layout: &LayoutMap, density: f64, seed: u64) -> Result<Grid> {
    if !(0.0..=1.0).contains(&density) {
        return invalid(format!("density {density} outside [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<u8> = (0..layout.dims().volume()).map(|_| rng.gen_bool(density) as u8).collect();
    grid_from_row_major(layout, &states)
}

fn step_into(src: &Grid, dst: &mut Grid, layout: &LayoutMap, rule: &RuleSpec, neighbor_offsets: &[i64]) {
    let dims = layout.dims();
    let side = dims.side();
    let g = rule.stencil.half_width();
    let rmo_to_path = layout.rmo_to_path();
    let input = &src.cells;
    for (path, &irmo) in layout.path_to_rmo().iter().enumerate() {
        let here = input[path];
        let centre = dims.from_row_major(irmo as u64);
        dst.cells[path] = if centre.in_border(side, g) {
            here
        } else {
            let irmo = irmo as i64;
            let live: u32 = neighbor_offsets
                .iter()
                .map(|&off| input[rmo_to_path[(irmo + off) as usize] as usize] as u32)
                .sum();
            rule.next_state(here != 0, live) as u8
        };
    }
    dst.generation = src.generation + 1;
}

fn neighbor_offsets(rule: &RuleSpec, dims: Dims) -> Vec<i64> {
    rule.stencil.row_major_offsets(dims).into_iter().filter(|&o| o != 0).collect()
}

/// One synchronous generation.
pub fn step(grid: &Grid, layout: &LayoutMap, rule: &RuleSpec) -> Result<Grid> {
    grid.check_layout(layout)?;
    rule.stencil.check_fits(layout.dims())?;
    let mut next = grid.clone();
    step_into(grid, &mut next, layout, rule, &neighbor_offsets(rule, layout.dims()));
    Ok(next)
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub grid: Grid,
    pub elapsed: Duration,
    /// Seconds per interior cell update.
    pub per_cell_update: f64,
}

/// Advances `iterations` generations under a monotonic clock.
pub fn run(grid: Grid, layout: &LayoutMap, rule: &RuleSpec, iterations: u32) -> Result<RunResult> {
    if iterations == 0 {
        return invalid("iterations must be at least 1");
    }
    grid.check_layout(layout)?;
    let dims = layout.dims();
    rule.stencil.check_fits(dims)?;
    let offsets = neighbor_offsets(rule, dims);
    let mut cur = grid;
    let mut next = cur.clone();

    let start = Instant::now();
    for _ in 0..iterations {
        step_into(&cur, &mut next, layout, rule, &offsets);
        std::mem::swap(&mut cur, &mut next);
    }
    let elapsed = start.elapsed();

    let updates = iterations as f64 * rule.stencil.interior_count(dims) as f64;
    Ok(RunResult { grid: cur, elapsed, per_cell_update: elapsed.as_secs_f64() / updates })
}

/// Time per cell update over `repeats` independent runs from the same seed.
#[derive(Debug, Clone)]
pub struct StencilTiming {
    pub per_cell_update: Summary,
    pub final_grid: Grid,
}

pub fn bench_stencil(
    layout: &LayoutMap,
    rule: &RuleSpec,
    density: f64,
    seed: u64,
    iterations: u32,
    repeats: u32,
) -> Result<StencilTiming> {
    if repeats == 0 {
        return invalid("repeats must be at least 1");
    }
    let initial = init_grid(layout, density, seed)?;
    let mut samples = Vec::with_capacity(repeats as usize);
    let mut final_grid = None;
    for _ in 0..repeats {
        let result = run(initial.clone(), layout, rule, iterations)?;
        samples.push(result.per_cell_update);
        final_grid = Some(result.grid);
    }
    Ok(StencilTiming {
        per_cell_update: Summary::from_samples(&samples),
        final_grid: final_grid.expect("at least one repeat"),
    })
}
