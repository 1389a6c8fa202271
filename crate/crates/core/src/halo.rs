//! Depth-`g` surfaces of the cube and packing them into contiguous buffers.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{invalid, Error, Result};
use crate::geometry::{Coord3, Dims, PathIndex};
use crate::layout::LayoutMap;
use crate::ordering::OrderingSpec;
use crate::stencil::Grid;
use crate::timing::Summary;

/// One of the six face slabs. `Rc` faces are spanned by rows and columns
/// (fixed slab range), `Cs` by columns and slabs (fixed row range), `Sr` by
/// slabs and rows (fixed column range).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceId {
    RcFront,
    RcBack,
    CsFront,
    CsBack,
    SrFront,
    SrBack,
}

impl SurfaceId {
    pub const ALL: [SurfaceId; 6] = [
        SurfaceId::RcFront,
        SurfaceId::RcBack,
        SurfaceId::CsFront,
        SurfaceId::CsBack,
        SurfaceId::SrFront,
        SurfaceId::SrBack,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SurfaceId::RcFront => "rc-front",
            SurfaceId::RcBack => "rc-back",
            SurfaceId::CsFront => "cs-front",
            SurfaceId::CsBack => "cs-back",
            SurfaceId::SrFront => "sr-front",
            SurfaceId::SrBack => "sr-back",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn contains(self, c: Coord3, side: u32, g: u32) -> bool {
        let front = |x: u32| x < g;
        let back = |x: u32| x >= side - g;
        match self {
            SurfaceId::RcFront => front(c.k),
            SurfaceId::RcBack => back(c.k),
            SurfaceId::CsFront => front(c.i),
            SurfaceId::CsBack => back(c.i),
            SurfaceId::SrFront => front(c.j),
            SurfaceId::SrBack => back(c.j),
        }
    }
}

impl fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SurfaceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SurfaceId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown surface '{s}'")))
    }
}

/// Path indices of each surface's cells, in increasing path order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceIndexLists {
    ordering: OrderingSpec,
    g: u32,
    lists: [Vec<u32>; 6],
}

impl SurfaceIndexLists {
    pub fn ordering(&self) -> &OrderingSpec {
        &self.ordering
    }

    pub fn half_width(&self) -> u32 {
        self.g
    }

    pub fn get(&self, s: SurfaceId) -> &[u32] {
        &self.lists[s.index()]
    }

    /// Entries per list, `g * M^2`.
    pub fn surface_len(&self) -> usize {
        (self.g as usize) << (2 * self.ordering.dims().exponent())
    }

    fn check_grid(&self, grid: &Grid) -> Result<()> {
        if grid.ordering() != &self.ordering {
            return invalid(format!("surface lists built for {} but grid is {}", self.ordering, grid.ordering()));
        }
        Ok(())
    }
}

/// One sweep along the path, appending each cell to every surface containing it.
pub fn build_surface_lists(layout: &LayoutMap, g: u32) -> Result<SurfaceIndexLists> {
    let dims: Dims = layout.dims();
    if g == 0 || 2 * g as u64 >= dims.side() as u64 {
        return invalid(format!("halo width {g} invalid for side {}", dims.side()));
    }
    let side = dims.side();
    let len = (g as usize) << (2 * dims.exponent());
    let mut lists: [Vec<u32>; 6] = std::array::from_fn(|_| Vec::with_capacity(len));
    for (path, &rmo) in layout.path_to_rmo().iter().enumerate() {
        let c = dims.from_row_major(rmo as u64);
        for s in SurfaceId::ALL {
            if s.contains(c, side, g) {
                lists[s.index()].push(path as u32);
            }
        }
    }
    debug_assert!(lists.iter().all(|l| l.len() == len));
    Ok(SurfaceIndexLists { ordering: *layout.spec(), g, lists })
}

/// Values of one surface, in the surface list's order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaloBuffer {
    pub surface: SurfaceId,
    pub values: Vec<u8>,
}

/// Fills `out` with the surface's cells. `out` must hold exactly `g * M^2` values.
pub fn pack_into(grid: &Grid, lists: &SurfaceIndexLists, s: SurfaceId, out: &mut [u8]) -> Result<()> {
    lists.check_grid(grid)?;
    let idx = lists.get(s);
    if out.len() != idx.len() {
        return invalid(format!("buffer holds {} values, surface has {}", out.len(), idx.len()));
    }
    let cells = grid.cells();
    for (dst, &p) in out.iter_mut().zip(idx) {
        *dst = cells[p as usize];
    }
    Ok(())
}

pub fn pack_surface(grid: &Grid, lists: &SurfaceIndexLists, s: SurfaceId) -> Result<HaloBuffer> {
    let mut values = vec![0u8; lists.get(s).len()];
    pack_into(grid, lists, s, &mut values)?;
    Ok(HaloBuffer { surface: s, values })
}

/// Writes `buffer` back into the surface cells it was packed from.
pub fn unpack_surface(buffer: &HaloBuffer, lists: &SurfaceIndexLists, grid: &mut Grid) -> Result<()> {
    lists.check_grid(grid)?;
    let idx = lists.get(buffer.surface);
    if buffer.values.len() != idx.len() {
        return invalid(format!("buffer holds {} values, surface has {}", buffer.values.len(), idx.len()));
    }
    let cells = grid.cells_mut();
    for (&v, &p) in buffer.values.iter().zip(idx) {
        cells[p as usize] = v;
    }
    Ok(())
}

/// Coordinates of a surface's cells in buffer order.
pub fn surface_coords(layout: &LayoutMap, lists: &SurfaceIndexLists, s: SurfaceId) -> Vec<Coord3> {
    lists.get(s).iter().map(|&p| layout.coord_of(p as PathIndex)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackTiming {
    pub ordering: String,
    pub side: u32,
    pub g: u32,
    pub surface: SurfaceId,
    /// Seconds per pack.
    pub time: Summary,
}

/// Times `repeats` packs of each surface. List construction is not timed.
pub fn bench_pack(grid: &Grid, lists: &SurfaceIndexLists, repeats: u32) -> Result<Vec<PackTiming>> {
    if repeats == 0 {
        return invalid("repeats must be at least 1");
    }
    lists.check_grid(grid)?;
    let mut buf = vec![0u8; lists.surface_len()];
    let mut out = Vec::with_capacity(6);
    for s in SurfaceId::ALL {
        let mut samples = Vec::with_capacity(repeats as usize);
        for _ in 0..repeats {
            let start = Instant::now();
            pack_into(black_box(grid), lists, s, &mut buf)?;
            black_box(&buf);
            samples.push(start.elapsed().as_secs_f64());
        }
        out.push(PackTiming {
            ordering: lists.ordering().to_string(),
            side: grid.dims().side(),
            g: lists.half_width(),
            surface: s,
            time: Summary::from_samples(&samples),
        });
    }
    Ok(out)
}
