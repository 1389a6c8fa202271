//! Analytical locality models: memory-offset histograms and an LRU cache simulator.

mod cache;
mod histogram;

pub use cache::{
    cache_model, simulate, surface_cache_model, AccessMode, CacheConfig, CacheStats, CenterSelection,
    LruCache, SurfaceFilter,
};
pub use histogram::{offset_histogram, offset_histogram_scoped, HistogramScope, OffsetHistogram};

use crate::error::{invalid, Result};
use crate::geometry::Dims;

/// A cubic stencil of side `2g + 1` centred on the cell being updated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StencilSpec {
    g: u32,
}

impl StencilSpec {
    pub fn new(g: u32) -> Result<Self> {
        if g == 0 {
            return invalid("stencil half-width must be at least 1");
        }
        Ok(Self { g })
    }

    /// Like [`StencilSpec::new`] but also requires the stencil to fit inside `dims`.
    pub fn for_dims(g: u32, dims: Dims) -> Result<Self> {
        let s = Self::new(g)?;
        s.check_fits(dims)?;
        Ok(s)
    }

    pub fn check_fits(&self, dims: Dims) -> Result<()> {
        if 2 * self.g as u64 >= dims.side() as u64 {
            return invalid(format!("stencil half-width {} too large for side {}", self.g, dims.side()));
        }
        Ok(())
    }

    #[inline]
    pub fn half_width(&self) -> u32 {
        self.g
    }

    /// Number of cells in the stencil, `(2g+1)^3`.
    pub fn volume(&self) -> u64 {
        let w = 2 * self.g as u64 + 1;
        w * w * w
    }

    /// `(dk, di, dj)` displacements in slab, row, column order, zero included.
    pub fn displacements(&self) -> Vec<(i64, i64, i64)> {
        let g = self.g as i64;
        let mut out = Vec::with_capacity(self.volume() as usize);
        for dk in -g..=g {
            for di in -g..=g {
                for dj in -g..=g {
                    out.push((dk, di, dj));
                }
            }
        }
        out
    }

    /// Row-major offsets `dk*M^2 + di*M + dj` of every stencil cell.
    pub fn row_major_offsets(&self, dims: Dims) -> Vec<i64> {
        let side = dims.side() as i64;
        self.displacements()
            .into_iter()
            .map(|(dk, di, dj)| dk * side * side + di * side + dj)
            .collect()
    }

    /// Number of interior centres, `(M - 2g)^3`.
    pub fn interior_count(&self, dims: Dims) -> u64 {
        let n = (dims.side() - 2 * self.g) as u64;
        n * n * n
    }
}
