//! Space-filling-curve data layouts for `M x M x M` cubes and the tools used
//! to study their locality: Morton, Hilbert and hybrid orderings, memory-offset
//! histograms, an LRU cache model, a 3D Game-of-Life stencil kernel and
//! halo-surface packing.

pub mod dilate;
pub mod error;
pub mod geometry;
pub mod halo;
pub mod hilbert;
pub mod layout;
pub mod locality;
pub mod morton;
pub mod ordering;
pub mod stencil;
pub mod timing;

pub use dilate::{compact3, dilate3};
pub use error::{Error, Result};
pub use geometry::{Coord3, Dims, PathIndex};
pub use halo::{
    bench_pack, build_surface_lists, pack_into, pack_surface, surface_coords, unpack_surface, HaloBuffer,
    PackTiming, SurfaceId, SurfaceIndexLists,
};
pub use hilbert::{hilbert_decode, hilbert_encode};
pub use layout::{build_layout, LayoutMap};
pub use locality::{
    cache_model, offset_histogram, offset_histogram_scoped, simulate, surface_cache_model, AccessMode,
    CacheConfig, CacheStats, CenterSelection, HistogramScope, OffsetHistogram, StencilSpec, SurfaceFilter,
};
pub use morton::{morton_decode, morton_encode, morton_refine};
pub use ordering::{all_orderings, hybrid_decode, hybrid_encode, BlockOrder, OrderingKind, OrderingSpec};
pub use stencil::{bench_stencil, grid_from_row_major, init_grid, run, step, Grid, RuleSpec, RunResult, StencilTiming};
pub use timing::Summary;
