//! Precomputed bijections between path index and row-major offset.

use crate::error::{Error, Result};
use crate::geometry::{Coord3, Dims, PathIndex};
use crate::ordering::OrderingSpec;

/// Largest exponent for which the `u32` tables can address every cell.
pub const MAX_LAYOUT_EXPONENT: u32 = 10;

/// Both directions of an ordering, materialised once and then read-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutMap {
    spec: OrderingSpec,
    path_to_rmo: Vec<u32>,
    rmo_to_path: Vec<u32>,
}

fn alloc_table(len: usize) -> Result<Vec<u32>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len)
        .map_err(|e| Error::Resource(format!("cannot allocate a {len}-entry layout table: {e}")))?;
    v.resize(len, 0);
    Ok(v)
}

pub fn build_layout(spec: OrderingSpec) -> Result<LayoutMap> {
    let dims = spec.dims();
    if dims.exponent() > MAX_LAYOUT_EXPONENT {
        return Err(Error::Resource(format!(
            "layout tables support sides up to {}, got {}",
            1u32 << MAX_LAYOUT_EXPONENT,
            dims.side()
        )));
    }
    let n = dims.volume() as usize;
    let mut path_to_rmo = alloc_table(n)?;
    let mut rmo_to_path = alloc_table(n)?;
    for (path, slot) in path_to_rmo.iter_mut().enumerate() {
        let rmo = dims.row_major(spec.decode_unchecked(path as u64));
        *slot = rmo as u32;
        rmo_to_path[rmo as usize] = path as u32;
    }
    Ok(LayoutMap { spec, path_to_rmo, rmo_to_path })
}

impl LayoutMap {
    pub fn spec(&self) -> &OrderingSpec {
        &self.spec
    }

    pub fn dims(&self) -> Dims {
        self.spec.dims()
    }

    /// Row-major offsets indexed by path index.
    pub fn path_to_rmo(&self) -> &[u32] {
        &self.path_to_rmo
    }

    /// Path indices indexed by row-major offset.
    pub fn rmo_to_path(&self) -> &[u32] {
        &self.rmo_to_path
    }

    #[inline]
    pub fn path_of(&self, c: Coord3) -> PathIndex {
        self.rmo_to_path[self.dims().row_major(c) as usize] as u64
    }

    #[inline]
    pub fn coord_of(&self, path: PathIndex) -> Coord3 {
        self.dims().from_row_major(self.path_to_rmo[path as usize] as u64)
    }
}
