use std::collections::HashMap;

use super::StencilSpec;
use crate::error::Result;
use crate::geometry::Coord3;
use crate::layout::LayoutMap;

/// Which neighbour accesses contribute to a histogram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HistogramScope {
    /// Every stencil cell of every interior centre.
    #[default]
    AllNeighbors,
    /// Only neighbours that are themselves interior centres. Each such pair is
    /// seen from both ends, so this sub-histogram is symmetric in the offset.
    InteriorPairs,
}

/// Access counts keyed by signed path-index offset, sorted by offset.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OffsetHistogram {
    bins: Vec<(i64, u64)>,
}

impl OffsetHistogram {
    pub fn bins(&self) -> &[(i64, u64)] {
        &self.bins
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn count(&self, offset: i64) -> u64 {
        self.bins
            .binary_search_by_key(&offset, |&(x, _)| x)
            .map(|idx| self.bins[idx].1)
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().map(|&(_, n)| n).sum()
    }
}

/// Histogram of `p(neighbour) - p(centre)` over all interior centres.
pub fn offset_histogram(layout: &LayoutMap, stencil: StencilSpec) -> Result<OffsetHistogram> {
    offset_histogram_scoped(layout, stencil, HistogramScope::AllNeighbors)
}

pub fn offset_histogram_scoped(
    layout: &LayoutMap,
    stencil: StencilSpec,
    scope: HistogramScope,
) -> Result<OffsetHistogram> {
    let dims = layout.dims();
    stencil.check_fits(dims)?;
    let side = dims.side();
    let g = stencil.half_width();
    let displacements = stencil.displacements();
    let rmo_offsets = stencil.row_major_offsets(dims);
    let rmo_to_path = layout.rmo_to_path();

    let mut counts: HashMap<i64, u64> = HashMap::new();
    for k in g..side - g {
        for i in g..side - g {
            for j in g..side - g {
                let centre = Coord3::new(k, i, j);
                let rmo = dims.row_major(centre) as i64;
                let p_centre = rmo_to_path[rmo as usize] as i64;
                for (&(dk, di, dj), &off) in displacements.iter().zip(&rmo_offsets) {
                    if scope == HistogramScope::InteriorPairs {
                        let n = Coord3::new(
                            (k as i64 + dk) as u32,
                            (i as i64 + di) as u32,
                            (j as i64 + dj) as u32,
                        );
                        if n.in_border(side, g) {
                            continue;
                        }
                    }
                    let p_neighbor = rmo_to_path[(rmo + off) as usize] as i64;
                    *counts.entry(p_neighbor - p_centre).or_default() += 1;
                }
            }
        }
    }
    let mut bins: Vec<(i64, u64)> = counts.into_iter().collect();
    bins.sort_unstable();
    Ok(OffsetHistogram { bins })
}
