use super::StencilSpec;
use crate::error::{invalid, Result};
use crate::geometry::{Coord3, Dims};
use crate::halo::SurfaceId;
use crate::layout::LayoutMap;

/// `b` items per line, `c` lines held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CacheConfig {
    line_items: u64,
    lines: u64,
}

impl CacheConfig {
    pub fn new(line_items: u64, lines: u64) -> Result<Self> {
        if line_items == 0 || lines == 0 {
            return invalid(format!("cache needs b >= 1 and c >= 1, got b={line_items} c={lines}"));
        }
        Ok(Self { line_items, lines })
    }

    pub fn line_items(&self) -> u64 {
        self.line_items
    }

    pub fn lines(&self) -> u64 {
        self.lines
    }

    pub fn check_fits(&self, dims: Dims) -> Result<()> {
        if !dims.volume().is_multiple_of(self.line_items) {
            return invalid(format!("line size {} does not divide {} cells", self.line_items, dims.volume()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CacheStats {
    pub misses: u64,
    pub accesses: u64,
}

const NIL: u32 = u32::MAX;

/// Fully associative LRU set over line ids `0..num_lines`.
///
/// Residency is an intrusive doubly linked list threaded through per-line
/// arrays, so every probe is O(1).
#[derive(Debug, Clone)]
pub struct LruCache {
    capacity: u64,
    len: u64,
    prev: Vec<u32>,
    next: Vec<u32>,
    resident: Vec<bool>,
    /// Most recently used.
    head: u32,
    /// Least recently used.
    tail: u32,
}

impl LruCache {
    pub fn new(num_lines: usize, capacity: u64) -> Self {
        assert!(num_lines < NIL as usize, "too many cache lines");
        Self {
            capacity: capacity.max(1),
            len: 0,
            prev: vec![NIL; num_lines],
            next: vec![NIL; num_lines],
            resident: vec![false; num_lines],
            head: NIL,
            tail: NIL,
        }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn unlink(&mut self, line: u32) {
        let (p, n) = (self.prev[line as usize], self.next[line as usize]);
        if p == NIL {
            self.head = n;
        } else {
            self.next[p as usize] = n;
        }
        if n == NIL {
            self.tail = p;
        } else {
            self.prev[n as usize] = p;
        }
    }

    fn push_front(&mut self, line: u32) {
        self.prev[line as usize] = NIL;
        self.next[line as usize] = self.head;
        if self.head != NIL {
            self.prev[self.head as usize] = line;
        }
        self.head = line;
        if self.tail == NIL {
            self.tail = line;
        }
    }

    /// Touches `line`; returns `true` on a hit. A miss loads the line,
    /// evicting the least recently used one when full.
    #[inline]
    pub fn access(&mut self, line: u32) -> bool {
        if self.resident[line as usize] {
            if self.head != line {
                self.unlink(line);
                self.push_front(line);
            }
            return true;
        }
        if self.len == self.capacity {
            let victim = self.tail;
            self.unlink(victim);
            self.resident[victim as usize] = false;
            self.len -= 1;
        }
        self.push_front(line);
        self.resident[line as usize] = true;
        self.len += 1;
        false
    }
}

/// Which update centres a simulation visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterSelection {
    /// Centres at least `g` from every face.
    Interior,
    /// Centres within `g` of some face.
    Border,
    /// Centres in one depth-`g` surface.
    Surface(SurfaceId),
}

impl CenterSelection {
    #[inline]
    fn admits(&self, c: Coord3, side: u32, g: u32) -> bool {
        match self {
            CenterSelection::Interior => !c.in_border(side, g),
            CenterSelection::Border => c.in_border(side, g),
            CenterSelection::Surface(s) => s.contains(c, side, g),
        }
    }
}

/// Border-centre filter for [`surface_cache_model`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceFilter {
    AllBorder,
    Surface(SurfaceId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AccessMode {
    /// Read the whole stencil around each centre.
    #[default]
    Stencil,
    /// Read only the centre item, as a buffer pack does.
    CenterOnly,
}

/// Walks centres in path order and counts LRU misses on the lines they read.
///
/// Stencil cells that fall outside the cube (only possible for border
/// centres) wrap around periodically, so every centre reads `(2g+1)^3` items.
pub fn simulate(
    layout: &LayoutMap,
    stencil: StencilSpec,
    cache: CacheConfig,
    centers: CenterSelection,
    mode: AccessMode,
) -> Result<CacheStats> {
    let dims = layout.dims();
    stencil.check_fits(dims)?;
    cache.check_fits(dims)?;
    let side = dims.side();
    let g = stencil.half_width();
    let b = cache.line_items();
    let num_lines = (dims.volume() / b) as usize;
    let mut lru = LruCache::new(num_lines, cache.lines());

    let displacements = match mode {
        AccessMode::Stencil => stencil.displacements(),
        AccessMode::CenterOnly => vec![(0, 0, 0)],
    };
    let rmo_offsets: Vec<i64> = match mode {
        AccessMode::Stencil => stencil.row_major_offsets(dims),
        AccessMode::CenterOnly => vec![0],
    };
    let path_to_rmo = layout.path_to_rmo();
    let rmo_to_path = layout.rmo_to_path();
    let wrap = |x: i64| x.rem_euclid(side as i64) as u32;

    let mut stats = CacheStats::default();
    for &irmo in path_to_rmo {
        let centre = dims.from_row_major(irmo as u64);
        if !centers.admits(centre, side, g) {
            continue;
        }
        let interior = !centre.in_border(side, g);
        for (&(dk, di, dj), &soff) in displacements.iter().zip(&rmo_offsets) {
            let jrmo = if interior {
                (irmo as i64 + soff) as u64
            } else {
                dims.row_major(Coord3::new(
                    wrap(centre.k as i64 + dk),
                    wrap(centre.i as i64 + di),
                    wrap(centre.j as i64 + dj),
                ))
            };
            let jpath = rmo_to_path[jrmo as usize] as u64;
            stats.accesses += 1;
            if !lru.access((jpath / b) as u32) {
                stats.misses += 1;
            }
        }
    }
    Ok(stats)
}

/// Misses for a full-stencil sweep over the interior centres.
pub fn cache_model(layout: &LayoutMap, stencil: StencilSpec, cache: CacheConfig) -> Result<CacheStats> {
    simulate(layout, stencil, cache, CenterSelection::Interior, AccessMode::Stencil)
}

/// The same sweep restricted to border centres, optionally to one surface.
pub fn surface_cache_model(
    layout: &LayoutMap,
    stencil: StencilSpec,
    cache: CacheConfig,
    filter: SurfaceFilter,
    mode: AccessMode,
) -> Result<CacheStats> {
    let centers = match filter {
        SurfaceFilter::AllBorder => CenterSelection::Border,
        SurfaceFilter::Surface(s) => CenterSelection::Surface(s),
    };
    simulate(layout, stencil, cache, centers, mode)
}
