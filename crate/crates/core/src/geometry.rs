//! Cube dimensions and cell coordinates.

use std::fmt;

use crate::error::{invalid, Result};

/// Largest supported exponent: 3m index bits must fit in a `u64` with room to spare.
pub const MAX_EXPONENT: u32 = 20;

/// Position along an ordering's path through the cube, in items.
pub type PathIndex = u64;

/// Side length of an `M x M x M` cube with `M = 2^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    m: u32,
}

impl Dims {
    pub fn new(m: u32) -> Result<Self> {
        if m > MAX_EXPONENT {
            return invalid(format!("exponent m={m} exceeds the supported maximum {MAX_EXPONENT}"));
        }
        Ok(Self { m })
    }

    /// Smallest `Dims` whose side is `side`, which must be a power of two.
    pub fn from_side(side: u32) -> Result<Self> {
        if !side.is_power_of_two() {
            return invalid(format!("side {side} is not a power of two"));
        }
        Self::new(side.trailing_zeros())
    }

    #[inline]
    pub fn exponent(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn side(&self) -> u32 {
        1 << self.m
    }

    /// Total number of cells, `M^3`.
    #[inline]
    pub fn volume(&self) -> u64 {
        1u64 << (3 * self.m)
    }

    #[inline]
    pub fn contains(&self, c: Coord3) -> bool {
        let side = self.side();
        c.k < side && c.i < side && c.j < side
    }

    pub fn check_coord(&self, c: Coord3) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            invalid(format!("coordinate {c} outside a cube of side {}", self.side()))
        }
    }

    pub fn check_index(&self, l: PathIndex) -> Result<()> {
        if l < self.volume() {
            Ok(())
        } else {
            invalid(format!("index {l} outside [0, {})", self.volume()))
        }
    }

    /// Row-major offset `k*M^2 + i*M + j`.
    #[inline]
    pub fn row_major(&self, c: Coord3) -> u64 {
        ((c.k as u64) << (2 * self.m)) | ((c.i as u64) << self.m) | c.j as u64
    }

    #[inline]
    pub fn from_row_major(&self, rmo: u64) -> Coord3 {
        let mask = (1u64 << self.m) - 1;
        Coord3 {
            k: (rmo >> (2 * self.m)) as u32,
            i: ((rmo >> self.m) & mask) as u32,
            j: (rmo & mask) as u32,
        }
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.side();
        write!(f, "{s}x{s}x{s}")
    }
}

/// A cell location: slab `k`, row `i`, column `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coord3 {
    pub k: u32,
    pub i: u32,
    pub j: u32,
}

impl Coord3 {
    pub const fn new(k: u32, i: u32, j: u32) -> Self {
        Self { k, i, j }
    }

    pub fn manhattan(&self, other: &Coord3) -> u32 {
        self.k.abs_diff(other.k) + self.i.abs_diff(other.i) + self.j.abs_diff(other.j)
    }

    /// True when the cell lies within `g` of any face of a cube of side `side`.
    #[inline]
    pub fn in_border(&self, side: u32, g: u32) -> bool {
        let hi = side - g;
        self.k < g || self.i < g || self.j < g || self.k >= hi || self.i >= hi || self.j >= hi
    }
}

impl fmt::Display for Coord3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.i, self.j)
    }
}
