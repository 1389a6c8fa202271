//! A 3D Hilbert ordering that runs from `(0,0,0)` to `(M-1,M-1,M-1)`.
//!
//! Below the top level the curve is the standard compact-Hilbert construction
//! (Gray-code order of the eight octants, with an entry corner and an exit
//! axis per sub-cube). A curve whose every sub-cube is entered and left at
//! opposite corners cannot exist for `m >= 2`: the second sub-cube would leave
//! at an outer corner of the cube with nowhere to go. So the top level uses its
//! own octant sequence, and each octant holds a standard sub-curve oriented to
//! chain into the next one.

use crate::error::{Error, Result};
use crate::geometry::{Coord3, Dims, PathIndex};

const DIM: u32 = 3;

/// Octants in visiting order at the top level. Bit 2 selects the upper half in
/// `k`, bit 1 in `i`, bit 0 in `j`.
const TOP_OCTANTS: [u8; 8] = [0b000, 0b001, 0b011, 0b010, 0b110, 0b100, 0b101, 0b111];

/// `(entry corner, exit axis)` of the standard sub-curve filling each top octant.
const TOP_STATES: [(u8, u32); 8] = [(0, 0), (0, 1), (0, 1), (3, 2), (3, 1), (3, 2), (6, 0), (5, 1)];

const fn top_position(octant: u8) -> u64 {
    let mut w = 0;
    while TOP_OCTANTS[w] != octant {
        w += 1;
    }
    w as u64
}

const TOP_POSITION: [u64; 8] = {
    let mut t = [0; 8];
    let mut o = 0;
    while o < 8 {
        t[o] = top_position(o as u8);
        o += 1;
    }
    t
};

#[inline]
fn rotl(x: u8, s: u32) -> u8 {
    let s = s % DIM;
    ((x << s) | (x >> (DIM - s))) & 0b111
}

#[inline]
fn rotr(x: u8, s: u32) -> u8 {
    let s = s % DIM;
    ((x >> s) | (x << (DIM - s))) & 0b111
}

#[inline]
fn gray(w: u8) -> u8 {
    w ^ (w >> 1)
}

#[inline]
fn gray_inverse(g: u8) -> u8 {
    g ^ (g >> 1) ^ (g >> 2)
}

/// Entry corner of the `w`-th child.
#[inline]
fn child_entry(w: u8) -> u8 {
    if w == 0 {
        0
    } else {
        gray(((w - 1) / 2) * 2)
    }
}

/// Exit-axis increment of the `w`-th child.
#[inline]
fn child_direction(w: u8) -> u32 {
    if w == 0 {
        0
    } else if w.is_multiple_of(2) {
        (w - 1).trailing_ones() % DIM
    } else {
        w.trailing_ones() % DIM
    }
}

#[inline]
fn descend(entry: u8, axis: u32, w: u8) -> (u8, u32) {
    (entry ^ rotl(child_entry(w), axis + 1), (axis + child_direction(w) + 1) % DIM)
}

#[inline]
fn octant_bits(c: Coord3, level: u32) -> u8 {
    ((((c.k >> level) & 1) << 2) | (((c.i >> level) & 1) << 1) | ((c.j >> level) & 1)) as u8
}

fn check(dims: Dims) -> Result<()> {
    if dims.exponent() < 2 {
        return Err(Error::UnsupportedOrdering(format!(
            "Hilbert ordering needs a side of at least 4, got {}",
            dims.side()
        )));
    }
    Ok(())
}

#[inline]
pub(crate) fn encode_unchecked(c: Coord3, m: u32) -> PathIndex {
    let top = octant_bits(c, m - 1);
    let w_top = TOP_POSITION[top as usize];
    let (mut entry, mut axis) = TOP_STATES[w_top as usize];
    let mut h = w_top;
    for level in (0..m - 1).rev() {
        let l = octant_bits(c, level);
        let w = gray_inverse(rotr(l ^ entry, axis + 1));
        (entry, axis) = descend(entry, axis, w);
        h = (h << DIM) | w as u64;
    }
    h
}

#[inline]
pub(crate) fn decode_unchecked(h: PathIndex, m: u32) -> Coord3 {
    let w_top = (h >> (DIM * (m - 1))) as usize;
    let top = TOP_OCTANTS[w_top] as u32;
    let (mut entry, mut axis) = TOP_STATES[w_top];
    let mut c = Coord3::new(
        ((top >> 2) & 1) << (m - 1),
        ((top >> 1) & 1) << (m - 1),
        (top & 1) << (m - 1),
    );
    for level in (0..m - 1).rev() {
        let w = ((h >> (DIM * level)) & 0b111) as u8;
        let l = (rotl(gray(w), axis + 1) ^ entry) as u32;
        c.k |= ((l >> 2) & 1) << level;
        c.i |= ((l >> 1) & 1) << level;
        c.j |= (l & 1) << level;
        (entry, axis) = descend(entry, axis, w);
    }
    c
}

pub fn hilbert_encode(c: Coord3, dims: Dims) -> Result<PathIndex> {
    check(dims)?;
    dims.check_coord(c)?;
    Ok(encode_unchecked(c, dims.exponent()))
}

pub fn hilbert_decode(l: PathIndex, dims: Dims) -> Result<Coord3> {
    check(dims)?;
    dims.check_index(l)?;
    Ok(decode_unchecked(l, dims.exponent()))
}
