//! Blocked Morton ordering at recursion level `r`.
//!
//! For a cube of side `2^m`, the level-`r` index places the interleaved upper
//! `r` bits of `(k, i, j)` in its top `3r` bits (k most significant within each
//! triple), followed by the low `m - r` bits of `k`, then of `i`, then of `j`.
//! Level 0 is plain row-major order; level `m - 1` splits the cube into
//! row-major 2x2x2 blocks, which is the same ordering as full interleaving.

use crate::dilate::{spread3, squeeze3};
use crate::error::{invalid, Result};
use crate::geometry::{Coord3, Dims, PathIndex};

fn check_level(dims: Dims, r: u32) -> Result<()> {
    let m = dims.exponent();
    if m == 0 && r == 0 || r < m {
        Ok(())
    } else {
        invalid(format!("Morton level {r} outside [0, {m})"))
    }
}

#[inline]
pub(crate) fn encode_unchecked(c: Coord3, m: u32, r: u32) -> PathIndex {
    let low = m - r;
    let mask = (1u64 << low) - 1;
    let (k, i, j) = (c.k as u64, c.i as u64, c.j as u64);
    let high = (spread3(k >> low) << 2) | (spread3(i >> low) << 1) | spread3(j >> low);
    (high << (3 * low)) | ((k & mask) << (2 * low)) | ((i & mask) << low) | (j & mask)
}

#[inline]
pub(crate) fn decode_unchecked(l: PathIndex, m: u32, r: u32) -> Coord3 {
    let low = m - r;
    let mask = (1u64 << low) - 1;
    let high = l >> (3 * low);
    let k = (squeeze3(high >> 2) << low) | ((l >> (2 * low)) & mask);
    let i = (squeeze3(high >> 1) << low) | ((l >> low) & mask);
    let j = (squeeze3(high) << low) | (l & mask);
    Coord3::new(k as u32, i as u32, j as u32)
}

/// Level-`r` Morton index of `c`.
pub fn morton_encode(c: Coord3, dims: Dims, r: u32) -> Result<PathIndex> {
    check_level(dims, r)?;
    dims.check_coord(c)?;
    Ok(encode_unchecked(c, dims.exponent(), r))
}

pub fn morton_decode(l: PathIndex, dims: Dims, r: u32) -> Result<Coord3> {
    check_level(dims, r)?;
    dims.check_index(l)?;
    Ok(decode_unchecked(l, dims.exponent(), r))
}

/// Cyclically rotates bits `lo..hi` of `x` right by one place.
#[inline]
fn rotate_field_right(x: u64, lo: u32, hi: u32) -> u64 {
    let width = hi - lo;
    let mask = (1u64 << width) - 1;
    let field = (x >> lo) & mask;
    let rotated = ((field >> 1) | (field << (width - 1))) & mask;
    (x & !(mask << lo)) | (rotated << lo)
}

/// Converts a level-`(r-1)` Morton index into the level-`r` index of the same cell.
///
/// With `n = m - r`, the top bit of each of the three low fields has to move
/// up next to the interleaved part. Two single-place right rotations do it:
/// first over bits `n..3n+2`, then over bits `2n..3n+2`.
pub fn morton_refine(l_prev: PathIndex, dims: Dims, r: u32) -> Result<PathIndex> {
    let m = dims.exponent();
    if r == 0 || r >= m {
        return invalid(format!("refinement level {r} outside [1, {m})"));
    }
    dims.check_index(l_prev)?;
    let n = m - r;
    let step = rotate_field_right(l_prev, n, 3 * n + 2);
    Ok(rotate_field_right(step, 2 * n, 3 * n + 2))
}
