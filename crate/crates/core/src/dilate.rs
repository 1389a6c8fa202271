//! Dilated integers: bit `b` of the input moves to bit `3b` of the output.

use crate::error::{invalid, Result};

/// Widest input that still dilates into a `u64`.
pub const MAX_DILATE_WIDTH: u32 = 21;

const MASK_21: u64 = 0x1f_ffff;

#[inline]
pub(crate) fn spread3(x: u64) -> u64 {
    let mut x = x & MASK_21;
    x = (x | (x << 32)) & 0x001f_0000_0000_ffff;
    x = (x | (x << 16)) & 0x001f_0000_ff00_00ff;
    x = (x | (x << 8)) & 0x100f_00f0_0f00_f00f;
    x = (x | (x << 4)) & 0x10c3_0c30_c30c_30c3;
    x = (x | (x << 2)) & 0x1249_2492_4924_9249;
    x
}

#[inline]
pub(crate) fn squeeze3(x: u64) -> u64 {
    let mut x = x & 0x1249_2492_4924_9249;
    x = (x | (x >> 2)) & 0x10c3_0c30_c30c_30c3;
    x = (x | (x >> 4)) & 0x100f_00f0_0f00_f00f;
    x = (x | (x >> 8)) & 0x001f_0000_ff00_00ff;
    x = (x | (x >> 16)) & 0x001f_0000_0000_ffff;
    x = (x | (x >> 32)) & MASK_21;
    x
}

fn check(x: u64, width: u32) -> Result<()> {
    if width > MAX_DILATE_WIDTH {
        return invalid(format!("dilation width {width} exceeds {MAX_DILATE_WIDTH} bits"));
    }
    if width < 64 && x >> width != 0 {
        return invalid(format!("{x} does not fit in {width} bits"));
    }
    Ok(())
}

/// Spreads the low `width` bits of `x` three apart.
pub fn dilate3(x: u64, width: u32) -> Result<u64> {
    check(x, width)?;
    Ok(spread3(x))
}

/// Inverse of [`dilate3`]: gathers every third bit of `x` starting at bit 0.
pub fn compact3(x: u64, width: u32) -> Result<u64> {
    if width > MAX_DILATE_WIDTH {
        return invalid(format!("dilation width {width} exceeds {MAX_DILATE_WIDTH} bits"));
    }
    let out = squeeze3(x);
    if spread3(out) != x || (width < 64 && out >> width != 0) {
        return invalid(format!("{x:#x} is not a dilated {width}-bit integer"));
    }
    Ok(out)
}
