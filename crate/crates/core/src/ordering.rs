//! Ordering specifications and the encode/decode dispatch over them.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::geometry::{Coord3, Dims, PathIndex};
use crate::{hilbert, morton};

/// Orderings usable inside or between the sub-cubes of a hybrid ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockOrder {
    RowMajor,
    /// Every bit interleaved; identical to Morton level `m - 1`.
    MortonFull,
    Hilbert,
}

impl BlockOrder {
    pub const ALL: [BlockOrder; 3] = [BlockOrder::RowMajor, BlockOrder::MortonFull, BlockOrder::Hilbert];

    fn min_exponent(self) -> u32 {
        match self {
            BlockOrder::Hilbert => 2,
            _ => 1,
        }
    }

    #[inline]
    fn encode(self, c: Coord3, m: u32) -> PathIndex {
        match self {
            BlockOrder::RowMajor => morton::encode_unchecked(c, m, 0),
            BlockOrder::MortonFull => morton::encode_unchecked(c, m, m - 1),
            BlockOrder::Hilbert => hilbert::encode_unchecked(c, m),
        }
    }

    #[inline]
    fn decode(self, l: PathIndex, m: u32) -> Coord3 {
        match self {
            BlockOrder::RowMajor => morton::decode_unchecked(l, m, 0),
            BlockOrder::MortonFull => morton::decode_unchecked(l, m, m - 1),
            BlockOrder::Hilbert => hilbert::decode_unchecked(l, m),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockOrder::RowMajor => "rowmajor",
            BlockOrder::MortonFull => "morton",
            BlockOrder::Hilbert => "hilbert",
        }
    }
}

impl FromStr for BlockOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rowmajor" => Ok(BlockOrder::RowMajor),
            "morton" => Ok(BlockOrder::MortonFull),
            "hilbert" => Ok(BlockOrder::Hilbert),
            other => invalid(format!("unknown block ordering '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    RowMajor,
    Morton { level: u32 },
    Hilbert,
    /// `inner` inside sub-cubes of side `2^block_exp`, `outer` between them.
    Hybrid { inner: BlockOrder, outer: BlockOrder, block_exp: u32 },
}

/// A validated ordering over a particular cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderingSpec {
    kind: OrderingKind,
    dims: Dims,
}

impl OrderingSpec {
    pub fn new(kind: OrderingKind, dims: Dims) -> Result<Self> {
        let m = dims.exponent();
        match kind {
            OrderingKind::RowMajor => {}
            OrderingKind::Morton { level } => {
                if level >= m.max(1) {
                    return invalid(format!("Morton level {level} outside [0, {m})"));
                }
            }
            OrderingKind::Hilbert => {
                if m < 2 {
                    return Err(Error::UnsupportedOrdering(format!(
                        "Hilbert ordering needs m >= 2, got m={m}"
                    )));
                }
            }
            OrderingKind::Hybrid { inner, outer, block_exp: t } => {
                if t == 0 || t >= m {
                    return invalid(format!("block exponent {t} outside (0, {m})"));
                }
                if t < inner.min_exponent() {
                    return invalid(format!("{} blocks need a block exponent of at least {}", inner.name(), inner.min_exponent()));
                }
                if m - t < outer.min_exponent() {
                    return invalid(format!(
                        "{} between blocks needs at least {} block levels, got {}",
                        outer.name(),
                        outer.min_exponent(),
                        m - t
                    ));
                }
            }
        }
        Ok(Self { kind, dims })
    }

    pub fn row_major(dims: Dims) -> Self {
        Self { kind: OrderingKind::RowMajor, dims }
    }

    pub fn morton(dims: Dims, level: u32) -> Result<Self> {
        Self::new(OrderingKind::Morton { level }, dims)
    }

    pub fn hilbert(dims: Dims) -> Result<Self> {
        Self::new(OrderingKind::Hilbert, dims)
    }

    pub fn hybrid(dims: Dims, inner: BlockOrder, outer: BlockOrder, block_exp: u32) -> Result<Self> {
        Self::new(OrderingKind::Hybrid { inner, outer, block_exp }, dims)
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn encode(&self, c: Coord3) -> Result<PathIndex> {
        self.dims.check_coord(c)?;
        Ok(self.encode_unchecked(c))
    }

    pub fn decode(&self, l: PathIndex) -> Result<Coord3> {
        self.dims.check_index(l)?;
        Ok(self.decode_unchecked(l))
    }

    #[inline]
    pub(crate) fn encode_unchecked(&self, c: Coord3) -> PathIndex {
        let m = self.dims.exponent();
        match self.kind {
            OrderingKind::RowMajor => self.dims.row_major(c),
            OrderingKind::Morton { level } => morton::encode_unchecked(c, m, level),
            OrderingKind::Hilbert => hilbert::encode_unchecked(c, m),
            OrderingKind::Hybrid { inner, outer, block_exp } => {
                hybrid_encode_unchecked(c, m, inner, outer, block_exp)
            }
        }
    }

    #[inline]
    pub(crate) fn decode_unchecked(&self, l: PathIndex) -> Coord3 {
        let m = self.dims.exponent();
        match self.kind {
            OrderingKind::RowMajor => self.dims.from_row_major(l),
            OrderingKind::Morton { level } => morton::decode_unchecked(l, m, level),
            OrderingKind::Hilbert => hilbert::decode_unchecked(l, m),
            OrderingKind::Hybrid { inner, outer, block_exp } => {
                hybrid_decode_unchecked(l, m, inner, outer, block_exp)
            }
        }
    }
}

/// Short label used in CSV output, e.g. `morton:r=3` or `hybrid:hilbert/rowmajor:t=2`.
impl fmt::Display for OrderingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OrderingKind::RowMajor => f.write_str("rowmajor"),
            OrderingKind::Morton { level } => write!(f, "morton:r={level}"),
            OrderingKind::Hilbert => f.write_str("hilbert"),
            OrderingKind::Hybrid { inner, outer, block_exp } => {
                write!(f, "hybrid:{}/{}:t={block_exp}", inner.name(), outer.name())
            }
        }
    }
}

#[inline]
fn hybrid_encode_unchecked(c: Coord3, m: u32, inner: BlockOrder, outer: BlockOrder, t: u32) -> PathIndex {
    let mask = (1u32 << t) - 1;
    let block = Coord3::new(c.k >> t, c.i >> t, c.j >> t);
    let local = Coord3::new(c.k & mask, c.i & mask, c.j & mask);
    (outer.encode(block, m - t) << (3 * t)) | inner.encode(local, t)
}

#[inline]
fn hybrid_decode_unchecked(l: PathIndex, m: u32, inner: BlockOrder, outer: BlockOrder, t: u32) -> Coord3 {
    let block = outer.decode(l >> (3 * t), m - t);
    let local = inner.decode(l & ((1u64 << (3 * t)) - 1), t);
    Coord3::new((block.k << t) | local.k, (block.i << t) | local.i, (block.j << t) | local.j)
}

fn require_hybrid(spec: &OrderingSpec) -> Result<(BlockOrder, BlockOrder, u32)> {
    match spec.kind {
        OrderingKind::Hybrid { inner, outer, block_exp } => Ok((inner, outer, block_exp)),
        _ => invalid(format!("{spec} is not a hybrid ordering")),
    }
}

/// Outer index of the containing block times `2^(3t)` plus the inner index within it.
pub fn hybrid_encode(c: Coord3, spec: &OrderingSpec) -> Result<PathIndex> {
    let (inner, outer, t) = require_hybrid(spec)?;
    spec.dims.check_coord(c)?;
    Ok(hybrid_encode_unchecked(c, spec.dims.exponent(), inner, outer, t))
}

pub fn hybrid_decode(l: PathIndex, spec: &OrderingSpec) -> Result<Coord3> {
    let (inner, outer, t) = require_hybrid(spec)?;
    spec.dims.check_index(l)?;
    Ok(hybrid_decode_unchecked(l, spec.dims.exponent(), inner, outer, t))
}

/// Every ordering the crate can build over `dims`: row-major, each Morton
/// level, Hilbert and every valid hybrid.
pub fn all_orderings(dims: Dims) -> Vec<OrderingSpec> {
    let m = dims.exponent();
    let mut out = vec![OrderingSpec::row_major(dims)];
    out.extend((1..m).filter_map(|r| OrderingSpec::morton(dims, r).ok()));
    out.extend(OrderingSpec::hilbert(dims).ok());
    for t in 1..m {
        for inner in BlockOrder::ALL {
            for outer in BlockOrder::ALL {
                out.extend(OrderingSpec::hybrid(dims, inner, outer, t).ok());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morton::morton_encode;

    #[test]
    fn blocked_morton_is_rowmajor_inside_morton_outside() {
        for m in 2..=4 {
            let d = Dims::new(m).unwrap();
            for r in 1..m {
                let hybrid = OrderingSpec::hybrid(d, BlockOrder::RowMajor, BlockOrder::MortonFull, m - r).unwrap();
                for l in 0..d.volume() {
                    let c = d.from_row_major(l);
                    assert_eq!(hybrid_encode(c, &hybrid).unwrap(), morton_encode(c, d, r).unwrap());
                }
            }
        }
    }

    #[test]
    fn every_ordering_is_a_permutation() {
        for m in 2..=4 {
            let d = Dims::new(m).unwrap();
            for spec in all_orderings(d) {
                let mut seen = vec![false; d.volume() as usize];
                for rmo in 0..d.volume() {
                    let c = d.from_row_major(rmo);
                    let l = spec.encode(c).unwrap();
                    assert!(!seen[l as usize], "{spec}: duplicate index {l}");
                    seen[l as usize] = true;
                    assert_eq!(spec.decode(l).unwrap(), c, "{spec}");
                }
            }
        }
    }

    #[test]
    fn hybrid_origin_and_labels() {
        let d = Dims::new(4).unwrap();
        let s = OrderingSpec::hybrid(d, BlockOrder::Hilbert, BlockOrder::RowMajor, 2).unwrap();
        assert_eq!(hybrid_encode(Coord3::default(), &s).unwrap(), 0);
        assert_eq!(s.to_string(), "hybrid:hilbert/rowmajor:t=2");
        assert_eq!(OrderingSpec::morton(d, 3).unwrap().to_string(), "morton:r=3");
    }

    #[test]
    fn invalid_specs() {
        let d = Dims::new(3).unwrap();
        assert!(OrderingSpec::morton(d, 3).is_err());
        assert!(OrderingSpec::hybrid(d, BlockOrder::RowMajor, BlockOrder::MortonFull, 0).is_err());
        assert!(OrderingSpec::hybrid(d, BlockOrder::RowMajor, BlockOrder::MortonFull, 3).is_err());
        assert!(OrderingSpec::hybrid(d, BlockOrder::Hilbert, BlockOrder::RowMajor, 1).is_err());
        assert!(OrderingSpec::hybrid(d, BlockOrder::RowMajor, BlockOrder::Hilbert, 2).is_err());
        assert!(OrderingSpec::hybrid(d, BlockOrder::Hilbert, BlockOrder::RowMajor, 2).is_ok());
        assert!(OrderingSpec::hilbert(Dims::new(1).unwrap()).is_err());
        assert!(hybrid_encode(Coord3::default(), &OrderingSpec::row_major(d)).is_err());
    }
}
