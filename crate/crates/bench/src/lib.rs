//! Shared fixtures for the criterion benches.

use cubeorder_core::{build_layout, Dims, LayoutMap, OrderingSpec};

/// Row-major, full Morton and Hilbert over a cube of side `2^m`.
pub fn standard_orderings(m: u32) -> Vec<OrderingSpec> {
    let dims = Dims::new(m).expect("valid exponent");
    vec![
        OrderingSpec::row_major(dims),
        OrderingSpec::morton(dims, m - 1).expect("valid level"),
        OrderingSpec::hilbert(dims).expect("m >= 2"),
    ]
}

pub fn standard_layouts(m: u32) -> Vec<LayoutMap> {
    standard_orderings(m).into_iter().map(|s| build_layout(s).expect("layout fits")).collect()
}
