//! Criterion benchmarks for gpfact-core live in `benches/`.

/// Values of `k` swept by the counting benchmarks.
pub const COUNT_SIZES: [usize; 4] = [8, 32, 128, 512];

/// Values of `k` small enough for enumeration and brute force.
pub const ENUMERATION_SIZES: [usize; 3] = [4, 6, 8];
