//! Criterion benchmarks for `fcc-core` live in `benches/`.
