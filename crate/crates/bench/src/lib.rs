//! Criterion benchmarks for `qgw-core` live under `benches/`.
