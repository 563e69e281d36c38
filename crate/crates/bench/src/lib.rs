//! Criterion benchmarks for `corebreak`; see `benches/algorithms.rs`.
