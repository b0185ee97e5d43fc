//! Benchmarks for `f2orbit-core`; see `benches/core.rs`.
