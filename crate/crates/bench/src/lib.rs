//! Criterion benchmarks for `bredon-core`; see `benches/`.
