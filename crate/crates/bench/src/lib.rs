//! Criterion benchmarks for `ferrers-core`; see `benches/`.
