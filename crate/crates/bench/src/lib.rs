//! Criterion benchmarks for `revsurf`. See `benches/`.
