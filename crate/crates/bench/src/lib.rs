//! Criterion benchmarks for the solver crate live in `benches/`.
