//! Criterion benchmarks for the solvers and the oracle; see `benches/`.
