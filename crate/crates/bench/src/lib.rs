//! Bench-only package; see `benches/solvers.rs`.
