//! Benchmark-only crate; see `benches/backends.rs`.
