//! Criterion benchmarks live in `benches/`; the timed acceptance run lives
//! in `tests/acceptance.rs`.
