//! Shared fixtures for the criterion benchmark suite. The interesting code
//! lives in `benches/main.rs`; this crate exists so the workspace has a
//! dedicated home for benchmark assets.

pub use brwdec;
