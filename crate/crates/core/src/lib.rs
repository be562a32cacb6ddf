//! Exact finite-level models of Hecke algebras of totally disconnected groups.

pub mod exact;
pub mod group;
pub mod hecke;
pub mod crossed;
pub mod laurent;
pub mod ktheory;
pub mod report;

/// Tool version, recorded in reports and cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
