//! Virtual-node topology models for polar (Walker-star) LEO constellations.
//!
//! The crate propagates a constellation, divides the celestial sphere into
//! virtual nodes, builds physical ISL snapshots under conventional and
//! optimized inter-plane connecting modes, and measures how static the
//! resulting virtual network is alongside throughput and latency.

pub mod analysis;
pub mod angle;
pub mod config;
pub mod constellation;
pub mod division;
pub mod error;
pub mod graph;
pub mod grd;
pub mod isl;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
