//! Physical inter-satellite links.
//!
//! Every satellite keeps two V-ISLs to its in-plane neighbours and up to
//! two H-ISLs to adjacent planes. No H-ISL crosses the seam between plane
//! `n1` and plane 1. In the optimized connecting mode some plane
//! boundaries link backwards (BH-ISL) to keep the phase spread inside a
//! row small.

mod bruteforce;
mod phase;
mod snapshot;

use serde::{Deserialize, Serialize};

pub use bruteforce::{theorem1_bruteforce, BruteForceOptimum, BRUTE_FORCE_MAX_PLANES};
pub use phase::{backward_shift, bh_isl_planes, phase_analysis, PhaseAnalysis};
pub use snapshot::{
    build_rows, h_neighbor, hisl_count_analytic, snapshot_edges, HislCount, ShutoffRule, Side, TopologySnapshot,
};

use crate::constellation::SatelliteId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IslMode {
    Conventional,
    Optimized,
}

impl IslMode {
    pub const ALL: [IslMode; 2] = [IslMode::Conventional, IslMode::Optimized];

    pub fn as_str(self) -> &'static str {
        match self {
            IslMode::Conventional => "conventional",
            IslMode::Optimized => "optimized",
        }
    }
}

impl std::str::FromStr for IslMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "conventional" => Ok(IslMode::Conventional),
            "optimized" => Ok(IslMode::Optimized),
            other => Err(crate::Error::Parse(format!("unknown ISL mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LinkKind {
    /// Intra-plane.
    Vertical,
    /// Inter-plane.
    Horizontal,
}

impl LinkKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LinkKind::Vertical => "V_ISL",
            LinkKind::Horizontal => "H_ISL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HDirection {
    Forward,
    Backward,
    None,
}

impl HDirection {
    pub fn as_str(self) -> &'static str {
        match self {
            HDirection::Forward => "FH",
            HDirection::Backward => "BH",
            HDirection::None => "NONE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IslEdge {
    pub a: SatelliteId,
    pub b: SatelliteId,
    pub kind: LinkKind,
    pub direction: HDirection,
    pub active: bool,
}
