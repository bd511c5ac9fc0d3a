use serde::{Deserialize, Serialize};

use super::phase::backward_shift;
use super::{HDirection, IslEdge, IslMode, LinkKind};
use crate::constellation::{in_polar_region, propagate_all, ConstellationConfig, SatelliteId, SatelliteState};
use crate::division::{cell_clear_of_poles, csd_map, DivisionConfig, RegionBoundaries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    East,
    West,
}

/// How polar shut-off is applied to H-ISLs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShutoffRule {
    /// A whole row goes dark while any member's current cell reaches into a
    /// polar cap, so row state only changes at VN switches.
    RowCell,
    /// A whole row goes dark while any member is instantaneously polar.
    RowInstant,
    /// Each H-ISL goes dark while either endpoint is polar.
    PerSatellite,
}

/// H-ISL partner of `sat` on `side`, or `None` across the seam.
pub fn h_neighbor(config: &ConstellationConfig, sat: SatelliteId, side: Side, mode: IslMode) -> Option<SatelliteId> {
    let (n1, n2) = (config.planes, config.per_plane);
    let shift = |h: usize| match mode {
        IslMode::Conventional => 0,
        IslMode::Optimized => backward_shift(n1, config.phasing, h) % n2,
    };
    match side {
        Side::East if sat.plane < n1 => {
            let s = shift(sat.plane);
            Some(SatelliteId::new(sat.plane + 1, (sat.slot - 1 + n2 - s) % n2 + 1))
        }
        Side::West if sat.plane > 1 => {
            let s = shift(sat.plane - 1);
            Some(SatelliteId::new(sat.plane - 1, (sat.slot - 1 + s) % n2 + 1))
        }
        _ => None,
    }
}

/// Rows as chains of eastward H-ISLs starting from each slot of plane 1.
/// Returns the row index (0-based) of every satellite.
pub fn build_rows(config: &ConstellationConfig, mode: IslMode) -> Vec<usize> {
    let n2 = config.per_plane;
    let mut row_of = vec![usize::MAX; config.satellite_count()];
    for r in 0..n2 {
        let mut cur = Some(SatelliteId::new(1, r + 1));
        while let Some(sat) = cur {
            row_of[sat.index(n2)] = r;
            cur = h_neighbor(config, sat, Side::East, mode);
        }
    }
    row_of
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopologySnapshot {
    pub t: f64,
    pub mode: IslMode,
    pub edges: Vec<IslEdge>,
    #[serde(skip)]
    pub states: Vec<SatelliteState>,
}

impl TopologySnapshot {
    pub fn active_hisl_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.active && e.kind == LinkKind::Horizontal)
            .count()
    }

    pub fn active_edges(&self) -> impl Iterator<Item = &IslEdge> {
        self.edges.iter().filter(|e| e.active)
    }
}

/// Physical ISL set at time `t`: all V-ISLs (always on) followed by every
/// eastward H-ISL with its on/off state under `rule`.
pub fn snapshot_edges(
    config: &ConstellationConfig,
    mode: IslMode,
    division: &DivisionConfig,
    rule: ShutoffRule,
    t: f64,
) -> TopologySnapshot {
    let (n1, n2) = (config.planes, config.per_plane);
    let states = propagate_all(config, t);
    let polar: Vec<bool> = states
        .iter()
        .map(|s| in_polar_region(s.lat, config.polar_threshold))
        .collect();

    let row_blocked: Vec<bool> = match rule {
        ShutoffRule::PerSatellite => Vec::new(),
        ShutoffRule::RowCell | ShutoffRule::RowInstant => {
            let row_of = build_rows(config, mode);
            let mut blocked = vec![false; n2];
            for (i, s) in states.iter().enumerate() {
                let b = match rule {
                    ShutoffRule::RowCell => !cell_clear_of_poles(config, division, csd_map(s, config, division)),
                    _ => polar[i],
                };
                blocked[row_of[i]] |= b;
            }
            let mut per_sat = vec![false; states.len()];
            for (i, r) in row_of.iter().enumerate() {
                per_sat[i] = blocked[*r];
            }
            per_sat
        }
    };

    let mut edges = Vec::with_capacity(n1 * n2 * 2);
    for sat in config.satellites() {
        edges.push(IslEdge {
            a: sat,
            b: SatelliteId::new(sat.plane, sat.slot % n2 + 1),
            kind: LinkKind::Vertical,
            direction: HDirection::None,
            active: true,
        });
    }
    for sat in config.satellites() {
        let Some(nb) = h_neighbor(config, sat, Side::East, mode) else {
            continue;
        };
        let (ia, ib) = (sat.index(n2), nb.index(n2));
        let active = match rule {
            ShutoffRule::PerSatellite => !polar[ia] && !polar[ib],
            _ => !row_blocked[ia],
        };
        let direction = if nb.slot == sat.slot {
            HDirection::Forward
        } else {
            HDirection::Backward
        };
        edges.push(IslEdge {
            a: sat,
            b: nb,
            kind: LinkKind::Horizontal,
            direction,
            active,
        });
    }
    TopologySnapshot { t, mode, edges, states }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HislCount {
    pub hisl: usize,
    pub visl: usize,
}

impl HislCount {
    pub fn total(&self) -> usize {
        self.hisl + self.visl
    }
}

/// Closed-form link counts: `(n1-1)(vA + vC - vB + 1)` H-ISLs and
/// `n1·n2` V-ISLs.
pub fn hisl_count_analytic(n1: usize, n2: usize, b: &RegionBoundaries) -> HislCount {
    HislCount {
        hisl: (n1 - 1) * b.active_rows(),
        visl: n1 * n2,
    }
}
