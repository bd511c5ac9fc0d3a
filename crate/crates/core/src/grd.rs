//! Geographic (Earth-fixed) virtual nodes, the baseline the celestial
//! division is compared against.
//!
//! The ground grid is the footprint of the celestial cells frozen at
//! `t = 0`: cell `(v, h)` is centred on the sub-point of the satellite
//! that held address `(v, h)` at epoch. Afterwards the grid turns with
//! the Earth while the orbit planes stay put.
//!
//! * [`GrdVariant::IntraOnly`]: column `h` is only ever served by plane
//!   `h`; the in-plane successor takes over each `T/n2`. When Earth
//!   rotation carries a cell out of view the address has no server.
//! * [`GrdVariant::InterPlane`]: each cell is served by whichever
//!   satellite sees its centre at the highest elevation.

use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::constellation::{
    elevation_angle, propagate_all, ConstellationConfig, GeoPoint, SatelliteState, EARTH_ROTATION_RATE,
};
use crate::division::{csd_map, DivisionConfig, VirtualAddress};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GrdVariant {
    /// Intra-plane takeover only ("GRD-VN 1").
    IntraOnly,
    /// Inter-plane takeover allowed ("GRD-VN 2").
    InterPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrdAddress {
    Served(VirtualAddress),
    NoCover,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrdGrid {
    pub planes: usize,
    pub per_plane: usize,
    /// Cell centres, indexed by [`VirtualAddress::index`].
    pub centers: Vec<GeoPoint>,
    #[serde(skip)]
    center_units: Vec<Vector3<f64>>,
    /// Ground longitude of the ascending strip of column 1 at epoch.
    pub column_lon0: f64,
    plane_spacing: f64,
    raan0: f64,
}

impl GrdGrid {
    pub fn freeze(config: &ConstellationConfig, division: &DivisionConfig) -> Self {
        let n2 = config.per_plane;
        let mut centers = vec![GeoPoint::new(0.0, 0.0); config.satellite_count()];
        let states = propagate_all(config, 0.0);
        for s in &states {
            let addr = csd_map(s, config, division);
            centers[addr.index(n2)] = GeoPoint::new(s.lat, s.lon);
        }
        let center_units = centers.iter().map(GeoPoint::unit).collect();
        // cell (1,1) starts on the ascending half of plane 1
        let column_lon0 = centers[VirtualAddress::new(1, 1).index(n2)].lon;
        GrdGrid {
            planes: config.planes,
            per_plane: n2,
            centers,
            center_units,
            column_lon0,
            plane_spacing: config.plane_spacing(),
            raan0: config.raan0,
        }
    }

    pub fn center(&self, addr: VirtualAddress) -> GeoPoint {
        self.centers[addr.index(self.per_plane)]
    }

    /// Column boundary nearest to the seam at time `t`: 0 is the `n1 | 1`
    /// boundary, `b` the boundary between columns `b` and `b + 1`.
    pub fn seam_column(&self, t: f64) -> usize {
        let seam = self.raan0 - self.plane_spacing / 2.0 - EARTH_ROTATION_RATE * t;
        let base = self.column_lon0 - self.plane_spacing / 2.0;
        let rel = (seam - base).rem_euclid(PI);
        (rel / self.plane_spacing).round() as usize % self.planes
    }
}

/// Server of every cell and cells held by every satellite at one instant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrdAssignment {
    /// Serving satellite index per cell (`None` = no coverage).
    pub cell_server: Vec<Option<usize>>,
    /// Cells served by each satellite.
    pub sat_cells: Vec<Vec<VirtualAddress>>,
    /// Satellites serving more than one cell.
    pub conflicts: usize,
}

impl GrdAssignment {
    pub fn address_of(&self, sat_index: usize) -> GrdAddress {
        self.sat_cells[sat_index]
            .first()
            .map_or(GrdAddress::NoCover, |a| GrdAddress::Served(*a))
    }
}

/// Intra-plane mapping of one satellite: it keeps the phase band in its
/// own column and loses the address once the cell centre drops below
/// `sigma_min`.
pub fn grd_map(
    state: &SatelliteState,
    config: &ConstellationConfig,
    division: &DivisionConfig,
    grid: &GrdGrid,
    sigma_min: f64,
) -> GrdAddress {
    let addr = csd_map(state, config, division);
    if elevation_angle(state, grid.center(addr)) >= sigma_min {
        GrdAddress::Served(addr)
    } else {
        GrdAddress::NoCover
    }
}

pub fn grd_assign(
    config: &ConstellationConfig,
    division: &DivisionConfig,
    grid: &GrdGrid,
    states: &[SatelliteState],
    variant: GrdVariant,
    sigma_min: f64,
) -> GrdAssignment {
    let n2 = config.per_plane;
    let cells = config.satellite_count();
    let mut cell_server = vec![None; cells];
    let mut sat_cells = vec![Vec::new(); states.len()];
    match variant {
        GrdVariant::IntraOnly => {
            for (i, s) in states.iter().enumerate() {
                if let GrdAddress::Served(a) = grd_map(s, config, division, grid, sigma_min) {
                    cell_server[a.index(n2)] = Some(i);
                    sat_cells[i].push(a);
                }
            }
        }
        GrdVariant::InterPlane => {
            let units: Vec<Vector3<f64>> = states.iter().map(SatelliteState::ground_unit).collect();
            for (c, cu) in grid.center_units.iter().enumerate() {
                // equal altitudes: highest elevation = smallest central angle.
                // Satellites stacked on a pole tie; the cell's own column wins.
                let top = units.iter().map(|u| cu.dot(u)).fold(f64::MIN, f64::max);
                let h = c / n2 + 1;
                let near = |i: &usize| cu.dot(&units[*i]) >= top - 1e-12;
                let best = (0..units.len())
                    .filter(|i| near(i) && states[*i].sat.plane == h)
                    .chain((0..units.len()).filter(near))
                    .next()
                    .expect("constellation is non-empty");
                if elevation_angle(&states[best], grid.centers[c]) >= sigma_min {
                    cell_server[c] = Some(best);
                    sat_cells[best].push(VirtualAddress::from_index(c, n2));
                }
            }
        }
    }
    let conflicts = sat_cells.iter().filter(|c| c.len() > 1).count();
    GrdAssignment {
        cell_server,
        sat_cells,
        conflicts,
    }
}
