//! Walker-star constellation geometry and circular two-body propagation.
//!
//! Satellites live on circular orbits of a spherical Earth. Plane `h`
//! (1-based, numbered west to east) has RAAN `raan0 + (h-1)·π/n1`, so the
//! ascending nodes fan across 180° and planes `n1` and `1` counter-rotate
//! at the seam. Slot `j` of plane `h` starts at argument of latitude
//! `phase0 + (j-1)·ωf + (h-1)·Δf`.
//!
//! Every structural phase offset in the constellation is an integer
//! multiple of the phase quantum `2π/(n1·n2)`: `ωf = n1` quanta and
//! `Δf = F` quanta. Exact comparisons elsewhere in the crate work in
//! quanta rather than radians.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::angle::{wrap_pi, wrap_two_pi};
use crate::error::{Error, Result};

pub const EARTH_RADIUS_M: f64 = 6_371_000.0;
pub const EARTH_MU: f64 = 3.986_004_418e14;
pub const SIDEREAL_DAY_S: f64 = 86_164.090_5;
pub const EARTH_ROTATION_RATE: f64 = TAU / SIDEREAL_DAY_S;

/// Walker-star parameters. Angles are radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstellationConfig {
    /// Number of orbit planes (n1).
    pub planes: usize,
    /// Satellites per plane (n2).
    pub per_plane: usize,
    /// Walker phasing factor F.
    pub phasing: usize,
    pub altitude_m: f64,
    pub inclination: f64,
    /// Polar-region latitude threshold Φ_P.
    pub polar_threshold: f64,
    /// RAAN of plane 1.
    pub raan0: f64,
    /// Argument of latitude of satellite (1,1) at t = 0.
    pub phase0: f64,
    /// Orbital period in seconds.
    pub period: f64,
}

impl ConstellationConfig {
    /// Builds a validated configuration with the usual defaults: exactly
    /// polar planes, `raan0 = 0`, `phase0 = -Φ_P` and the Keplerian period.
    pub fn new(planes: usize, per_plane: usize, phasing: usize, altitude_m: f64, polar_threshold: f64) -> Result<Self> {
        let cfg = ConstellationConfig {
            planes,
            per_plane,
            phasing,
            altitude_m,
            inclination: FRAC_PI_2,
            polar_threshold,
            raan0: 0.0,
            phase0: -polar_threshold,
            period: orbital_period(altitude_m)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_inclination(mut self, inclination: f64) -> Result<Self> {
        self.inclination = inclination;
        self.validate().map(|_| self)
    }

    pub fn with_raan0(mut self, raan0: f64) -> Self {
        self.raan0 = raan0;
        self
    }

    pub fn with_phase0(mut self, phase0: f64) -> Self {
        self.phase0 = phase0;
        self
    }

    pub fn with_period(mut self, period: f64) -> Result<Self> {
        self.period = period;
        self.validate().map(|_| self)
    }

    pub fn with_phasing(mut self, phasing: usize) -> Result<Self> {
        self.phasing = phasing;
        self.validate().map(|_| self)
    }

    /// Changes Φ_P. `phase0` follows when it still sits at its default
    /// `-Φ_P`, keeping satellites on the division's cell edges.
    pub fn with_polar_threshold(mut self, polar_threshold: f64) -> Result<Self> {
        if self.phase0 == -self.polar_threshold {
            self.phase0 = -polar_threshold;
        }
        self.polar_threshold = polar_threshold;
        self.validate().map(|_| self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.planes < 2 {
            return Err(Error::config("n1", format!("must be >= 2, got {}", self.planes)));
        }
        if self.per_plane < 3 {
            return Err(Error::config("n2", format!("must be >= 3, got {}", self.per_plane)));
        }
        if self.phasing >= self.per_plane {
            return Err(Error::config(
                "F",
                format!(
                    "must satisfy 0 <= F <= n2-1 = {}, got {}",
                    self.per_plane - 1,
                    self.phasing
                ),
            ));
        }
        if !(self.altitude_m > 0.0 && self.altitude_m.is_finite()) {
            return Err(Error::config(
                "altitude",
                format!("must be > 0, got {} m", self.altitude_m),
            ));
        }
        if !(self.polar_threshold > 0.0 && self.polar_threshold <= FRAC_PI_2 + 1e-12) {
            return Err(Error::config(
                "polar_threshold",
                format!("must lie in (0, 90] deg, got {} deg", self.polar_threshold.to_degrees()),
            ));
        }
        if !(self.inclination > 0.0 && self.inclination < PI) {
            return Err(Error::config(
                "inclination",
                format!("must lie in (0, 180) deg, got {} deg", self.inclination.to_degrees()),
            ));
        }
        if !(self.period > 0.0 && self.period.is_finite()) {
            return Err(Error::config("period", format!("must be > 0, got {} s", self.period)));
        }
        Ok(())
    }

    pub fn satellite_count(&self) -> usize {
        self.planes * self.per_plane
    }

    /// ΔΩ = π/n1.
    pub fn plane_spacing(&self) -> f64 {
        PI / self.planes as f64
    }

    /// ωf = 2π/n2.
    pub fn slot_spacing(&self) -> f64 {
        TAU / self.per_plane as f64
    }

    /// Phase quantum 2π/(n1·n2); ωf and Δf are integer multiples of it.
    pub fn phase_quantum(&self) -> f64 {
        TAU / self.satellite_count() as f64
    }

    /// Δf = 2πF/(n1·n2).
    pub fn phase_step(&self) -> f64 {
        self.phasing as f64 * self.phase_quantum()
    }

    pub fn orbit_radius(&self) -> f64 {
        EARTH_RADIUS_M + self.altitude_m
    }

    pub fn mean_motion(&self) -> f64 {
        TAU / self.period
    }

    /// Time for the constellation to advance by one slot (T/n2).
    pub fn slot_interval(&self) -> f64 {
        self.period / self.per_plane as f64
    }

    pub fn raan(&self, plane: usize) -> f64 {
        self.raan0 + (plane - 1) as f64 * self.plane_spacing()
    }

    /// Structural phase of `sat` relative to `phase0`, in quanta.
    pub fn phase_offset_quanta(&self, sat: SatelliteId) -> u64 {
        ((sat.slot - 1) * self.planes + (sat.plane - 1) * self.phasing) as u64
    }

    pub fn initial_phase(&self, sat: SatelliteId) -> f64 {
        self.phase0 + self.phase_offset_quanta(sat) as f64 * self.phase_quantum()
    }

    pub fn satellites(&self) -> impl Iterator<Item = SatelliteId> + '_ {
        (1..=self.planes).flat_map(move |h| (1..=self.per_plane).map(move |j| SatelliteId::new(h, j)))
    }
}

/// Physical identity of a satellite: plane `h` in `1..=n1`, slot `j` in
/// `1..=n2`. Unlike a virtual address it never changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SatelliteId {
    pub plane: usize,
    pub slot: usize,
}

impl SatelliteId {
    pub const fn new(plane: usize, slot: usize) -> Self {
        SatelliteId { plane, slot }
    }

    /// Dense 0-based index, plane-major.
    pub fn index(self, per_plane: usize) -> usize {
        (self.plane - 1) * per_plane + (self.slot - 1)
    }

    pub fn from_index(index: usize, per_plane: usize) -> Self {
        SatelliteId::new(index / per_plane + 1, index % per_plane + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SatelliteSlot {
    pub id: SatelliteId,
    pub raan: f64,
    pub initial_phase: f64,
}

/// Lays out all `n1·n2` satellites, plane-major.
pub fn build_constellation(config: &ConstellationConfig) -> Result<Vec<SatelliteSlot>> {
    config.validate()?;
    Ok(config
        .satellites()
        .map(|id| SatelliteSlot {
            id,
            raan: config.raan(id.plane),
            initial_phase: config.initial_phase(id),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SatelliteState {
    pub sat: SatelliteId,
    pub t: f64,
    /// Argument of latitude in `[0, 2π)`.
    pub phase: f64,
    /// Inertial position, metres.
    pub position: Vector3<f64>,
    /// Geodetic sub-point on the rotating Earth.
    pub lat: f64,
    pub lon: f64,
}

impl SatelliteState {
    /// Unit vector of the sub-point in the Earth-fixed frame.
    pub fn ground_unit(&self) -> Vector3<f64> {
        geo_unit(self.lat, self.lon)
    }
}

/// Position at time `t` (seconds from epoch).
pub fn propagate(config: &ConstellationConfig, sat: SatelliteId, t: f64) -> SatelliteState {
    let u = wrap_two_pi(config.initial_phase(sat) + config.mean_motion() * t);
    let raan = config.raan(sat.plane);
    let (su, cu) = u.sin_cos();
    let (so, co) = raan.sin_cos();
    let (si, ci) = config.inclination.sin_cos();
    let r = config.orbit_radius();
    let position = Vector3::new(co * cu - so * su * ci, so * cu + co * su * ci, su * si) * r;
    let lat = (position.z / r).clamp(-1.0, 1.0).asin();
    let lon = wrap_pi(position.y.atan2(position.x) - EARTH_ROTATION_RATE * t);
    SatelliteState {
        sat,
        t,
        phase: u,
        position,
        lat,
        lon,
    }
}

/// States of every satellite at `t`, indexed by [`SatelliteId::index`].
pub fn propagate_all(config: &ConstellationConfig, t: f64) -> Vec<SatelliteState> {
    config.satellites().map(|s| propagate(config, s, t)).collect()
}

/// Strict test `|φ_s| > Φ_P`; a satellite sitting on the threshold still
/// keeps its H-ISLs.
#[inline]
pub fn in_polar_region(lat: f64, polar_threshold: f64) -> bool {
    lat.abs() > polar_threshold
}

/// Kepler period of a circular orbit at `altitude_m` above the mean radius.
pub fn orbital_period(altitude_m: f64) -> Result<f64> {
    if !(altitude_m > 0.0 && altitude_m.is_finite()) {
        return Err(Error::config("altitude", format!("must be > 0, got {altitude_m} m")));
    }
    let a = EARTH_RADIUS_M + altitude_m;
    Ok(TAU * (a.powi(3) / EARTH_MU).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub lat: f64,
    pub lon: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lon: f64) -> Self {
        GeoPoint { lat, lon }
    }

    pub fn unit(&self) -> Vector3<f64> {
        geo_unit(self.lat, self.lon)
    }
}

pub(crate) fn geo_unit(lat: f64, lon: f64) -> Vector3<f64> {
    let (sl, cl) = lat.sin_cos();
    let (so, co) = lon.sin_cos();
    Vector3::new(cl * co, cl * so, sl)
}

/// Elevation of the satellite above the local horizon at `ground`.
/// Negative when the satellite is below the horizon.
pub fn elevation_angle(state: &SatelliteState, ground: GeoPoint) -> f64 {
    // rotate the satellite into the Earth-fixed frame
    let (s, c) = (EARTH_ROTATION_RATE * state.t).sin_cos();
    let p = state.position;
    let sat_ecef = Vector3::new(c * p.x + s * p.y, -s * p.x + c * p.y, p.z);
    let up = ground.unit();
    let rho = sat_ecef - up * EARTH_RADIUS_M;
    (rho.dot(&up) / rho.norm()).clamp(-1.0, 1.0).asin()
}

/// Earth-central half-angle of the coverage circle for a minimum
/// elevation `sigma`.
pub fn coverage_half_angle(orbit_radius: f64, sigma: f64) -> f64 {
    let eta = (EARTH_RADIUS_M * sigma.cos() / orbit_radius).asin();
    FRAC_PI_2 - sigma - eta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::rad;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn reference_shell(f: usize) -> ConstellationConfig {
        ConstellationConfig::new(18, 36, f, 1_190_000.0, rad(70.0)).unwrap()
    }

    #[test]
    fn rejects_bad_bounds() {
        let e = ConstellationConfig::new(1, 36, 0, 1e6, 1.0).unwrap_err();
        assert!(matches!(e, Error::Config { field: "n1", .. }));
        let e = ConstellationConfig::new(18, 2, 0, 1e6, 1.0).unwrap_err();
        assert!(matches!(e, Error::Config { field: "n2", .. }));
        let e = ConstellationConfig::new(18, 36, 36, 1e6, 1.0).unwrap_err();
        assert!(matches!(e, Error::Config { field: "F", .. }));
        let e = ConstellationConfig::new(18, 36, 0, 1e6, 0.0).unwrap_err();
        assert!(matches!(
            e,
            Error::Config {
                field: "polar_threshold",
                ..
            }
        ));
        let e = ConstellationConfig::new(18, 36, 0, 1e6, rad(91.0)).unwrap_err();
        assert!(matches!(
            e,
            Error::Config {
                field: "polar_threshold",
                ..
            }
        ));
        assert!(ConstellationConfig::new(18, 36, 0, -5.0, 1.0).is_err());
    }

    #[test]
    fn layout_counts_and_offsets() {
        let sats = build_constellation(&reference_shell(0)).unwrap();
        assert_eq!(sats.len(), 648);
        let a = sats[SatelliteId::new(1, 5).index(36)];
        let b = sats[SatelliteId::new(2, 5).index(36)];
        assert_abs_diff_eq!(a.initial_phase, b.initial_phase);
        assert_abs_diff_eq!(b.raan - a.raan, rad(10.0), epsilon = 1e-15);

        let cfg = reference_shell(2);
        assert_relative_eq!(cfg.phase_step().to_degrees(), 720.0 / 648.0, max_relative = 1e-12);
    }

    #[test]
    fn plane_four_leads_plane_one() {
        let cfg = ConstellationConfig::new(6, 12, 3, 1e6, rad(70.0)).unwrap();
        let sats = build_constellation(&cfg).unwrap();
        let p1 = sats[SatelliteId::new(1, 1).index(12)].initial_phase;
        let p4 = sats[SatelliteId::new(4, 1).index(12)].initial_phase;
        assert_abs_diff_eq!(p4 - p1, PI / 4.0, epsilon = 1e-14);
    }

    #[test]
    fn epoch_and_period() {
        let cfg = reference_shell(2);
        let id = SatelliteId::new(1, 1);
        let s0 = propagate(&cfg, id, 0.0);
        assert_abs_diff_eq!(s0.phase, wrap_two_pi(cfg.initial_phase(id)), epsilon = 1e-15);
        let s1 = propagate(&cfg, id, cfg.period);
        assert_abs_diff_eq!(wrap_pi(s1.phase - s0.phase), 0.0, epsilon = 1e-12);
        assert_relative_eq!(s1.position, s0.position, max_relative = 1e-9);
    }

    #[test]
    fn quarter_period_over_pole() {
        let cfg = reference_shell(0).with_phase0(0.0);
        let s = propagate(&cfg, SatelliteId::new(1, 1), cfg.period / 4.0);
        assert_abs_diff_eq!(s.lat, FRAC_PI_2, epsilon = 1e-7);
        assert_abs_diff_eq!(s.lat, (cfg.inclination.sin() * s.phase.sin()).asin(), epsilon = 1e-7);
    }

    #[test]
    fn polar_region_is_strict() {
        assert!(in_polar_region(rad(75.0), rad(70.0)));
        assert!(!in_polar_region(rad(70.0), rad(70.0)));
        assert!(in_polar_region(rad(-71.0), rad(70.0)));
    }

    #[test]
    fn kepler_period() {
        assert_abs_diff_eq!(
            orbital_period(7_000_000.0 - EARTH_RADIUS_M).unwrap(),
            5828.5,
            epsilon = 0.1
        );
        // 780 km with R_E = 6371 km
        assert_abs_diff_eq!(orbital_period(780_000.0).unwrap(), 6018.1, epsilon = 0.1);
        assert!(orbital_period(500e3).unwrap() < orbital_period(501e3).unwrap());
        assert!(orbital_period(0.0).is_err());
    }

    #[test]
    fn elevation_cases() {
        let cfg = reference_shell(0).with_phase0(0.3);
        let s = propagate(&cfg, SatelliteId::new(3, 4), 1234.0);
        assert_abs_diff_eq!(
            elevation_angle(&s, GeoPoint::new(s.lat, s.lon)),
            FRAC_PI_2,
            epsilon = 1e-9
        );
        let anti = GeoPoint::new(-s.lat, wrap_pi(s.lon + PI));
        assert!(elevation_angle(&s, anti) < 0.0);

        // point on the σ = 0 coverage circle, due north of the sub-point
        let lam = coverage_half_angle(cfg.orbit_radius(), 0.0);
        let s = propagate(&cfg, SatelliteId::new(1, 1), 0.0);
        assert!(s.lat + lam < FRAC_PI_2);
        let edge = GeoPoint::new(s.lat + lam, s.lon);
        assert_abs_diff_eq!(elevation_angle(&s, edge), 0.0, epsilon = 1e-6);
    }
}
