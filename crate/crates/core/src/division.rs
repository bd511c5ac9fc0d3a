//! Celestial-sphere division: virtual addresses, cell bounds and the
//! R1/P1/R2/P2 row partition.
//!
//! A virtual node `(v, h)` is a cell fixed in the inertial frame. Column
//! `h` is orbit plane `h`; row `v` is a phase band `[start, start + ωf)`
//! of that plane, where `start = φ0 + offset(h) + (v-1)·ωf`. Cells are
//! indexed by argument of latitude rather than geodetic latitude, which
//! would not tell ascending and descending passes apart.

use std::f64::consts::PI;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::angle::{floor_snapped, max_abs_latitude_over_arc, wrap_two_pi, SNAP_EPS};
use crate::constellation::{ConstellationConfig, SatelliteState};
use crate::error::{Error, Result};
use crate::isl::{phase_analysis, IslMode};

/// `(v, h)`: row `v` in `1..=n2`, column `h` in `1..=n1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VirtualAddress {
    pub v: usize,
    pub h: usize,
}

impl VirtualAddress {
    pub const fn new(v: usize, h: usize) -> Self {
        VirtualAddress { v, h }
    }

    /// Dense 0-based index, column-major (matches satellite indexing).
    pub fn index(self, per_plane: usize) -> usize {
        (self.h - 1) * per_plane + (self.v - 1)
    }

    pub fn from_index(index: usize, per_plane: usize) -> Self {
        VirtualAddress::new(index % per_plane + 1, index / per_plane + 1)
    }
}

/// Cell bounds in degrees, exactly as produced by the longitude
/// normalisation and latitude fold. On descending bands `lat_low >
/// lat_high`; `pole_wrap` marks bands whose interior contains a pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VnCellBounds {
    pub lon_low: f64,
    pub lon_high: f64,
    pub lat_low: f64,
    pub lat_high: f64,
    pub pole_wrap: bool,
}

/// Row partition: R1 = `1..=va`, P1 = `va+1..vb`, R2 = `vb..=vc`,
/// P2 = `vc+1..=n2`.
///
/// When the in-row phase spread eats the whole equatorial band, R1 or R2
/// is empty; that is encoded as `va = 0` or `vc = vb - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionBoundaries {
    pub va: usize,
    pub vb: usize,
    pub vc: usize,
}

impl RegionBoundaries {
    /// Number of rows whose H-ISLs stay on (|R1| + |R2|).
    pub fn active_rows(&self) -> usize {
        self.va + (self.vc + 1 - self.vb)
    }

    fn clamped(va: i64, vb: usize, vc: i64, n2: usize) -> Self {
        let va = va.clamp(0, vb as i64 - 1) as usize;
        let vc = vc.clamp(vb as i64 - 1, n2 as i64) as usize;
        RegionBoundaries { va, vb, vc }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    R1,
    P1,
    R2,
    P2,
}

impl RegionLabel {
    pub fn hisl_on(self) -> bool {
        matches!(self, RegionLabel::R1 | RegionLabel::R2)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::R1 => "R1",
            RegionLabel::P1 => "P1",
            RegionLabel::R2 => "R2",
            RegionLabel::P2 => "P2",
        }
    }
}

impl std::str::FromStr for RegionLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R1" => Ok(RegionLabel::R1),
            "P1" => Ok(RegionLabel::P1),
            "R2" => Ok(RegionLabel::R2),
            "P2" => Ok(RegionLabel::P2),
            other => Err(Error::Parse(format!("unknown region label {other:?}"))),
        }
    }
}

/// How column start phases are staggered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowLayout {
    /// Every column starts at φ0.
    Aligned,
    /// Column `h` starts at `φ0 + mod(h-1, K)·Δf` (optimized ISL mode).
    Optimized,
    /// Column `h` starts at `φ0 + (h-1)·Δf`, following same-slot rows of
    /// the conventional mode.
    Conventional,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivisionConfig {
    /// Start phase of VN (1,1), radians.
    pub phi0: f64,
    /// Start longitude of column 1 in the inertial frame, radians.
    pub lambda0: f64,
    pub layout: RowLayout,
    /// `n1/F` when the layout is phased.
    pub k: Option<Rational64>,
}

impl DivisionConfig {
    /// Unstaggered division with `φ0 = -Φ_P` and column 1 centred on the
    /// plane-1 ascending node.
    pub fn unphased(config: &ConstellationConfig) -> Self {
        DivisionConfig {
            phi0: -config.polar_threshold,
            lambda0: config.raan0 - config.plane_spacing() / 2.0,
            layout: RowLayout::Aligned,
            k: None,
        }
    }

    /// Staggered division that follows the satellite phase under `mode`.
    pub fn phased(config: &ConstellationConfig, mode: IslMode) -> Result<Self> {
        if config.phasing == 0 {
            return Err(Error::UndefinedK);
        }
        let layout = match mode {
            IslMode::Conventional => RowLayout::Conventional,
            IslMode::Optimized => RowLayout::Optimized,
        };
        Ok(DivisionConfig {
            layout,
            k: Some(Rational64::new(config.planes as i64, config.phasing as i64)),
            ..Self::unphased(config)
        })
    }

    /// The division whose cell edges coincide with the satellite phases
    /// under `mode`, so that all VN switches happen at once.
    pub fn matched(config: &ConstellationConfig, mode: IslMode) -> Self {
        Self::phased(config, mode).unwrap_or_else(|_| Self::unphased(config))
    }

    pub fn with_phi0(mut self, phi0: f64) -> Self {
        self.phi0 = phi0;
        self
    }

    /// Column offset in phase quanta.
    pub fn column_offset_quanta(&self, config: &ConstellationConfig, h: usize) -> u64 {
        let step = ((h - 1) * config.phasing) as u64;
        match self.layout {
            RowLayout::Aligned => 0,
            RowLayout::Optimized => step % config.planes as u64,
            RowLayout::Conventional => step,
        }
    }

    /// Start phase of VN `(1, h)`.
    pub fn column_start(&self, config: &ConstellationConfig, h: usize) -> f64 {
        self.phi0 + self.column_offset_quanta(config, h) as f64 * config.phase_quantum()
    }

    /// Unfolded phase band `[start, start + ωf]` of a cell.
    pub fn cell_phase_start(&self, config: &ConstellationConfig, addr: VirtualAddress) -> f64 {
        self.column_start(config, addr.h) + (addr.v - 1) as f64 * config.slot_spacing()
    }
}

/// Longitude range of column `h` in degrees, normalised to `[-180, 180)`.
pub fn vn_longitude_range(h: usize, lambda0_deg: f64, plane_spacing_deg: f64) -> (f64, f64) {
    let norm = |x: f64| (x + 180.0).rem_euclid(360.0) - 180.0;
    (
        norm(lambda0_deg + (h - 1) as f64 * plane_spacing_deg),
        norm(lambda0_deg + h as f64 * plane_spacing_deg),
    )
}

/// Folds an unfolded phase (degrees) onto latitude `[-90, 90]`.
pub fn fold_latitude_deg(phase_deg: f64) -> f64 {
    90.0 - (180.0 - (phase_deg + 90.0).rem_euclid(360.0)).abs()
}

/// Latitude range of cell `(v, h)` in degrees plus the pole-wrap flag.
pub fn vn_latitude_range(
    config: &ConstellationConfig,
    division: &DivisionConfig,
    addr: VirtualAddress,
) -> (f64, f64, bool) {
    let start = division.cell_phase_start(config, addr).to_degrees();
    let width = config.slot_spacing().to_degrees();
    // odd multiple of 90° strictly inside the band
    let k = ((start - 90.0) / 180.0).floor() + 1.0;
    let pole = 90.0 + 180.0 * k;
    let pole_wrap = pole > start + 1e-9 && pole < start + width - 1e-9;
    (fold_latitude_deg(start), fold_latitude_deg(start + width), pole_wrap)
}

pub fn cell_bounds(
    config: &ConstellationConfig,
    division: &DivisionConfig,
    addr: VirtualAddress,
    t: f64,
) -> VnCellBounds {
    use crate::constellation::EARTH_ROTATION_RATE;
    let lambda0 = (division.lambda0 - EARTH_ROTATION_RATE * t).to_degrees();
    let (lon_low, lon_high) = vn_longitude_range(addr.h, lambda0, config.plane_spacing().to_degrees());
    let (lat_low, lat_high, pole_wrap) = vn_latitude_range(config, division, addr);
    VnCellBounds {
        lon_low,
        lon_high,
        lat_low,
        lat_high,
        pole_wrap,
    }
}

/// Closed-form boundaries for a zero in-row phase spread.
pub fn region_boundaries(n2: usize, polar_threshold: f64) -> RegionBoundaries {
    let x = n2 as f64 * polar_threshold / PI;
    let vb = n2.div_ceil(2) + 1;
    RegionBoundaries::clamped(floor_snapped(x), vb, floor_snapped(x + n2 as f64 / 2.0), n2)
}

/// Boundaries for a phased division.
///
/// Integer `K` uses the closed form with the `(K-1)/K` correction; any
/// other `K` falls back to [`region_boundaries_constrained`] with the
/// optimized-mode spread `max_h mod(h-1, K)·Δf`.
pub fn region_boundaries_phased(
    n1: usize,
    n2: usize,
    phasing: usize,
    polar_threshold: f64,
) -> Result<RegionBoundaries> {
    if phasing == 0 {
        return Err(Error::UndefinedK);
    }
    let k = Rational64::new(n1 as i64, phasing as i64);
    if k.is_integer() {
        // (K-1)/K = 1 - F/n1
        let corr = 1.0 - phasing as f64 / n1 as f64;
        let x = n2 as f64 * polar_threshold / PI;
        let vb = n2.div_ceil(2) + 1;
        Ok(RegionBoundaries::clamped(
            floor_snapped(x - corr),
            vb,
            floor_snapped(x + n2 as f64 / 2.0 - corr),
            n2,
        ))
    } else {
        let spread = phase_analysis(n1, n2, phasing).optimized_max();
        Ok(region_boundaries_constrained(n2, polar_threshold, spread))
    }
}

/// Largest/smallest row indices satisfying the band constraints directly:
/// `va·ωf + spread ≤ 2Φ_P`, `(vb-1)·ωf ≥ π`, `vc·ωf + spread ≤ π + 2Φ_P`.
pub fn region_boundaries_constrained(n2: usize, polar_threshold: f64, spread: f64) -> RegionBoundaries {
    let wf = 2.0 * PI / n2 as f64;
    let vb = (1..=n2 + 1)
        .find(|&v| (v - 1) as f64 * wf >= PI - SNAP_EPS)
        .expect("(n2/2 + 1) always satisfies the bound");
    let va = (0..=n2)
        .rev()
        .find(|&v| v as f64 * wf + spread <= 2.0 * polar_threshold + SNAP_EPS)
        .map_or(0, |v| v as i64);
    let vc = (0..=n2)
        .rev()
        .find(|&v| v as f64 * wf + spread <= PI + 2.0 * polar_threshold + SNAP_EPS)
        .map_or(0, |v| v as i64);
    RegionBoundaries::clamped(va, vb, vc, n2)
}

/// Boundaries matching the ISL mode's in-row phase spread.
pub fn mode_boundaries(config: &ConstellationConfig, mode: IslMode) -> RegionBoundaries {
    let (n1, n2, f, pp) = (config.planes, config.per_plane, config.phasing, config.polar_threshold);
    if f == 0 {
        return region_boundaries(n2, pp);
    }
    match mode {
        IslMode::Optimized => region_boundaries_phased(n1, n2, f, pp).expect("F > 0"),
        IslMode::Conventional => region_boundaries_constrained(n2, pp, phase_analysis(n1, n2, f).conventional_max()),
    }
}

pub fn classify_region(v: usize, b: &RegionBoundaries) -> RegionLabel {
    if v <= b.va {
        RegionLabel::R1
    } else if v < b.vb {
        RegionLabel::P1
    } else if v <= b.vc {
        RegionLabel::R2
    } else {
        RegionLabel::P2
    }
}

/// Virtual address of a satellite: its plane, and the phase band it
/// currently occupies. A satellite exactly on a cell edge belongs to the
/// higher cell.
pub fn csd_map(state: &SatelliteState, config: &ConstellationConfig, division: &DivisionConfig) -> VirtualAddress {
    let h = state.sat.plane;
    let rel = wrap_two_pi(state.phase - division.column_start(config, h));
    let cell = floor_snapped(rel / config.slot_spacing()) as usize % config.per_plane;
    VirtualAddress::new(cell + 1, h)
}

/// True when the cell's whole phase band stays outside the polar caps.
pub fn cell_clear_of_poles(config: &ConstellationConfig, division: &DivisionConfig, addr: VirtualAddress) -> bool {
    let start = division.cell_phase_start(config, addr);
    max_abs_latitude_over_arc(start, config.slot_spacing(), config.inclination) <= config.polar_threshold + SNAP_EPS
}

/// VN switching interval of the geographic method, `T/n2`.
pub fn grd_switch_interval(period: f64, n2: usize) -> f64 {
    period / n2 as f64
}
