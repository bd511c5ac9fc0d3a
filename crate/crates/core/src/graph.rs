//! Virtual graph over VN addresses and the staticness measurement.
//!
//! The static graph is a ring per column (V links) plus the H links of
//! every row that lies in R1 or R2. A physical snapshot is turned into an
//! *instance* by relabelling each active ISL with the addresses its
//! endpoints currently hold; consecutive instances are diffed into
//! [`TopologyEvent`]s.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::angle::SNAP_EPS;
use crate::constellation::{in_polar_region, ConstellationConfig, SatelliteState};
use crate::division::{classify_region, csd_map, DivisionConfig, RegionBoundaries, VirtualAddress};
use crate::error::{Error, Result};
use crate::grd::{grd_assign, GrdGrid, GrdVariant};
use crate::isl::{snapshot_edges, IslMode, ShutoffRule, TopologySnapshot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VirtualLinkKind {
    #[serde(rename = "V_LINK")]
    Vertical,
    #[serde(rename = "H_LINK")]
    Horizontal,
}

impl VirtualLinkKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VirtualLinkKind::Vertical => "V_LINK",
            VirtualLinkKind::Horizontal => "H_LINK",
        }
    }
}

/// Undirected address pair, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VirtualEdge {
    pub a: VirtualAddress,
    pub b: VirtualAddress,
    pub kind: VirtualLinkKind,
}

impl VirtualEdge {
    pub fn new(x: VirtualAddress, y: VirtualAddress) -> Self {
        let (a, b) = if (x.h, x.v) <= (y.h, y.v) { (x, y) } else { (y, x) };
        let kind = if a.h == b.h {
            VirtualLinkKind::Vertical
        } else {
            VirtualLinkKind::Horizontal
        };
        VirtualEdge { a, b, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VirtualGraph {
    pub planes: usize,
    pub per_plane: usize,
    pub boundaries: RegionBoundaries,
    pub edges: BTreeSet<VirtualEdge>,
}

impl VirtualGraph {
    pub fn nodes(&self) -> impl Iterator<Item = VirtualAddress> + '_ {
        (1..=self.planes).flat_map(move |h| (1..=self.per_plane).map(move |v| VirtualAddress::new(v, h)))
    }

    pub fn node_count(&self) -> usize {
        self.planes * self.per_plane
    }

    pub fn count(&self, kind: VirtualLinkKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    pub fn is_connected(&self) -> bool {
        let n2 = self.per_plane;
        let mut adj = vec![Vec::new(); self.node_count()];
        for e in &self.edges {
            let (i, j) = (e.a.index(n2), e.b.index(n2));
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; adj.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

pub fn build_static_graph(n1: usize, n2: usize, b: &RegionBoundaries) -> VirtualGraph {
    let mut edges = BTreeSet::new();
    for h in 1..=n1 {
        for v in 1..=n2 {
            if n2 > 1 {
                edges.insert(VirtualEdge::new(
                    VirtualAddress::new(v, h),
                    VirtualAddress::new(v % n2 + 1, h),
                ));
            }
            if h < n1 && classify_region(v, b).hisl_on() {
                edges.insert(VirtualEdge::new(
                    VirtualAddress::new(v, h),
                    VirtualAddress::new(v, h + 1),
                ));
            }
        }
    }
    VirtualGraph {
        planes: n1,
        per_plane: n2,
        boundaries: *b,
        edges,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VnMethod {
    #[serde(rename = "GRD1")]
    Grd1,
    #[serde(rename = "GRD2")]
    Grd2,
    #[serde(rename = "CSD")]
    Csd,
}

impl VnMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            VnMethod::Grd1 => "GRD1",
            VnMethod::Grd2 => "GRD2",
            VnMethod::Csd => "CSD",
        }
    }

    /// Shut-off rule each method is simulated with.
    pub fn default_rule(self) -> ShutoffRule {
        match self {
            VnMethod::Csd => ShutoffRule::RowCell,
            VnMethod::Grd1 | VnMethod::Grd2 => ShutoffRule::PerSatellite,
        }
    }
}

impl std::str::FromStr for VnMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grd1" => Ok(VnMethod::Grd1),
            "grd2" => Ok(VnMethod::Grd2),
            "csd" => Ok(VnMethod::Csd),
            other => Err(Error::Parse(format!("unknown VN method {other:?}"))),
        }
    }
}

/// Addresses held by each satellite at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct AddressMap {
    /// Per satellite index; empty when the satellite serves no cell.
    pub cells: Vec<Vec<VirtualAddress>>,
    /// Per address index: serving satellite.
    pub server: Vec<Option<usize>>,
    /// Satellites holding more than one address.
    pub conflicts: usize,
}

impl AddressMap {
    pub fn csd(config: &ConstellationConfig, division: &DivisionConfig, states: &[SatelliteState]) -> Self {
        let n2 = config.per_plane;
        let mut server = vec![None; config.satellite_count()];
        let mut cells = Vec::with_capacity(states.len());
        let mut conflicts = 0;
        for (i, s) in states.iter().enumerate() {
            let a = csd_map(s, config, division);
            let slot = &mut server[a.index(n2)];
            if slot.is_some() {
                conflicts += 1;
            }
            *slot = Some(i);
            cells.push(vec![a]);
        }
        AddressMap {
            cells,
            server,
            conflicts,
        }
    }

    pub fn grd(
        config: &ConstellationConfig,
        division: &DivisionConfig,
        grid: &GrdGrid,
        states: &[SatelliteState],
        variant: GrdVariant,
        sigma_min: f64,
    ) -> Self {
        let a = grd_assign(config, division, grid, states, variant, sigma_min);
        AddressMap {
            cells: a.sat_cells,
            server: a.cell_server,
            conflicts: a.conflicts,
        }
    }
}

/// Relabels every active physical ISL with the addresses of its
/// endpoints. Satellites without an address drop their links.
pub fn map_snapshot(snapshot: &TopologySnapshot, map: &AddressMap, per_plane: usize) -> BTreeSet<VirtualEdge> {
    let mut out = BTreeSet::new();
    for e in snapshot.active_edges() {
        for &ca in &map.cells[e.a.index(per_plane)] {
            for &cb in &map.cells[e.b.index(per_plane)] {
                if ca != cb {
                    out.insert(VirtualEdge::new(ca, cb));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeChange {
    #[serde(rename = "ADDED")]
    Added,
    #[serde(rename = "REMOVED")]
    Removed,
}

impl EdgeChange {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeChange::Added => "ADDED",
            EdgeChange::Removed => "REMOVED",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EventCause {
    #[serde(rename = "POLAR")]
    Polar,
    #[serde(rename = "SEAM_DRIFT")]
    SeamDrift,
    #[serde(rename = "ASYNC_SWITCH")]
    AsyncSwitch,
    #[serde(rename = "COVERAGE_LOSS")]
    CoverageLoss,
    /// The cell changed hands between satellites that are not linked the
    /// same way.
    #[serde(rename = "HANDOVER")]
    Handover,
}

impl EventCause {
    pub const ALL: [EventCause; 5] = [
        EventCause::Polar,
        EventCause::SeamDrift,
        EventCause::AsyncSwitch,
        EventCause::CoverageLoss,
        EventCause::Handover,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EventCause::Polar => "POLAR",
            EventCause::SeamDrift => "SEAM_DRIFT",
            EventCause::AsyncSwitch => "ASYNC_SWITCH",
            EventCause::CoverageLoss => "COVERAGE_LOSS",
            EventCause::Handover => "HANDOVER",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopologyEvent {
    pub t: f64,
    pub edge: VirtualEdge,
    pub change: EdgeChange,
    pub cause: EventCause,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StaticnessReport {
    pub method: VnMethod,
    pub mode: IslMode,
    pub duration: f64,
    pub samples: usize,
    pub event_count: usize,
    pub events_by_cause: BTreeMap<EventCause, usize>,
    /// `(t, boundary)` each time the seam moves to a new column boundary
    /// (GRD2 only; first entry is the starting boundary).
    pub seam_column_history: Vec<(f64, usize)>,
    /// Samples whose instance differs from the static graph.
    pub static_mismatches: usize,
    /// Largest number of multi-address satellites seen in one sample.
    pub mapping_conflicts: usize,
    #[serde(skip)]
    pub events: Vec<TopologyEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticnessOptions {
    pub method: VnMethod,
    pub mode: IslMode,
    pub duration: f64,
    /// Evenly spaced samples over `[0, duration]`; cell switching epochs
    /// are added on top.
    pub samples: usize,
    /// Minimum elevation for GRD coverage, radians.
    pub sigma_min: f64,
    /// Division used for addressing; defaults to the one matched to `mode`.
    pub division: Option<DivisionConfig>,
    /// Defaults to [`VnMethod::default_rule`].
    pub rule: Option<ShutoffRule>,
}

impl StaticnessOptions {
    pub fn new(method: VnMethod, mode: IslMode, duration: f64, samples: usize) -> Self {
        StaticnessOptions {
            method,
            mode,
            duration,
            samples,
            sigma_min: 0.0,
            division: None,
            rule: None,
        }
    }
}

/// Default sampling cadence per orbital period.
pub const SAMPLES_PER_PERIOD: usize = 720;

/// Sample count giving [`SAMPLES_PER_PERIOD`] per period over `duration`.
pub fn default_samples(config: &ConstellationConfig, duration: f64) -> usize {
    ((SAMPLES_PER_PERIOD as f64 * duration / config.period).ceil() as usize).max(2)
}

/// Times within `[0, duration]` at which some satellite crosses a cell
/// edge of `division`.
pub fn switching_epochs(config: &ConstellationConfig, division: &DivisionConfig, duration: f64) -> Vec<f64> {
    let wf = config.slot_spacing();
    let n = config.mean_motion();
    let mut residues: Vec<f64> = config
        .satellites()
        .map(|s| {
            let rel = (config.initial_phase(s) - division.column_start(config, s.plane)).rem_euclid(wf);
            // phase still to travel before the next edge
            let left = wf - rel;
            if left >= wf - SNAP_EPS {
                0.0
            } else {
                left
            }
        })
        .collect();
    residues.sort_by(f64::total_cmp);
    residues.dedup_by(|a, b| (*a - *b).abs() < SNAP_EPS);
    let mut out = Vec::new();
    for r in residues {
        let mut k = 0.0;
        loop {
            let t = (r + k * wf) / n;
            if t > duration {
                break;
            }
            out.push(t);
            k += 1.0;
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

const FRAME_CHUNK: usize = 256;

struct Frame {
    t: f64,
    edges: BTreeSet<VirtualEdge>,
    server: Vec<Option<usize>>,
    polar: Vec<bool>,
    planes_of: Vec<usize>,
    seam: Option<usize>,
    conflicts: usize,
}

pub fn staticness_report(config: &ConstellationConfig, opts: &StaticnessOptions) -> Result<StaticnessReport> {
    if opts.samples < 2 {
        return Err(Error::config(
            "samples",
            format!("need at least 2, got {}", opts.samples),
        ));
    }
    if !(opts.duration > 0.0 && opts.duration.is_finite()) {
        return Err(Error::config("duration", format!("must be > 0, got {}", opts.duration)));
    }
    let (n1, n2) = (config.planes, config.per_plane);
    let division = opts
        .division
        .unwrap_or_else(|| DivisionConfig::matched(config, opts.mode));
    let rule = opts.rule.unwrap_or(opts.method.default_rule());
    let grid = (opts.method != VnMethod::Csd).then(|| GrdGrid::freeze(config, &division));

    let mut times: Vec<f64> = (0..opts.samples)
        .map(|k| opts.duration * k as f64 / (opts.samples - 1) as f64)
        .chain(switching_epochs(config, &division, opts.duration))
        .collect();
    times.sort_by(f64::total_cmp);
    times.dedup_by(|a, b| (*a - *b).abs() < 1e-9);

    let frame_at = |t: f64| -> Frame {
        let snap = snapshot_edges(config, opts.mode, &division, rule, t);
        let map = match (opts.method, &grid) {
            (VnMethod::Csd, _) | (_, None) => AddressMap::csd(config, &division, &snap.states),
            (VnMethod::Grd1, Some(g)) => AddressMap::grd(
                config,
                &division,
                g,
                &snap.states,
                GrdVariant::IntraOnly,
                opts.sigma_min,
            ),
            (VnMethod::Grd2, Some(g)) => AddressMap::grd(
                config,
                &division,
                g,
                &snap.states,
                GrdVariant::InterPlane,
                opts.sigma_min,
            ),
        };
        let edges = map_snapshot(&snap, &map, n2);
        let polar = snap
            .states
            .iter()
            .map(|s| in_polar_region(s.lat, config.polar_threshold))
            .collect();
        let planes_of = snap.states.iter().map(|s| s.sat.plane).collect();
        let seam = match (opts.method, &grid) {
            (VnMethod::Grd2, Some(g)) => Some(g.seam_column(t)),
            _ => None,
        };
        Frame {
            t,
            edges,
            server: map.server,
            polar,
            planes_of,
            seam,
            conflicts: map.conflicts,
        }
    };

    let reference = (opts.method == VnMethod::Csd)
        .then(|| build_static_graph(n1, n2, &crate::division::mode_boundaries(config, opts.mode)));

    let mut events = Vec::new();
    let mut seam_column_history = Vec::new();
    let mut static_mismatches = 0;
    let mut mapping_conflicts = 0;
    let mut prev: Option<Frame> = None;
    // frames are built in parallel per chunk and diffed in order, so only
    // one chunk is held at a time
    for chunk in times.chunks(FRAME_CHUNK) {
        #[cfg(feature = "parallel")]
        let frames: Vec<Frame> = {
            use rayon::prelude::*;
            chunk.par_iter().map(|&t| frame_at(t)).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let frames: Vec<Frame> = chunk.iter().map(|&t| frame_at(t)).collect();

        for cur in frames {
            mapping_conflicts = mapping_conflicts.max(cur.conflicts);
            if let Some(r) = &reference {
                if r.edges != cur.edges {
                    static_mismatches += 1;
                }
            }
            if let Some(b) = cur.seam {
                if seam_column_history.last().is_none_or(|&(_, last)| last != b) {
                    seam_column_history.push((cur.t, b));
                }
            }
            if let Some(prev) = &prev {
                for e in prev.edges.difference(&cur.edges) {
                    events.push(TopologyEvent {
                        t: cur.t,
                        edge: *e,
                        change: EdgeChange::Removed,
                        cause: attribute(e, prev, &cur, &cur, n1, n2),
                    });
                }
                for e in cur.edges.difference(&prev.edges) {
                    events.push(TopologyEvent {
                        t: cur.t,
                        edge: *e,
                        change: EdgeChange::Added,
                        cause: attribute(e, prev, &cur, prev, n1, n2),
                    });
                }
            }
            prev = Some(cur);
        }
    }

    let mut events_by_cause: BTreeMap<EventCause, usize> = BTreeMap::new();
    for e in &events {
        *events_by_cause.entry(e.cause).or_default() += 1;
    }
    Ok(StaticnessReport {
        method: opts.method,
        mode: opts.mode,
        duration: opts.duration,
        samples: times.len(),
        event_count: events.len(),
        events_by_cause,
        seam_column_history,
        static_mismatches,
        mapping_conflicts,
        events,
    })
}

/// Cause of a change to `e` between `prev` and `cur`; `absent` is the
/// frame in which the edge does not exist.
fn attribute(e: &VirtualEdge, prev: &Frame, cur: &Frame, absent: &Frame, n1: usize, n2: usize) -> EventCause {
    let (ia, ib) = (e.a.index(n2), e.b.index(n2));
    let servers = |f: &Frame| f.server[ia].zip(f.server[ib]);
    let (Some(p), Some(c)) = (servers(prev), servers(cur)) else {
        return EventCause::CoverageLoss;
    };
    if let Some((sa, sb)) = servers(absent) {
        let planes = (absent.planes_of[sa], absent.planes_of[sb]);
        if absent.seam.is_some() && n1 > 1 && (planes == (1, n1) || planes == (n1, 1)) {
            return EventCause::SeamDrift;
        }
    }
    if e.kind == VirtualLinkKind::Horizontal {
        let split = |f: &Frame, (sa, sb): (usize, usize)| f.polar[sa] != f.polar[sb];
        if split(prev, p) || split(cur, c) {
            return EventCause::AsyncSwitch;
        }
        let polar = |f: &Frame, (sa, sb): (usize, usize)| f.polar[sa] || f.polar[sb];
        if p == c || polar(prev, p) || polar(cur, c) {
            return EventCause::Polar;
        }
    }
    EventCause::Handover
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::rad;
    use crate::division::region_boundaries;

    #[test]
    fn static_graph_counts() {
        let g = build_static_graph(18, 36, &RegionBoundaries { va: 14, vb: 19, vc: 32 });
        assert_eq!(g.count(VirtualLinkKind::Vertical), 648);
        assert_eq!(g.count(VirtualLinkKind::Horizontal), 476);
        assert!(g.is_connected());
        assert_eq!(g, build_static_graph(18, 36, &region_boundaries(36, rad(70.0))));

        let g = build_static_graph(2, 4, &RegionBoundaries { va: 0, vb: 3, vc: 2 });
        assert_eq!(g.count(VirtualLinkKind::Horizontal), 0);
        assert_eq!(g.count(VirtualLinkKind::Vertical), 8);
        assert!(!g.is_connected());
    }

    #[test]
    fn no_seam_links() {
        let g = build_static_graph(6, 12, &region_boundaries(12, rad(80.0)));
        assert!(g
            .edges
            .iter()
            .all(|e| e.kind == VirtualLinkKind::Vertical || e.b.h == e.a.h + 1));
    }

    #[test]
    fn csd_instance_is_the_static_graph() {
        let c = ConstellationConfig::new(18, 36, 2, 1_190_000.0, rad(70.0)).unwrap();
        let d = DivisionConfig::matched(&c, IslMode::Optimized);
        let g = build_static_graph(18, 36, &crate::division::mode_boundaries(&c, IslMode::Optimized));
        for k in [0.0, 1.0, 7.0, 20.0] {
            let t = k * c.slot_interval();
            let snap = snapshot_edges(&c, IslMode::Optimized, &d, ShutoffRule::RowCell, t);
            let map = AddressMap::csd(&c, &d, &snap.states);
            assert_eq!(map.conflicts, 0);
            assert_eq!(map_snapshot(&snap, &map, 36), g.edges);
        }
    }

    #[test]
    fn matched_switching_epochs_are_slot_intervals() {
        let c = ConstellationConfig::new(18, 36, 6, 1_190_000.0, rad(70.0)).unwrap();
        let d = DivisionConfig::matched(&c, IslMode::Optimized);
        let e = switching_epochs(&c, &d, c.period);
        assert_eq!(e.len(), 37);
        for (k, t) in e.iter().enumerate() {
            assert!((t - k as f64 * c.slot_interval()).abs() < 1e-6);
        }
    }

    #[test]
    fn csd_is_static_short_run() {
        let c = ConstellationConfig::new(18, 36, 2, 1_190_000.0, rad(70.0)).unwrap();
        let r = staticness_report(
            &c,
            &StaticnessOptions::new(VnMethod::Csd, IslMode::Optimized, c.period / 4.0, 60),
        )
        .unwrap();
        assert_eq!(r.event_count, 0);
        assert_eq!(r.static_mismatches, 0);
    }

    #[test]
    fn rejects_single_sample() {
        let c = ConstellationConfig::new(6, 12, 0, 1_190_000.0, rad(70.0)).unwrap();
        let o = StaticnessOptions::new(VnMethod::Csd, IslMode::Conventional, 100.0, 1);
        assert!(matches!(
            staticness_report(&c, &o),
            Err(Error::Config { field: "samples", .. })
        ));
    }
}
