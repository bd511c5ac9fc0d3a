use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::flow::{FlowNetwork, INF_CAP};
use super::paths::dijkstra;
use super::weights::{weight_snapshot, WeightedNetSnapshot};
use crate::angle::deg;
use crate::constellation::ConstellationConfig;
use crate::division::{mode_boundaries, DivisionConfig};
use crate::isl::{hisl_count_analytic, snapshot_edges, IslMode, ShutoffRule};

/// Latitude/longitude box in degrees, bounds inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoBox {
    pub lat_min: f64,
    pub lat_max: f64,
    pub lon_min: f64,
    pub lon_max: f64,
}

impl GeoBox {
    pub fn contains(&self, lat_deg: f64, lon_deg: f64) -> bool {
        (self.lat_min..=self.lat_max).contains(&lat_deg) && (self.lon_min..=self.lon_max).contains(&lon_deg)
    }

    pub fn overlaps(&self, other: &GeoBox) -> bool {
        self.lat_min <= other.lat_max
            && other.lat_min <= self.lat_max
            && self.lon_min <= other.lon_max
            && other.lon_min <= self.lon_max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowScenario {
    pub source: GeoBox,
    pub sink: GeoBox,
    pub isl_capacity_gbps: f64,
}

impl Default for FlowScenario {
    /// North America to Europe/Middle East.
    fn default() -> Self {
        FlowScenario {
            source: GeoBox {
                lat_min: 20.0,
                lat_max: 50.0,
                lon_min: -130.0,
                lon_max: -60.0,
            },
            sink: GeoBox {
                lat_min: 20.0,
                lat_max: 50.0,
                lon_min: 0.0,
                lon_max: 70.0,
            },
            isl_capacity_gbps: 1.0,
        }
    }
}

impl FlowScenario {
    pub fn validate(&self) -> crate::Result<()> {
        if self.source.overlaps(&self.sink) {
            return Err(crate::Error::config("scenario", "source and sink regions overlap"));
        }
        if !(self.isl_capacity_gbps > 0.0 && self.isl_capacity_gbps.is_finite()) {
            return Err(crate::Error::config(
                "isl_capacity",
                "must be a positive number of Gbps",
            ));
        }
        Ok(())
    }

    /// ISL capacity in the integer unit used by the flow solver (Mbps).
    fn capacity_units(&self) -> i64 {
        (self.isl_capacity_gbps * 1000.0).round() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowOutcome {
    pub gbps: f64,
    /// Total delay·flow cost of the optimum, Mbps·ps.
    pub cost: i64,
    pub source_sats: usize,
    pub sink_sats: usize,
    pub diagnostic: Option<String>,
}

/// Maximum source-to-sink flow over the active ISLs, routed at minimum
/// total delay. Ground links are unbounded; a satellite over both regions
/// only attaches to the source.
pub fn max_flow_throughput(w: &WeightedNetSnapshot, scenario: &FlowScenario) -> FlowOutcome {
    let n = w.node_count();
    let mut net = FlowNetwork::new(n + 2);
    let (s, t) = (n, n + 1);
    let cap = scenario.capacity_units();
    for e in &w.edges {
        net.add_edge(e.a.index(w.per_plane), e.b.index(w.per_plane), cap, e.delay_ps() as i64);
    }
    let (mut src, mut snk) = (0, 0);
    for (i, st) in w.states.iter().enumerate() {
        let (lat, lon) = (deg(st.lat), deg(st.lon));
        if scenario.source.contains(lat, lon) {
            net.add_arc(s, i, INF_CAP, 0);
            src += 1;
        } else if scenario.sink.contains(lat, lon) {
            net.add_arc(i, t, INF_CAP, 0);
            snk += 1;
        }
    }
    if src == 0 || snk == 0 {
        return FlowOutcome {
            gbps: 0.0,
            cost: 0,
            source_sats: src,
            sink_sats: snk,
            diagnostic: Some(format!("empty coverage: {src} source and {snk} sink satellites")),
        };
    }
    let r = net.min_cost_max_flow(s, t);
    FlowOutcome {
        gbps: r.flow as f64 / 1000.0,
        cost: r.cost,
        source_sats: src,
        sink_sats: snk,
        diagnostic: None,
    }
}

/// `count` evenly spaced times over one period, starting at epoch.
pub fn snapshot_times(config: &ConstellationConfig, count: usize) -> Vec<f64> {
    (0..count).map(|k| config.period * k as f64 / count as f64).collect()
}

fn weighted_snapshots(config: &ConstellationConfig, mode: IslMode, count: usize) -> Vec<WeightedNetSnapshot> {
    let division = DivisionConfig::matched(config, mode);
    let build = |t: f64| {
        weight_snapshot(
            config,
            &snapshot_edges(config, mode, &division, ShutoffRule::RowCell, t),
        )
    };
    let times = snapshot_times(config, count);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        times.par_iter().map(|&t| build(t)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        times.iter().map(|&t| build(t)).collect()
    }
}

/// Mean max-flow throughput (Gbps) over `snapshots` times in one period.
pub fn throughput(config: &ConstellationConfig, mode: IslMode, scenario: &FlowScenario, snapshots: usize) -> f64 {
    let snaps = weighted_snapshots(config, mode, snapshots.max(1));
    let total: f64 = snaps.iter().map(|w| max_flow_throughput(w, scenario).gbps).sum();
    total / snaps.len() as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatencyOutcome {
    /// Mean one-way propagation delay over reachable (pair, snapshot)
    /// samples, milliseconds. `NaN` when nothing was reachable.
    pub mean_ms: f64,
    pub reachable: usize,
    pub unreachable: usize,
}

impl LatencyOutcome {
    pub fn unreachable_fraction(&self) -> f64 {
        self.unreachable as f64 / (self.reachable + self.unreachable).max(1) as f64
    }
}

/// Draws `pairs` ordered pairs of distinct satellites from a ChaCha8
/// stream seeded with `seed` (each index is one `u32` draw).
pub fn random_pairs(satellites: usize, pairs: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = satellites as u32;
    let mut out = Vec::with_capacity(pairs);
    while out.len() < pairs {
        let a = rng.random_range(0..n) as usize;
        let b = rng.random_range(0..n) as usize;
        if a != b || satellites < 2 {
            out.push((a, b));
        }
    }
    out
}

pub fn avg_latency(
    config: &ConstellationConfig,
    mode: IslMode,
    pairs: usize,
    seed: u64,
    snapshots: usize,
) -> LatencyOutcome {
    let pairs = random_pairs(config.satellite_count(), pairs.max(1), seed);
    let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &pairs {
        by_source.entry(a).or_default().push(b);
    }
    let per_snapshot = |w: &WeightedNetSnapshot| -> (u128, usize, usize) {
        let adj = w.adjacency();
        let (mut sum, mut ok, mut lost) = (0u128, 0, 0);
        for (&src, dsts) in &by_source {
            let dist = dijkstra(&adj, src);
            for &d in dsts {
                match dist[d] {
                    Some(ps) => {
                        sum += ps as u128;
                        ok += 1;
                    }
                    None => lost += 1,
                }
            }
        }
        (sum, ok, lost)
    };
    let snaps = weighted_snapshots(config, mode, snapshots.max(1));
    #[cfg(feature = "parallel")]
    let parts: Vec<(u128, usize, usize)> = {
        use rayon::prelude::*;
        snaps.par_iter().map(per_snapshot).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<(u128, usize, usize)> = snaps.iter().map(per_snapshot).collect();
    let (sum, reachable, unreachable) = parts
        .into_iter()
        .fold((0u128, 0, 0), |acc, p| (acc.0 + p.0, acc.1 + p.1, acc.2 + p.2));
    LatencyOutcome {
        mean_ms: if reachable == 0 {
            f64::NAN
        } else {
            sum as f64 / reachable as f64 / 1e9
        },
        reachable,
        unreachable,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "F")]
    pub f: usize,
    pub polar_deg: f64,
    pub mode: IslMode,
    #[serde(rename = "N_HISL")]
    pub n_hisl: Option<usize>,
    pub throughput_gbps: Option<f64>,
    pub avg_latency_ms: Option<f64>,
    pub unreachable_fraction: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    /// Throughput scenario; `None` skips the flow computation.
    pub throughput: Option<FlowScenario>,
    /// `(pairs, seed)`; `None` skips latency.
    pub latency: Option<(usize, u64)>,
    pub snapshots: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            throughput: None,
            latency: None,
            snapshots: 16,
        }
    }
}

/// One row per `(F, Φ_P, mode)` in that nesting order. A point whose
/// configuration is invalid becomes an error row.
pub fn sweep(
    template: &ConstellationConfig,
    f_values: &[usize],
    polar_deg: &[f64],
    modes: &[IslMode],
    opts: &SweepOptions,
) -> SweepResult {
    let points: Vec<(usize, f64, IslMode)> = f_values
        .iter()
        .flat_map(|&f| {
            polar_deg
                .iter()
                .flat_map(move |&p| modes.iter().map(move |&m| (f, p, m)))
        })
        .collect();
    let run = |&(f, p, mode): &(usize, f64, IslMode)| -> SweepRow {
        let mut row = SweepRow {
            f,
            polar_deg: p,
            mode,
            n_hisl: None,
            throughput_gbps: None,
            avg_latency_ms: None,
            unreachable_fraction: None,
            error: None,
        };
        let config = match template
            .clone()
            .with_phasing(f)
            .and_then(|c| c.with_polar_threshold(p.to_radians()))
        {
            Ok(c) => c,
            Err(e) => {
                row.error = Some(e.to_string());
                return row;
            }
        };
        row.n_hisl = Some(hisl_count_analytic(config.planes, config.per_plane, &mode_boundaries(&config, mode)).hisl);
        if let Some(scenario) = &opts.throughput {
            row.throughput_gbps = Some(throughput(&config, mode, scenario, opts.snapshots));
        }
        if let Some((pairs, seed)) = opts.latency {
            let l = avg_latency(&config, mode, pairs, seed, opts.snapshots);
            row.avg_latency_ms = Some(l.mean_ms);
            row.unreachable_fraction = Some(l.unreachable_fraction());
        }
        row
    };
    #[cfg(feature = "parallel")]
    let rows = {
        use rayon::prelude::*;
        points.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows = points.iter().map(run).collect();
    SweepResult { rows }
}
