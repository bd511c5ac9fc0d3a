//! Throughput, latency and H-ISL availability over physical snapshots.

mod flow;
mod metrics;
mod paths;
mod weights;

pub use flow::{FlowNetwork, FlowResult, INF_CAP};
pub use metrics::{
    avg_latency, max_flow_throughput, random_pairs, snapshot_times, sweep, throughput, FlowOutcome, FlowScenario,
    GeoBox, LatencyOutcome, SweepOptions, SweepResult, SweepRow,
};
pub use paths::{dijkstra, WeightedAdjacency};
pub use weights::{weight_snapshot, WeightedEdge, WeightedNetSnapshot, SPEED_OF_LIGHT};
