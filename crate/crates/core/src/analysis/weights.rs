use serde::Serialize;

use crate::constellation::{ConstellationConfig, SatelliteId, SatelliteState};
use crate::isl::{LinkKind, TopologySnapshot};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedEdge {
    pub a: SatelliteId,
    pub b: SatelliteId,
    pub kind: LinkKind,
    pub length_m: f64,
    pub delay_s: f64,
}

impl WeightedEdge {
    /// Delay in whole picoseconds, the integer weight used by the graph
    /// kernels.
    pub fn delay_ps(&self) -> u64 {
        (self.delay_s * 1e12).round() as u64
    }
}

/// Active ISLs of one snapshot with their lengths and delays.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedNetSnapshot {
    pub t: f64,
    pub per_plane: usize,
    pub edges: Vec<WeightedEdge>,
    #[serde(skip)]
    pub states: Vec<SatelliteState>,
}

impl WeightedNetSnapshot {
    pub fn node_count(&self) -> usize {
        self.states.len()
    }

    pub fn adjacency(&self) -> super::WeightedAdjacency {
        let mut adj = vec![Vec::new(); self.node_count()];
        for e in &self.edges {
            let (i, j) = (e.a.index(self.per_plane), e.b.index(self.per_plane));
            adj[i].push((j, e.delay_ps()));
            adj[j].push((i, e.delay_ps()));
        }
        adj
    }
}

pub fn weight_snapshot(config: &ConstellationConfig, snapshot: &TopologySnapshot) -> WeightedNetSnapshot {
    let n2 = config.per_plane;
    let edges = snapshot
        .active_edges()
        .map(|e| {
            let pa = snapshot.states[e.a.index(n2)].position;
            let pb = snapshot.states[e.b.index(n2)].position;
            let length_m = (pa - pb).norm();
            WeightedEdge {
                a: e.a,
                b: e.b,
                kind: e.kind,
                length_m,
                delay_s: length_m / SPEED_OF_LIGHT,
            }
        })
        .collect();
    WeightedNetSnapshot {
        t: snapshot.t,
        per_plane: n2,
        edges,
        states: snapshot.states.clone(),
    }
}
