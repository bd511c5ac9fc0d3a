//! Min-cost max-flow by successive shortest augmenting paths.
//!
//! Dijkstra with Johnson potentials; all arc costs must be non-negative
//! on entry, which holds for propagation delays.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Capacity standing in for "unbounded".
pub const INF_CAP: i64 = i64::MAX / 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
}

#[derive(Debug, Clone, Default)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    /// Original capacity of each arc (reverse arcs start at 0).
    initial: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowResult {
    pub flow: i64,
    pub cost: i64,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            initial: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds a directed arc and returns its id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        assert!(cap >= 0 && cost >= 0, "arcs need non-negative capacity and cost");
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
        });
        self.initial.extend([cap, 0]);
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    /// Undirected link: one arc each way, each with the full capacity.
    pub fn add_edge(&mut self, a: usize, b: usize, cap: i64, cost: i64) -> (usize, usize) {
        (self.add_arc(a, b, cap, cost), self.add_arc(b, a, cap, cost))
    }

    /// Flow currently on arc `id`.
    pub fn flow_on(&self, id: usize) -> i64 {
        self.initial[id] - self.arcs[id].cap
    }

    pub fn arc_ends(&self, id: usize) -> (usize, usize) {
        (self.arcs[id ^ 1].to, self.arcs[id].to)
    }

    pub fn arc_capacity(&self, id: usize) -> i64 {
        self.initial[id]
    }

    /// Forward arc ids, in insertion order.
    pub fn arc_ids(&self) -> impl Iterator<Item = usize> {
        (0..self.arcs.len()).step_by(2)
    }

    pub fn min_cost_max_flow(&mut self, s: usize, t: usize) -> FlowResult {
        let n = self.adj.len();
        let mut potential = vec![0i64; n];
        let mut result = FlowResult { flow: 0, cost: 0 };
        if s == t {
            return result;
        }
        loop {
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            let mut heap = BinaryHeap::new();
            dist[s] = 0;
            heap.push(Reverse((0i64, s)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &id in &self.adj[u] {
                    let a = self.arcs[id];
                    if a.cap == 0 {
                        continue;
                    }
                    let nd = d + a.cost + potential[u] - potential[a.to];
                    if nd < dist[a.to] {
                        dist[a.to] = nd;
                        via[a.to] = id;
                        heap.push(Reverse((nd, a.to)));
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            for v in 0..n {
                if dist[v] < i64::MAX {
                    potential[v] += dist[v];
                }
            }
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                let id = via[v];
                push = push.min(self.arcs[id].cap);
                v = self.arcs[id ^ 1].to;
            }
            if push >= INF_CAP {
                // an uncapacitated s-t path: report it as unbounded
                result.flow = INF_CAP;
                break;
            }
            let mut v = t;
            while v != s {
                let id = via[v];
                self.arcs[id].cap -= push;
                self.arcs[id ^ 1].cap += push;
                result.cost += push * self.arcs[id].cost;
                v = self.arcs[id ^ 1].to;
            }
            result.flow += push;
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond() {
        let mut g = FlowNetwork::new(4);
        g.add_arc(0, 1, 3, 1);
        g.add_arc(0, 2, 2, 5);
        g.add_arc(1, 3, 2, 1);
        g.add_arc(2, 3, 3, 1);
        g.add_arc(1, 2, 5, 1);
        let r = g.min_cost_max_flow(0, 3);
        assert_eq!(r.flow, 5);
        // 2 via 0-1-3 (cost 2), 1 via 0-1-2-3 (3), 2 via 0-2-3 (6)
        assert_eq!(r.cost, 2 * 2 + 3 + 2 * 6);
    }

    #[test]
    fn conservation() {
        let mut g = FlowNetwork::new(5);
        g.add_edge(0, 1, 4, 2);
        g.add_edge(1, 2, 3, 1);
        g.add_edge(0, 3, 2, 1);
        g.add_edge(3, 2, 5, 3);
        g.add_edge(2, 4, 6, 1);
        let r = g.min_cost_max_flow(0, 4);
        assert_eq!(r.flow, 5);
        let mut net = vec![0i64; 5];
        for id in g.arc_ids() {
            let f = g.flow_on(id);
            assert!(f >= 0 && f <= g.arc_capacity(id));
            let (u, v) = g.arc_ends(id);
            net[u] -= f;
            net[v] += f;
        }
        assert_eq!(net, vec![-5, 0, 0, 0, 5]);
    }

    #[test]
    fn disconnected() {
        let mut g = FlowNetwork::new(3);
        g.add_arc(0, 1, 7, 1);
        assert_eq!(g.min_cost_max_flow(0, 2), FlowResult { flow: 0, cost: 0 });
    }
}
