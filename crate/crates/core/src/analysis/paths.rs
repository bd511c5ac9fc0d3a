use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Adjacency list with non-negative integer weights.
pub type WeightedAdjacency = Vec<Vec<(usize, u64)>>;

/// Single-source shortest distances; `None` for unreachable nodes.
pub fn dijkstra(adj: &WeightedAdjacency, source: usize) -> Vec<Option<u64>> {
    let mut dist = vec![None; adj.len()];
    let mut heap = BinaryHeap::from([Reverse((0u64, source))]);
    dist[source] = Some(0);
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u].is_some_and(|best| d > best) {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if dist[v].is_none_or(|old| nd < old) {
                dist[v] = Some(nd);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graph() {
        let mut adj: WeightedAdjacency = vec![Vec::new(); 5];
        let mut link = |a: usize, b: usize, w: u64| {
            adj[a].push((b, w));
            adj[b].push((a, w));
        };
        link(0, 1, 4);
        link(0, 2, 1);
        link(2, 1, 2);
        link(1, 3, 5);
        let d = dijkstra(&adj, 0);
        assert_eq!(d, vec![Some(0), Some(3), Some(1), Some(8), None]);
    }
}
