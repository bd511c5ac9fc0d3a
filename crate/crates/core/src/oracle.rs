//! Slow, exhaustive reference implementations used to check the fast
//! paths. Nothing here shares code with the routines it checks.

use num_rational::Rational64;

use crate::analysis::WeightedAdjacency;
use crate::division::RegionBoundaries;

/// Region boundaries by scanning every row index against the band
/// constraints in exact arithmetic (degrees):
///
/// * `va`: largest `v` with `v·360/n2 + spread ≤ 2Φ_P`
/// * `vb`: smallest `v` with `(v-1)·360/n2 ≥ 180`
/// * `vc`: largest `v` with `v·360/n2 + spread ≤ 180 + 2Φ_P`
///
/// `spread` is given in quanta of `360/(n1·n2)` degrees. Empty regions
/// come back as `va = 0` / `vc = vb - 1`.
pub fn region_boundaries_scan(n1: usize, n2: usize, polar_deg: Rational64, spread_quanta: u64) -> RegionBoundaries {
    let r = |x: i64| Rational64::from_integer(x);
    let wf = r(360) / r(n2 as i64);
    let spread = r(360 * spread_quanta as i64) / r((n1 * n2) as i64);
    let vb = (1..=n2 + 1)
        .find(|&v| r(v as i64 - 1) * wf >= r(180))
        .expect("v = n2 + 1 always qualifies");
    let largest = |limit: Rational64| {
        (0..=n2)
            .filter(|&v| r(v as i64) * wf + spread <= limit)
            .max()
            .unwrap_or(0)
    };
    let va = largest(r(2) * polar_deg).min(vb - 1);
    let vc = largest(r(180) + r(2) * polar_deg).max(vb - 1);
    RegionBoundaries { va, vb, vc }
}

/// Max-flow value as the minimum over every s-t cut. `arcs` are
/// directed `(from, to, capacity)`; at most 20 nodes.
pub fn min_cut_value(nodes: usize, arcs: &[(usize, usize, i64)], s: usize, t: usize) -> i64 {
    assert!(nodes <= 20, "exhaustive cut enumeration is exponential");
    let others: Vec<usize> = (0..nodes).filter(|&v| v != s && v != t).collect();
    let mut best = i64::MAX;
    for mask in 0u32..(1 << others.len()) {
        let mut side = vec![false; nodes];
        side[s] = true;
        for (bit, &v) in others.iter().enumerate() {
            side[v] = mask & (1 << bit) != 0;
        }
        let cut: i64 = arcs
            .iter()
            .filter(|&&(a, b, _)| side[a] && !side[b])
            .map(|&(_, _, c)| c)
            .sum();
        best = best.min(cut);
    }
    best
}

/// Shortest distances by enumerating every simple path from `source`.
pub fn shortest_by_enumeration(adj: &WeightedAdjacency, source: usize) -> Vec<Option<u64>> {
    fn walk(adj: &WeightedAdjacency, u: usize, d: u64, on_path: &mut [bool], best: &mut [Option<u64>]) {
        if best[u].is_none_or(|b| d < b) {
            best[u] = Some(d);
        }
        for &(v, w) in &adj[u] {
            if !on_path[v] {
                on_path[v] = true;
                walk(adj, v, d + w, on_path, best);
                on_path[v] = false;
            }
        }
    }
    let mut best = vec![None; adj.len()];
    let mut on_path = vec![false; adj.len()];
    on_path[source] = true;
    walk(adj, source, 0, &mut on_path, &mut best);
    best
}
