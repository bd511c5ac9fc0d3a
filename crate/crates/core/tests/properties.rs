use std::collections::HashSet;

use num_rational::Rational64;
use proptest::prelude::*;

use leo_vn::analysis::{dijkstra, FlowNetwork};
use leo_vn::angle::{rad, wrap_two_pi};
use leo_vn::constellation::{propagate_all, ConstellationConfig, SatelliteId};
use leo_vn::division::{
    classify_region, csd_map, fold_latitude_deg, grd_switch_interval, mode_boundaries, region_boundaries,
    DivisionConfig,
};
use leo_vn::graph::{build_static_graph, VirtualLinkKind};
use leo_vn::isl::{
    h_neighbor, hisl_count_analytic, phase_analysis, snapshot_edges, theorem1_bruteforce, IslMode, ShutoffRule, Side,
};
use leo_vn::oracle::{min_cut_value, region_boundaries_scan, shortest_by_enumeration};
use leo_vn::verify::{random_flow_instance, random_path_instance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mode() -> impl Strategy<Value = IslMode> {
    prop_oneof![Just(IslMode::Conventional), Just(IslMode::Optimized)]
}

/// (n1, n2, F) with F < n2.
fn walker() -> impl Strategy<Value = (usize, usize, usize)> {
    (2usize..=12, 4usize..=24).prop_flat_map(|(n1, n2)| (Just(n1), Just(n2), 0..n2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wrap_stays_in_range(a in -1e4f64..1e4) {
        let w = wrap_two_pi(a);
        prop_assert!((0.0..std::f64::consts::TAU).contains(&w));
    }

    #[test]
    fn folded_latitude_in_range(p in -720.0f64..720.0) {
        let l = fold_latitude_deg(p);
        prop_assert!((-90.0..=90.0).contains(&l));
    }

    #[test]
    fn epoch_mapping_is_a_bijection((n1, n2, f) in walker(), polar in 45u32..=89, m in mode()) {
        let c = ConstellationConfig::new(n1, n2, f, 1_000_000.0, rad(polar as f64)).unwrap();
        let d = DivisionConfig::matched(&c, m);
        let addrs: HashSet<_> = propagate_all(&c, 0.0).iter().map(|s| csd_map(s, &c, &d)).collect();
        prop_assert_eq!(addrs.len(), n1 * n2);
    }

    #[test]
    fn boundaries_are_ordered(n2 in 2usize..=80, polar in 1u32..=90) {
        let b = region_boundaries(n2, rad(polar as f64));
        prop_assert!(b.va < b.vb);
        prop_assert!(b.vb <= b.vc + 1);
        prop_assert!(b.vc <= n2);
        let scan = region_boundaries_scan(2, n2, Rational64::from_integer(polar as i64), 0);
        prop_assert_eq!(b, scan);
    }

    #[test]
    fn optimized_spread_never_larger((n1, n2, f) in walker()) {
        let pa = phase_analysis(n1, n2, f);
        prop_assert!(pa.optimized_max_quanta <= pa.conventional_max_quanta);
        prop_assert!(pa.offsets.iter().all(|&o| o < n1 as u64));
    }

    #[test]
    fn neighbors_are_mutual((n1, n2, f) in walker(), m in mode(), h in 1usize..=12, j in 1usize..=24) {
        let c = ConstellationConfig::new(n1, n2, f, 1_000_000.0, rad(70.0)).unwrap();
        let sat = SatelliteId::new(h.min(n1), j.min(n2));
        if let Some(e) = h_neighbor(&c, sat, Side::East, m) {
            prop_assert_eq!(e.plane, sat.plane + 1);
            prop_assert_eq!(h_neighbor(&c, e, Side::West, m), Some(sat));
        } else {
            prop_assert_eq!(sat.plane, n1);
        }
    }

    #[test]
    fn static_links_follow_the_address(n1 in 2usize..=12, n2 in 4usize..=40, polar in 30u32..=90) {
        let b = region_boundaries(n2, rad(polar as f64));
        let g = build_static_graph(n1, n2, &b);
        for e in &g.edges {
            match e.kind {
                VirtualLinkKind::Vertical => {
                    prop_assert_eq!(e.a.h, e.b.h);
                    let dv = e.a.v.abs_diff(e.b.v);
                    prop_assert!(dv == 1 || dv == n2 - 1);
                }
                VirtualLinkKind::Horizontal => {
                    prop_assert_eq!(e.a.v, e.b.v);
                    prop_assert_eq!(e.b.h, e.a.h + 1);
                    prop_assert!(classify_region(e.a.v, &b).hisl_on());
                }
            }
        }
        prop_assert_eq!(g.count(VirtualLinkKind::Horizontal), hisl_count_analytic(n1, n2, &b).hisl);
    }

    #[test]
    fn theorem1_small((n1, n2, f) in (2usize..=8, 4usize..=16).prop_flat_map(|(a, b)| (Just(a), Just(b), 0..b))) {
        let brute = theorem1_bruteforce(n1, n2, f).unwrap();
        prop_assert_eq!(brute.min_max_quanta, phase_analysis(n1, n2, f).optimized_max_quanta);
    }

    #[test]
    fn switch_interval_is_exact(t in 100.0f64..100_000.0, n2 in 1usize..500) {
        prop_assert_eq!(grd_switch_interval(t, n2), t / n2 as f64);
    }

    #[test]
    fn maxflow_is_mincut(seed in any::<u64>(), nodes in 3usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arcs = random_flow_instance(&mut rng, nodes);
        let mut net = FlowNetwork::new(nodes);
        for &(a, b, cap, cost) in &arcs {
            net.add_arc(a, b, cap, cost);
        }
        let flow = net.min_cost_max_flow(0, nodes - 1).flow;
        let plain: Vec<_> = arcs.iter().map(|&(a, b, c, _)| (a, b, c)).collect();
        prop_assert_eq!(flow, min_cut_value(nodes, &plain, 0, nodes - 1));
    }

    #[test]
    fn dijkstra_is_exhaustive_optimum(seed in any::<u64>(), nodes in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let adj = random_path_instance(&mut rng, nodes);
        prop_assert_eq!(dijkstra(&adj, 0), shortest_by_enumeration(&adj, 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Geometric snapshot counts agree with the closed form at switching
    /// epochs for any matched division, as long as one inter-plane step
    /// cannot carry a row across a whole polar cap (Δf < cap + ωf).
    #[test]
    fn snapshot_counts_match((n1, n2, f) in walker(), polar in 50u32..=85, m in mode(), k in 0usize..24) {
        let cap = 180 - 2 * polar as usize;
        prop_assume!(f * 360 < cap * n1 * n2 + 360 * n1);
        let c = ConstellationConfig::new(n1, n2, f, 1_000_000.0, rad(polar as f64)).unwrap();
        let d = DivisionConfig::matched(&c, m);
        let t = (k % n2) as f64 * c.slot_interval();
        let snap = snapshot_edges(&c, m, &d, ShutoffRule::RowCell, t);
        let want = hisl_count_analytic(n1, n2, &mode_boundaries(&c, m)).hisl;
        prop_assert_eq!(snap.active_hisl_count(), want);
    }
}
