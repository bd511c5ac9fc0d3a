//! Analytic-versus-oracle checks, grouped into suites.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{dijkstra, FlowNetwork, WeightedAdjacency};
use crate::angle::rad;
use crate::constellation::ConstellationConfig;
use crate::division::{
    grd_switch_interval, mode_boundaries, region_boundaries, region_boundaries_phased, DivisionConfig, RegionBoundaries,
};
use crate::error::Error;
use crate::graph::{staticness_report, StaticnessOptions, VnMethod};
use crate::isl::{
    hisl_count_analytic, phase_analysis, snapshot_edges, theorem1_bruteforce, HislCount, IslMode, ShutoffRule,
};
use crate::oracle::{min_cut_value, region_boundaries_scan, shortest_by_enumeration};

/// Altitude used by every suite; only the period depends on it.
const ALTITUDE_M: f64 = 1_190_000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Division,
    Theorem1,
    Staticness,
    Counts,
    Flow,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Division,
        Suite::Theorem1,
        Suite::Counts,
        Suite::Staticness,
        Suite::Flow,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Division => "division",
            Suite::Theorem1 => "theorem1",
            Suite::Staticness => "staticness",
            Suite::Counts => "counts",
            Suite::Flow => "flow",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "division" => Ok(Suite::Division),
            "theorem1" => Ok(Suite::Theorem1),
            "staticness" => Ok(Suite::Staticness),
            "counts" => Ok(Suite::Counts),
            "flow" => Ok(Suite::Flow),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown verify suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub params: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}/{} [{}]", self.suite, self.name, self.params)?;
        if !self.passed {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

fn check(suite: Suite, name: &str, params: String, passed: bool, detail: impl FnOnce() -> String) -> CheckResult {
    CheckResult {
        suite: suite.as_str(),
        name: name.to_string(),
        params,
        passed,
        detail: if passed { String::new() } else { detail() },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Replaceable implementations, so the harness itself can be tested
/// against a known-bad formula.
#[derive(Debug, Clone, Copy)]
pub struct VerifyHooks {
    pub hisl_count: fn(usize, usize, &RegionBoundaries) -> HislCount,
}

impl Default for VerifyHooks {
    fn default() -> Self {
        VerifyHooks {
            hisl_count: hisl_count_analytic,
        }
    }
}

pub fn verify(suite: Suite, hooks: &VerifyHooks) -> VerifyReport {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(match s {
            Suite::Division => division_checks(),
            Suite::Theorem1 => theorem1_checks(),
            Suite::Counts => count_checks(hooks),
            Suite::Staticness => staticness_checks(),
            Suite::Flow => flow_checks(),
            Suite::All => unreachable!(),
        });
    }
    VerifyReport { suite, checks }
}

pub const DIVISION_N2: [usize; 4] = [12, 24, 36, 66];
pub const DIVISION_POLAR_DEG: [i64; 5] = [60, 64, 70, 80, 90];

/// Closed-form boundaries against the exact constraint scan, plus the GRD
/// switching interval.
pub fn division_checks() -> Vec<CheckResult> {
    let s = Suite::Division;
    let mut out = Vec::new();
    for n2 in DIVISION_N2 {
        for p in DIVISION_POLAR_DEG {
            let pr = Rational64::from_integer(p);
            let fast = region_boundaries(n2, rad(p as f64));
            let slow = region_boundaries_scan(2, n2, pr, 0);
            out.push(check(
                s,
                "closed_form_unphased",
                format!("n2={n2} polar={p}"),
                fast == slow,
                || format!("closed form {fast:?} != scan {slow:?}"),
            ));
            for n1 in [4usize, 6, 9, 12, 18] {
                for f in (1..=n1).filter(|f| n1 % f == 0 && *f < n2) {
                    let k = Rational64::new(n1 as i64, f as i64);
                    // (K-1)·Δf in quanta
                    let spread = ((k - 1) * Rational64::from_integer(f as i64)).to_integer() as u64;
                    let fast = region_boundaries_phased(n1, n2, f, rad(p as f64)).expect("F > 0");
                    let slow = region_boundaries_scan(n1, n2, pr, spread);
                    out.push(check(
                        s,
                        "closed_form_phased",
                        format!("n1={n1} n2={n2} F={f} polar={p}"),
                        fast == slow,
                        || format!("closed form {fast:?} != scan {slow:?}"),
                    ));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10 {
        let period = rng.random_range(5_000.0..8_000.0);
        let n2 = rng.random_range(2u32..100) as usize;
        let got = grd_switch_interval(period, n2);
        let want = period / n2 as f64;
        out.push(check(
            s,
            "grd_switch_interval",
            format!("T={period} n2={n2}"),
            got == want,
            || format!("{got} != {want}"),
        ));
    }
    out
}

pub const THEOREM1_N1: [usize; 4] = [4, 6, 9, 12];

/// Brute-force minimum in-row phase spread against the floor/mod formula,
/// with `n2 = 2·n1` and every `F` in `0..n2`.
pub fn theorem1_checks() -> Vec<CheckResult> {
    let s = Suite::Theorem1;
    let mut out = Vec::new();
    for n1 in THEOREM1_N1 {
        let n2 = 2 * n1;
        for f in 0..n2 {
            let params = format!("n1={n1} n2={n2} F={f}");
            let pa = phase_analysis(n1, n2, f);
            let brute = match theorem1_bruteforce(n1, n2, f) {
                Ok(b) => b,
                Err(e) => {
                    out.push(check(s, "bruteforce", params, false, || e.to_string()));
                    continue;
                }
            };
            let formula = pa.optimized_max_quanta;
            out.push(check(
                s,
                "min_spread_mod_form",
                params.clone(),
                brute.min_max_quanta == formula,
                || format!("brute force {} quanta != formula {formula}", brute.min_max_quanta),
            ));
            if let Some(k) = pa.k.filter(|k| k.is_integer()) {
                let closed = ((k - 1) * Rational64::from_integer(f as i64)).to_integer() as u64;
                out.push(check(
                    s,
                    "min_spread_integer_k",
                    params.clone(),
                    brute.min_max_quanta == closed,
                    || format!("brute force {} quanta != (K-1)Δf = {closed}", brute.min_max_quanta),
                ));
            }
            out.push(check(
                s,
                "optimized_not_worse",
                params,
                pa.optimized_max_quanta <= pa.conventional_max_quanta,
                || format!("{} > {}", pa.optimized_max_quanta, pa.conventional_max_quanta),
            ));
        }
    }
    out
}

pub const COUNT_N1: [usize; 3] = [6, 12, 18];
pub const COUNT_N2: [usize; 3] = [12, 24, 36];
pub const COUNT_POLAR_DEG: [f64; 4] = [60.0, 64.0, 70.0, 80.0];
pub const COUNT_F_MAX: usize = 5;

/// Closed-form H-ISL count against active H-ISLs in geometric snapshots at
/// every switching epoch of one period, then the reference sweep values.
pub fn count_checks(hooks: &VerifyHooks) -> Vec<CheckResult> {
    let s = Suite::Counts;
    let mut points = Vec::new();
    for n1 in COUNT_N1 {
        for n2 in COUNT_N2 {
            for p in COUNT_POLAR_DEG {
                for f in 0..=COUNT_F_MAX {
                    for mode in IslMode::ALL {
                        points.push((n1, n2, p, f, mode));
                    }
                }
            }
        }
    }
    let run = |&(n1, n2, p, f, mode): &(usize, usize, f64, usize, IslMode)| -> CheckResult {
        let params = format!("n1={n1} n2={n2} polar={p} F={f} mode={}", mode.as_str());
        let c = match ConstellationConfig::new(n1, n2, f, ALTITUDE_M, rad(p)) {
            Ok(c) => c,
            Err(e) => return check(s, "analytic_vs_snapshot", params, false, || e.to_string()),
        };
        let d = DivisionConfig::matched(&c, mode);
        let want = (hooks.hisl_count)(n1, n2, &mode_boundaries(&c, mode));
        let mismatch = (0..n2).find_map(|k| {
            let t = k as f64 * c.slot_interval();
            let snap = snapshot_edges(&c, mode, &d, ShutoffRule::RowCell, t);
            let got = snap.active_hisl_count();
            let visl = snap.edges.len() - (n1 - 1) * n2;
            (got != want.hisl || visl != want.visl).then(|| {
                format!(
                    "t={t:.3}s: snapshot {got} H / {visl} V, analytic {} H / {} V",
                    want.hisl, want.visl
                )
            })
        });
        check(s, "analytic_vs_snapshot", params, mismatch.is_none(), || {
            mismatch.unwrap_or_default()
        })
    };
    #[cfg(feature = "parallel")]
    let mut out: Vec<CheckResult> = {
        use rayon::prelude::*;
        points.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut out: Vec<CheckResult> = points.iter().map(run).collect();
    out.extend(reference_sweep_checks(hooks));
    out
}

/// N_HISL for the 18×36 reference constellation.
pub fn reference_hisl(hooks: &VerifyHooks, f: usize, polar_deg: f64, mode: IslMode) -> usize {
    let c = ConstellationConfig::new(18, 36, f, ALTITUDE_M, rad(polar_deg)).expect("valid reference config");
    (hooks.hisl_count)(18, 36, &mode_boundaries(&c, mode)).hisl
}

fn reference_sweep_checks(hooks: &VerifyHooks) -> Vec<CheckResult> {
    let s = Suite::Counts;
    let mut out = Vec::new();
    for (f, want) in [(0, 476), (2, 408), (14, 0)] {
        let got = reference_hisl(hooks, f, 70.0, IslMode::Conventional);
        out.push(check(
            s,
            "reference_conventional",
            format!("n1=18 n2=36 polar=70 F={f}"),
            got == want,
            || format!("N_HISL {got} != {want}"),
        ));
    }
    for f in (1..=17).filter(|f| 18 % f == 0) {
        let got = reference_hisl(hooks, f, 70.0, IslMode::Optimized);
        out.push(check(
            s,
            "reference_optimized",
            format!("n1=18 n2=36 polar=70 F={f}"),
            got == 442,
            || format!("N_HISL {got} != 442"),
        ));
    }
    for f in [6, 9, 12] {
        let at = |f| reference_hisl(hooks, f, 64.0, IslMode::Optimized);
        let (l, m, r) = (at(f - 1), at(f), at(f + 1));
        out.push(check(
            s,
            "reference_peak",
            format!("n1=18 n2=36 polar=64 F={f}"),
            m > l && m > r,
            || format!("N_HISL {l}, {m}, {r} at F-1, F, F+1"),
        ));
    }
    out
}

pub const STATICNESS_F: [usize; 3] = [0, 2, 6];

/// Zero topology events for the celestial division over one period.
pub fn staticness_checks() -> Vec<CheckResult> {
    let s = Suite::Staticness;
    STATICNESS_F
        .iter()
        .map(|&f| {
            let params = format!("n1=18 n2=36 polar=70 F={f} mode=optimized samples=720");
            let c = ConstellationConfig::new(18, 36, f, ALTITUDE_M, rad(70.0)).expect("valid config");
            let opts = StaticnessOptions::new(VnMethod::Csd, IslMode::Optimized, c.period, 720);
            match staticness_report(&c, &opts) {
                Ok(r) => check(
                    s,
                    "csd_zero_events",
                    params,
                    r.event_count == 0 && r.static_mismatches == 0,
                    || {
                        format!(
                            "{} events, {} samples off the static graph",
                            r.event_count, r.static_mismatches
                        )
                    },
                ),
                Err(e) => check(s, "csd_zero_events", params, false, || e.to_string()),
            }
        })
        .collect()
}

/// Random directed flow instance: `(nodes, arcs)` with integer
/// capacities and costs, source 0 and sink `nodes - 1`.
pub fn random_flow_instance(rng: &mut ChaCha8Rng, nodes: usize) -> Vec<(usize, usize, i64, i64)> {
    let mut arcs = Vec::new();
    for a in 0..nodes {
        for b in 0..nodes {
            if a != b && b != 0 && a != nodes - 1 && rng.random_bool(0.35) {
                arcs.push((a, b, rng.random_range(1..20i64), rng.random_range(0..10i64)));
            }
        }
    }
    arcs
}

/// Random undirected weighted graph.
pub fn random_path_instance(rng: &mut ChaCha8Rng, nodes: usize) -> WeightedAdjacency {
    let mut adj = vec![Vec::new(); nodes];
    for a in 0..nodes {
        for b in a + 1..nodes {
            if rng.random_bool(0.4) {
                let w = rng.random_range(1..50u64);
                adj[a].push((b, w));
                adj[b].push((a, w));
            }
        }
    }
    adj
}

pub const FLOW_CASES: usize = 20;

/// Flow and shortest-path kernels against exhaustive enumeration.
pub fn flow_checks() -> Vec<CheckResult> {
    let s = Suite::Flow;
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..FLOW_CASES {
        let nodes = 4 + case % 9;
        let arcs = random_flow_instance(&mut rng, nodes);
        let mut net = FlowNetwork::new(nodes);
        for &(a, b, cap, cost) in &arcs {
            net.add_arc(a, b, cap, cost);
        }
        let r = net.min_cost_max_flow(0, nodes - 1);
        let plain: Vec<_> = arcs.iter().map(|&(a, b, c, _)| (a, b, c)).collect();
        let cut = min_cut_value(nodes, &plain, 0, nodes - 1);
        let params = format!("case={case} nodes={nodes} arcs={}", arcs.len());
        out.push(check(s, "maxflow_equals_mincut", params.clone(), r.flow == cut, || {
            format!("flow {} != min cut {cut}", r.flow)
        }));
        let mut balance = vec![0i64; nodes];
        let mut feasible = true;
        for id in net.arc_ids() {
            let f = net.flow_on(id);
            feasible &= (0..=net.arc_capacity(id)).contains(&f);
            let (a, b) = net.arc_ends(id);
            balance[a] -= f;
            balance[b] += f;
        }
        let conserved = balance[1..nodes - 1].iter().all(|&x| x == 0) && balance[nodes - 1] == r.flow;
        out.push(check(s, "flow_feasible", params, feasible && conserved, || {
            format!("capacity ok: {feasible}, node balance {balance:?}")
        }));
    }
    for case in 0..FLOW_CASES {
        let nodes = 3 + case % 8;
        let adj = random_path_instance(&mut rng, nodes);
        let fast = dijkstra(&adj, 0);
        let slow = shortest_by_enumeration(&adj, 0);
        out.push(check(
            s,
            "dijkstra_equals_enumeration",
            format!("case={case} nodes={nodes}"),
            fast == slow,
            || format!("{fast:?} != {slow:?}"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_suites_pass() {
        for s in [Suite::Division, Suite::Theorem1, Suite::Flow] {
            let r = verify(s, &VerifyHooks::default());
            assert!(r.passed(), "{}", r.first_failure().unwrap());
        }
    }

    #[test]
    fn corrupted_count_is_caught() {
        fn off_by_one(n1: usize, n2: usize, b: &RegionBoundaries) -> HislCount {
            HislCount {
                hisl: n1 * b.active_rows(),
                visl: n1 * n2,
            }
        }
        let hooks = VerifyHooks { hisl_count: off_by_one };
        let bad = reference_sweep_checks(&hooks);
        assert!(bad.iter().any(|c| !c.passed));
    }
}
