//! Acceptance gate. One line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p leo-vn-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use leo_vn::analysis::{sweep, FlowScenario, SweepOptions, SweepRow};
use leo_vn::angle::rad;
use leo_vn::constellation::{ConstellationConfig, SIDEREAL_DAY_S};
use leo_vn::graph::{default_samples, staticness_report, EventCause, StaticnessOptions, VnMethod};
use leo_vn::isl::IslMode;
use leo_vn::verify::{
    count_checks, division_checks, flow_checks, reference_hisl, theorem1_checks, CheckResult, VerifyHooks,
};

const ALTITUDE_M: f64 = 1_190_000.0;

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    passed: bool,
    detail: String,
}

fn all_pass(checks: &[CheckResult]) -> Outcome {
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    Outcome {
        passed: failed.is_empty() && !checks.is_empty(),
        detail: match failed.first() {
            None => format!("{} checks", checks.len()),
            Some(c) => format!("{}/{} failed, first: {c}", failed.len(), checks.len()),
        },
    }
}

fn reference(f: usize) -> ConstellationConfig {
    ConstellationConfig::new(18, 36, f, ALTITUDE_M, rad(70.0)).unwrap()
}

fn c1_region_boundaries() -> Outcome {
    let checks: Vec<_> = division_checks()
        .into_iter()
        .filter(|c| c.name.starts_with("closed_form"))
        .collect();
    all_pass(&checks)
}

fn c2_hisl_counts() -> Outcome {
    let checks: Vec<_> = count_checks(&VerifyHooks::default())
        .into_iter()
        .filter(|c| c.name == "analytic_vs_snapshot")
        .collect();
    all_pass(&checks)
}

fn c3_theorem1() -> Outcome {
    all_pass(&theorem1_checks())
}

fn c4_csd_staticness() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for f in [0, 2, 6] {
        let c = reference(f);
        let start = Instant::now();
        let r = staticness_report(
            &c,
            &StaticnessOptions::new(VnMethod::Csd, IslMode::Optimized, c.period, 720),
        )
        .unwrap();
        let took = start.elapsed();
        passed &= r.event_count == 0 && r.static_mismatches == 0 && took < Duration::from_secs(30);
        parts.push(format!(
            "F={f}: {} events over {} samples in {took:.1?}",
            r.event_count, r.samples
        ));
    }
    Outcome {
        passed,
        detail: parts.join("; "),
    }
}

fn c5_grd_dynamics() -> Outcome {
    let c = reference(2);
    let samples = default_samples(&c, SIDEREAL_DAY_S);
    let grd2 = staticness_report(
        &c,
        &StaticnessOptions::new(VnMethod::Grd2, IslMode::Conventional, SIDEREAL_DAY_S, samples),
    )
    .unwrap();
    let mut seen: Vec<usize> = grd2.seam_column_history.iter().map(|&(_, b)| b).collect();
    seen.sort_unstable();
    seen.dedup();
    let drift = grd2.events_by_cause.get(&EventCause::SeamDrift).copied().unwrap_or(0);

    let grd1 = staticness_report(
        &c,
        &StaticnessOptions::new(VnMethod::Grd1, IslMode::Conventional, SIDEREAL_DAY_S, samples),
    )
    .unwrap();
    let loss = grd1
        .events_by_cause
        .get(&EventCause::CoverageLoss)
        .copied()
        .unwrap_or(0);
    Outcome {
        passed: seen.len() == c.planes && drift >= c.planes && loss >= 1,
        detail: format!(
            "GRD2 seam boundaries visited {}/{}, SEAM_DRIFT {drift}; GRD1 COVERAGE_LOSS {loss} ({samples} samples)",
            seen.len(),
            c.planes
        ),
    }
}

fn c6_hisl_trend() -> Outcome {
    let h = VerifyHooks::default();
    let conv: Vec<usize> = [0, 2, 14]
        .iter()
        .map(|&f| reference_hisl(&h, f, 70.0, IslMode::Conventional))
        .collect();
    let opt_ok = (1..=17)
        .filter(|f| 18 % f == 0)
        .all(|f| reference_hisl(&h, f, 70.0, IslMode::Optimized) == 442);
    let at64 = |f| reference_hisl(&h, f, 64.0, IslMode::Optimized);
    let peaks = [6, 9, 12]
        .iter()
        .all(|&f| at64(f) > at64(f - 1) && at64(f) > at64(f + 1));
    Outcome {
        passed: conv == [476, 408, 0] && opt_ok && peaks,
        detail: format!(
            "conventional F=0,2,14 -> {conv:?}; optimized 442 for integer K: {opt_ok}; 64° peaks at 6,9,12: {peaks} ({:?})",
            (5..=13).map(at64).collect::<Vec<_>>()
        ),
    }
}

fn series(rows: &[SweepRow], mode: IslMode, pick: fn(&SweepRow) -> Option<f64>) -> Vec<(usize, f64)> {
    rows.iter()
        .filter(|r| r.mode == mode)
        .map(|r| (r.f, pick(r).expect("metric computed")))
        .collect()
}

fn c7_throughput() -> Outcome {
    let f: Vec<usize> = (0..=14).collect();
    let opts = SweepOptions {
        throughput: Some(FlowScenario::default()),
        latency: None,
        snapshots: 16,
    };
    let r = sweep(&reference(0), &f, &[70.0], &IslMode::ALL, &opts);
    let opt: Vec<f64> = series(&r.rows, IslMode::Optimized, |r| r.throughput_gbps)
        .into_iter()
        .filter(|&(f, _)| f >= 1)
        .map(|(_, v)| v)
        .collect();
    let conv = series(&r.rows, IslMode::Conventional, |r| r.throughput_gbps);
    let (lo, hi) = opt.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
    let variation = (hi - lo) / lo;
    let (c0, c14) = (conv[0].1, conv[14].1);
    Outcome {
        passed: variation < 0.10 && c14 < 0.25 * c0,
        detail: format!(
            "optimized F=1..14 spans {lo:.3}..{hi:.3} Gbps ({:.1}%); conventional F=14/F=0 = {c14:.3}/{c0:.3} = {:.3}",
            variation * 100.0,
            c14 / c0
        ),
    }
}

fn c8_latency() -> Outcome {
    // Gated over the F values where the conventional mode still has H-ISLs.
    // Past that its network falls apart into planes and the mean over
    // reachable pairs stops being comparable; the first such point is
    // computed and reported but not gated.
    let h = VerifyHooks::default();
    let connected = (0..36)
        .take_while(|&f| reference_hisl(&h, f, 70.0, IslMode::Conventional) > 0)
        .count();
    let f: Vec<usize> = (0..=connected).collect();
    let opts = SweepOptions {
        throughput: None,
        latency: Some((10_000, 42)),
        snapshots: 16,
    };
    let r = sweep(&reference(0), &f, &[70.0], &IslMode::ALL, &opts);
    let mut conv = series(&r.rows, IslMode::Conventional, |r| r.avg_latency_ms);
    let mut opt = series(&r.rows, IslMode::Optimized, |r| r.avg_latency_ms);
    let (_, split_ms) = conv.pop().unwrap();
    opt.pop();
    let split = r
        .rows
        .iter()
        .find(|row| row.f == connected && row.mode == IslMode::Conventional)
        .and_then(|row| row.unreachable_fraction)
        .unwrap_or(f64::NAN);
    let rising = |s: &[(usize, f64)]| s.windows(2).all(|w| w[1].1 >= w[0].1 * 0.98);
    let ordered = conv.iter().zip(&opt).filter(|(c, _)| c.0 >= 1).all(|(c, o)| c.1 >= o.1);
    let fmt = |s: &[(usize, f64)]| s.iter().map(|(_, v)| format!("{v:.2}")).collect::<Vec<_>>().join(" ");
    Outcome {
        passed: rising(&conv) && rising(&opt) && ordered,
        detail: format!(
            "F=0..{}: conventional [{}] ms, optimized [{}] ms; not gated: conventional F={connected} (0 H-ISLs) {split_ms:.2} ms with {:.1}% pairs unreachable",
            connected - 1,
            fmt(&conv),
            fmt(&opt),
            split * 100.0
        ),
    }
}

fn c9_switch_interval() -> Outcome {
    let checks: Vec<_> = division_checks()
        .into_iter()
        .filter(|c| c.name == "grd_switch_interval")
        .collect();
    all_pass(&checks)
}

fn c10_kernels() -> Outcome {
    let checks: Vec<_> = flow_checks()
        .into_iter()
        .filter(|c| c.name != "flow_feasible")
        .collect();
    all_pass(&checks)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "1 region boundaries closed form == constraint scan",
            c1_region_boundaries,
            Duration::from_secs(5),
        ),
        (
            "2 analytic H-ISL count == snapshot count",
            c2_hisl_counts,
            Duration::from_secs(60),
        ),
        (
            "3 brute-force phase spread == mod formula",
            c3_theorem1,
            Duration::from_secs(60),
        ),
        ("4 CSD zero topology events", c4_csd_staticness, Duration::from_secs(90)),
        (
            "5 GRD seam drift and coverage loss",
            c5_grd_dynamics,
            Duration::from_secs(60),
        ),
        ("6 H-ISL availability trend", c6_hisl_trend, Duration::from_secs(5)),
        ("7 throughput trend", c7_throughput, Duration::from_secs(600)),
        ("8 latency trend", c8_latency, Duration::from_secs(600)),
        (
            "9 GRD switching interval T/n2",
            c9_switch_interval,
            Duration::from_secs(5),
        ),
        (
            "10 max-flow/min-cut and shortest-path kernels",
            c10_kernels,
            Duration::from_secs(5),
        ),
    ];
    let mut failures = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let passed = out.passed && took < budget;
        if !passed {
            failures += 1;
        }
        println!(
            "[{}] criterion {name}: {} ({took:.2?}, budget {budget:?})",
            if passed { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!("acceptance: {}/10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
