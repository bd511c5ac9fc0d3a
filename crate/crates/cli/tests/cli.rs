use std::fs;
use std::path::Path;

use leo_vn::config::ConfigFile;
use leo_vn::division::RegionBoundaries;
use leo_vn::division::{cell_bounds, DivisionConfig, VirtualAddress};
use leo_vn::isl::{hisl_count_analytic, HislCount, IslMode};
use leo_vn::verify::VerifyHooks;
use leo_vn_cli::{read_divide_csv, run, run_with_hooks, Manifest, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

fn out(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

fn leo(args: &[&str]) -> i32 {
    run(std::iter::once("leo-vn").chain(args.iter().copied()))
}

#[test]
fn divide_table_round_trips_to_cell_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let path = out(dir.path(), "cells.csv");
    assert_eq!(
        leo(&[
            "divide",
            "--f",
            "2",
            "--mode",
            "optimized",
            "--t-seconds",
            "120",
            "--out",
            &path
        ]),
        EXIT_OK
    );

    let rows = read_divide_csv(Path::new(&path)).unwrap();
    assert_eq!(rows.len(), 18 * 36);
    let c = ConfigFile {
        phasing: 2,
        ..ConfigFile::default()
    }
    .build()
    .unwrap();
    let division = DivisionConfig::matched(&c, IslMode::Optimized);
    for r in &rows {
        assert_eq!(
            r.bounds(),
            cell_bounds(&c, &division, VirtualAddress::new(r.v, r.h), 120.0),
            "cell ({}, {})",
            r.v,
            r.h
        );
    }
    assert_eq!(rows.iter().filter(|r| r.region == "R1").count(), 13 * 18);
}

#[test]
fn every_output_has_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let path = out(dir.path(), "lat.csv");
    let argv = [
        "latency",
        "--f-max",
        "1",
        "--pairs",
        "50",
        "--snapshots",
        "2",
        "--seed",
        "9",
        "--out",
        &path,
    ];
    assert_eq!(leo(&argv), EXIT_OK);
    let text = fs::read_to_string(Manifest::path_for(Path::new(&path))).unwrap();
    let m: Manifest = serde_json::from_str(&text).unwrap();
    assert_eq!(m.seed, Some(9));
    assert_eq!(m.subcommand, "latency");
    assert_eq!(m.config_digest.len(), 64);
    assert_eq!(m.outputs, vec![path.clone()]);
    assert_eq!(m.args, argv.map(String::from).to_vec());
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["divide", "--f", "3"],
        &["snapshot", "--f", "5", "--t-seconds", "300"],
        &["sweep-hisl", "--polar-deg", "64,70"],
        &[
            "latency",
            "--f-max",
            "2",
            "--pairs",
            "200",
            "--snapshots",
            "2",
            "--seed",
            "7",
        ],
    ];
    for (i, args) in cases.iter().enumerate() {
        let mut bytes = Vec::new();
        for round in 0..2 {
            let path = out(dir.path(), &format!("{i}-{round}.csv"));
            let mut argv = args.to_vec();
            argv.extend(["--out", &path]);
            assert_eq!(leo(&argv), EXIT_OK, "{args:?}");
            bytes.push(fs::read(&path).unwrap());
        }
        assert_eq!(bytes[0], bytes[1], "{args:?}");
    }
}

#[test]
fn staticness_writes_report_and_event_log() {
    let dir = tempfile::tempdir().unwrap();
    let path = out(dir.path(), "grd1.json");
    let argv = [
        "staticness",
        "--method",
        "grd1",
        "--mode",
        "conventional",
        "--f",
        "2",
        "--samples",
        "200",
        "--out",
        &path,
    ];
    assert_eq!(leo(&argv), EXIT_OK);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let events = fs::read_to_string(dir.path().join("grd1.events.csv")).unwrap();
    assert_eq!(
        events.lines().count() as u64,
        report["event_count"].as_u64().unwrap() + 1
    );
    assert!(events.starts_with("t,a_v,a_h,b_v,b_h,kind,change,cause\n"));
}

#[test]
fn theorem1_check_agrees() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        leo(&[
            "theorem1-check",
            "--n1",
            "9",
            "--n2",
            "18",
            "--f",
            "3",
            "--out",
            &out(dir.path(), "a.csv")
        ]),
        EXIT_OK
    );
    assert_eq!(
        leo(&["theorem1-check", "--n1", "6", "--out", &out(dir.path(), "b.csv")]),
        EXIT_OK
    );
}

fn off_by_one(n1: usize, n2: usize, b: &RegionBoundaries) -> HislCount {
    let mut c = hisl_count_analytic(n1, n2, b);
    c.hisl += 1;
    c
}

#[test]
fn corrupted_count_formula_fails_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = out(dir.path(), "verify.json");
    let hooks = VerifyHooks { hisl_count: off_by_one };
    let code = run_with_hooks(["leo-vn", "verify", "--suite", "counts", "--out", &path], &hooks);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let first = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["passed"] == false)
        .unwrap();
    assert_eq!(first["name"], "analytic_vs_snapshot");

    let path = out(dir.path(), "ok.json");
    assert_eq!(leo(&["verify", "--suite", "counts", "--out", &path]), EXIT_OK);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = out(dir.path(), "x.csv");
    assert_eq!(leo(&["frobnicate"]), EXIT_USAGE);
    assert_eq!(leo(&["latency", "--out", &o]), EXIT_USAGE);
    assert_eq!(leo(&["divide", "--polar-deg", "60,70", "--out", &o]), EXIT_USAGE);
    assert_eq!(
        leo(&["sweep-hisl", "--f-min", "5", "--f-max", "2", "--out", &o]),
        EXIT_USAGE
    );
    assert_eq!(leo(&["divide", "--n1", "0", "--out", &o]), EXIT_USAGE);

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "n1 = \"eighteen\"\n").unwrap();
    assert_eq!(
        leo(&["divide", "--config", bad.to_str().unwrap(), "--out", &o]),
        EXIT_USAGE
    );
    fs::write(&bad, "n1 = 18\nwarp = 9\n").unwrap();
    assert_eq!(
        leo(&["divide", "--config", bad.to_str().unwrap(), "--out", &o]),
        EXIT_USAGE
    );
    assert_eq!(
        leo(&["divide", "--config", "/nonexistent/c.toml", "--out", &o]),
        EXIT_USAGE
    );
    assert!(!Path::new(&o).exists());
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "n1 = 6\nn2 = 12\nF = 1\n").unwrap();
    let o = out(dir.path(), "s.csv");
    assert_eq!(
        leo(&[
            "sweep-hisl",
            "--config",
            cfg.to_str().unwrap(),
            "--n2",
            "14",
            "--out",
            &o
        ]),
        EXIT_OK
    );
    // F runs over 0..n2 with the overridden n2, both modes
    assert_eq!(fs::read_to_string(&o).unwrap().lines().count(), 1 + 14 * 2);
}

#[test]
fn divide_reference_table_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = out(dir.path(), "d.csv");
    assert_eq!(
        leo(&[
            "divide",
            "--n1",
            "18",
            "--n2",
            "36",
            "--polar-deg",
            "70",
            "--out",
            &path
        ]),
        EXIT_OK
    );
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "v,h,region,lat_low_deg,lat_high_deg,lon_low_deg,lon_high_deg,pole_wrap"
    );
    assert_eq!(lines.count(), 648);
    assert!(!text.contains('\r'));
}
