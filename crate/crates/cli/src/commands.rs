use std::path::{Path, PathBuf};

use serde::Serialize;

use leo_vn::analysis::{sweep, FlowScenario, SweepOptions, SweepResult, SPEED_OF_LIGHT};
use leo_vn::config::ConfigFile;
use leo_vn::constellation::ConstellationConfig;
use leo_vn::division::{
    cell_bounds, classify_region, mode_boundaries, region_boundaries, DivisionConfig, VirtualAddress,
};
use leo_vn::graph::{default_samples, staticness_report, StaticnessOptions};
use leo_vn::isl::{bh_isl_planes, phase_analysis, snapshot_edges, theorem1_bruteforce, IslMode};
use leo_vn::verify::{verify, VerifyHooks};

use crate::args::*;
use crate::output::{digest, now, resolve_out, write_csv, write_json, DivideRow, Manifest};
use crate::{CliError, Result};

struct Run {
    subcommand: &'static str,
    args: Vec<String>,
    started: String,
    digest: String,
    seed: Option<u64>,
}

impl Run {
    fn finish(self, data: &Path, extra: &[&Path]) -> Result<()> {
        let outputs = std::iter::once(data)
            .chain(extra.iter().copied())
            .map(|p| p.display().to_string())
            .collect();
        Manifest {
            config_digest: self.digest,
            seed: self.seed,
            subcommand: self.subcommand.to_string(),
            args: self.args,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs,
            started: self.started,
            finished: now(),
        }
        .write(data)
    }
}

pub(crate) fn dispatch(cli: Cli, args: Vec<String>, hooks: &VerifyHooks) -> Result<()> {
    let run = |subcommand, digest: String, seed| Run {
        subcommand,
        args: args.clone(),
        started: now(),
        digest,
        seed,
    };
    match cli.command {
        Command::Divide(a) => {
            let (file, _) = model_config(&a.model, false)?;
            divide(&a, &file, run("divide", digest(&file.to_toml()), None))
        }
        Command::Snapshot(a) => {
            let (file, _) = model_config(&a.model, false)?;
            snapshot(&a, &file, run("snapshot", digest(&file.to_toml()), None))
        }
        Command::Staticness(a) => {
            let (file, _) = model_config(&a.model, false)?;
            staticness(&a, &file, run("staticness", digest(&file.to_toml()), None))
        }
        Command::SweepHisl(a) => sweep_cmd(&a, SweepOptions::default(), "sweep-hisl", &run),
        Command::Throughput(a) => {
            let scenario = FlowScenario {
                isl_capacity_gbps: a.isl_capacity_gbps,
                ..FlowScenario::default()
            };
            scenario.validate()?;
            let opts = SweepOptions {
                throughput: Some(scenario),
                latency: None,
                snapshots: positive("snapshots", a.snapshots)?,
            };
            sweep_cmd(&a.sweep, opts, "throughput", &run)
        }
        Command::Latency(a) => {
            let seed = a
                .sweep
                .seed
                .ok_or_else(|| CliError::Usage("latency draws random pairs and needs --seed".into()))?;
            let opts = SweepOptions {
                throughput: None,
                latency: Some((positive("pairs", a.pairs)?, seed)),
                snapshots: positive("snapshots", a.snapshots)?,
            };
            sweep_cmd(&a.sweep, opts, "latency", &run)
        }
        Command::Theorem1Check(a) => {
            let n2 = a.n2.unwrap_or(2 * a.n1);
            let text = format!("n1 = {}\nn2 = {n2}\nF = {:?}\n", a.n1, a.f);
            theorem1(&a, n2, run("theorem1-check", digest(&text), None))
        }
        Command::Verify(a) => {
            let suite: leo_vn::verify::Suite = a.suite.into();
            verify_cmd(&a, hooks, run("verify", digest(suite.as_str()), None))
        }
    }
}

fn positive(field: &str, n: usize) -> Result<usize> {
    if n == 0 {
        Err(CliError::Usage(format!("--{field} must be at least 1")))
    } else {
        Ok(n)
    }
}

/// Effective configuration: file (or defaults) with flag overrides. Returns
/// the polar thresholds requested; more than one only when `multi`.
fn model_config(m: &ModelArgs, multi: bool) -> Result<(ConfigFile, Vec<f64>)> {
    let mut file = match &m.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            ConfigFile::parse(&text)?
        }
        None => ConfigFile::default(),
    };
    if let Some(v) = m.n1 {
        file.n1 = v;
    }
    if let Some(v) = m.n2 {
        file.n2 = v;
    }
    if let Some(v) = m.f {
        file.phasing = v;
    }
    if let Some(v) = m.altitude_km {
        file.altitude_km = v;
    }
    let polar = match m.polar_deg.as_slice() {
        [] => vec![file.polar_threshold_deg],
        [one] => {
            file.polar_threshold_deg = *one;
            vec![*one]
        }
        many if multi => many.to_vec(),
        _ => return Err(CliError::Usage("--polar-deg takes a single value here".into())),
    };
    // fail early on a bad constellation, naming the field
    file.build()?;
    Ok((file, polar))
}

fn write_rows<T: Serialize>(path: &Path, format: Format, rows: &[T]) -> Result<()> {
    match format {
        Format::Csv => write_csv(path, rows),
        Format::Json => write_json(path, rows),
    }
}

fn default_name(stem: &str, format: Format) -> String {
    match format {
        Format::Csv => format!("{stem}.csv"),
        Format::Json => format!("{stem}.json"),
    }
}

fn divide(a: &DivideArgs, file: &ConfigFile, run: Run) -> Result<()> {
    let c = file.build()?;
    let (division, b) = match a.mode {
        Some(m) => (DivisionConfig::matched(&c, m.into()), mode_boundaries(&c, m.into())),
        None => (
            DivisionConfig::unphased(&c),
            region_boundaries(c.per_plane, c.polar_threshold),
        ),
    };
    let mut rows = Vec::with_capacity(c.satellite_count());
    for h in 1..=c.planes {
        for v in 1..=c.per_plane {
            let cb = cell_bounds(&c, &division, VirtualAddress::new(v, h), a.t);
            rows.push(DivideRow {
                v,
                h,
                region: classify_region(v, &b).as_str().to_string(),
                lon_low: cb.lon_low,
                lon_high: cb.lon_high,
                lat_low: cb.lat_low,
                lat_high: cb.lat_high,
                pole_wrap: cb.pole_wrap,
            });
        }
    }
    let path = resolve_out(a.output.out.as_deref(), &default_name("divide", a.output.format));
    write_rows(&path, a.output.format, &rows)?;
    println!(
        "{} cells (R1 1..={}, R2 {}..={}) -> {}",
        rows.len(),
        b.va,
        b.vb,
        b.vc,
        path.display()
    );
    run.finish(&path, &[])
}

#[derive(Serialize)]
struct EdgeRow {
    t: f64,
    a_plane: usize,
    a_slot: usize,
    b_plane: usize,
    b_slot: usize,
    kind: &'static str,
    direction: &'static str,
    active: bool,
    length_m: f64,
    delay_s: f64,
}

fn snapshot(a: &SnapshotArgs, file: &ConfigFile, run: Run) -> Result<()> {
    let c = file.build()?;
    let mode: IslMode = a.mode.into();
    let division = DivisionConfig::matched(&c, mode);
    let snap = snapshot_edges(&c, mode, &division, a.rule.into(), a.t);
    let n2 = c.per_plane;
    let rows: Vec<EdgeRow> = snap
        .edges
        .iter()
        .map(|e| {
            let length_m = (snap.states[e.a.index(n2)].position - snap.states[e.b.index(n2)].position).norm();
            EdgeRow {
                t: a.t,
                a_plane: e.a.plane,
                a_slot: e.a.slot,
                b_plane: e.b.plane,
                b_slot: e.b.slot,
                kind: e.kind.as_str(),
                direction: e.direction.as_str(),
                active: e.active,
                length_m,
                delay_s: length_m / SPEED_OF_LIGHT,
            }
        })
        .collect();
    let path = resolve_out(a.output.out.as_deref(), &default_name("snapshot", a.output.format));
    write_rows(&path, a.output.format, &rows)?;
    println!(
        "{} links, {} active H-ISLs -> {}",
        rows.len(),
        snap.active_hisl_count(),
        path.display()
    );
    run.finish(&path, &[])
}

#[derive(Serialize)]
struct EventRow {
    t: f64,
    a_v: usize,
    a_h: usize,
    b_v: usize,
    b_h: usize,
    kind: &'static str,
    change: &'static str,
    cause: &'static str,
}

fn staticness(a: &StaticnessArgs, file: &ConfigFile, run: Run) -> Result<()> {
    let c = file.build()?;
    let duration = a.duration_s.unwrap_or(c.period);
    let samples = a.samples.unwrap_or_else(|| default_samples(&c, duration));
    let opts = StaticnessOptions {
        sigma_min: a.sigma_min_deg.to_radians(),
        ..StaticnessOptions::new(a.method.into(), a.mode.into(), duration, samples)
    };
    let report = staticness_report(&c, &opts)?;
    let path = resolve_out(a.out.as_deref(), "staticness.json");
    write_json(&path, &report)?;
    let events: Vec<EventRow> = report
        .events
        .iter()
        .map(|e| EventRow {
            t: e.t,
            a_v: e.edge.a.v,
            a_h: e.edge.a.h,
            b_v: e.edge.b.v,
            b_h: e.edge.b.h,
            kind: e.edge.kind.as_str(),
            change: e.change.as_str(),
            cause: e.cause.as_str(),
        })
        .collect();
    let events_path = events_path(&path);
    write_csv(&events_path, &events)?;
    let by_cause: Vec<String> = report
        .events_by_cause
        .iter()
        .map(|(k, v)| format!("{}={v}", k.as_str()))
        .collect();
    println!(
        "{} {}: {} events over {} samples [{}] -> {}",
        report.method.as_str(),
        report.mode.as_str(),
        report.event_count,
        report.samples,
        by_cause.join(" "),
        path.display()
    );
    run.finish(&path, &[&events_path])
}

fn events_path(report: &Path) -> PathBuf {
    let stem = report.file_stem().unwrap_or_default().to_string_lossy();
    report.with_file_name(format!("{stem}.events.csv"))
}

#[derive(Serialize)]
struct SweepCsvRow {
    #[serde(rename = "F")]
    f: usize,
    polar_deg: f64,
    mode: &'static str,
    #[serde(rename = "N_HISL")]
    n_hisl: Option<usize>,
    throughput_gbps: Option<f64>,
    avg_latency_ms: Option<f64>,
    unreachable_fraction: Option<f64>,
    error: Option<String>,
}

fn sweep_rows(r: &SweepResult) -> Vec<SweepCsvRow> {
    r.rows
        .iter()
        .map(|row| SweepCsvRow {
            f: row.f,
            polar_deg: row.polar_deg,
            mode: row.mode.as_str(),
            n_hisl: row.n_hisl,
            throughput_gbps: row.throughput_gbps,
            avg_latency_ms: row.avg_latency_ms,
            unreachable_fraction: row.unreachable_fraction,
            error: row.error.clone(),
        })
        .collect()
}

fn sweep_cmd(
    a: &SweepArgs,
    opts: SweepOptions,
    name: &'static str,
    run: &dyn Fn(&'static str, String, Option<u64>) -> Run,
) -> Result<()> {
    let (file, polar) = model_config(&a.model, true)?;
    let f_max = a.f_max.unwrap_or(file.n2 - 1);
    if a.f_min > f_max {
        return Err(CliError::Usage(format!("--f-min {} exceeds --f-max {f_max}", a.f_min)));
    }
    let f: Vec<usize> = (a.f_min..=f_max).collect();
    let modes: Vec<IslMode> = match a.mode {
        Some(m) => vec![m.into()],
        None => IslMode::ALL.to_vec(),
    };
    let template: ConstellationConfig = ConfigFile {
        phasing: 0,
        ..file.clone()
    }
    .build()?;
    let result = sweep(&template, &f, &polar, &modes, &opts);
    let digest_text = format!("{}polar_deg = {polar:?}\n", file.to_toml());
    let run = run(name, digest(&digest_text), a.seed);
    let path = resolve_out(a.output.out.as_deref(), &default_name(name, a.output.format));
    write_rows(&path, a.output.format, &sweep_rows(&result))?;
    let errors = result.rows.iter().filter(|r| r.error.is_some()).count();
    println!("{} rows ({errors} errors) -> {}", result.rows.len(), path.display());
    run.finish(&path, &[])
}

#[derive(Serialize)]
struct Theorem1Row {
    n1: usize,
    n2: usize,
    #[serde(rename = "F")]
    f: usize,
    brute_force_quanta: u64,
    formula_quanta: u64,
    /// `(K-1)·F` when K is an integer.
    integer_k_quanta: Option<u64>,
    brute_force_bh: String,
    formula_bh: String,
    agree: bool,
}

fn join(set: impl IntoIterator<Item = usize>) -> String {
    set.into_iter().map(|h| h.to_string()).collect::<Vec<_>>().join(";")
}

fn theorem1(a: &Theorem1Args, n2: usize, run: Run) -> Result<()> {
    let fs: Vec<usize> = match a.f {
        Some(f) => vec![f],
        None => (0..n2).collect(),
    };
    let mut rows = Vec::new();
    for f in fs {
        let brute = theorem1_bruteforce(a.n1, n2, f)?;
        let pa = phase_analysis(a.n1, n2, f);
        let integer_k =
            pa.k.filter(|k| k.is_integer())
                .map(|k| (k.to_integer() as u64 - 1) * f as u64);
        // the backward-link placement is only pinned down for F <= n1
        let formula_bh = match pa.k {
            Some(k) if f <= a.n1 => Some(bh_isl_planes(a.n1, k)),
            Some(_) => None,
            None => Some(Default::default()),
        };
        let mut agree = brute.min_max_quanta == pa.optimized_max_quanta;
        agree &= integer_k.is_none_or(|q| q == brute.min_max_quanta);
        if let Some(bh) = &formula_bh {
            agree &= brute.optimal_count > 1 || *bh == brute.bh_boundaries;
        }
        rows.push(Theorem1Row {
            n1: a.n1,
            n2,
            f,
            brute_force_quanta: brute.min_max_quanta,
            formula_quanta: pa.optimized_max_quanta,
            integer_k_quanta: integer_k,
            brute_force_bh: join(brute.bh_boundaries.iter().copied()),
            formula_bh: formula_bh.map(join).unwrap_or_default(),
            agree,
        });
    }
    let path = resolve_out(a.output.out.as_deref(), &default_name("theorem1", a.output.format));
    write_rows(&path, a.output.format, &rows)?;
    run.finish(&path, &[])?;
    match rows.iter().find(|r| !r.agree) {
        None => {
            println!("analytic == brute-force ({} cases) -> {}", rows.len(), path.display());
            Ok(())
        }
        Some(r) => Err(CliError::Mismatch(format!(
            "analytic != brute-force at n1={} n2={} F={}: {} vs {} quanta",
            r.n1, r.n2, r.f, r.formula_quanta, r.brute_force_quanta
        ))),
    }
}

fn verify_cmd(a: &VerifyArgs, hooks: &VerifyHooks, run: Run) -> Result<()> {
    let report = verify(a.suite.into(), hooks);
    let path = resolve_out(a.out.as_deref(), "verify.json");
    write_json(&path, &report)?;
    run.finish(&path, &[])?;
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    println!(
        "verify {}: {}/{} checks passed -> {}",
        report.suite.as_str(),
        report.checks.len() - failed,
        report.checks.len(),
        path.display()
    );
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(CliError::Mismatch(format!("first failing check: {c}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn event_log_name_follows_report() {
        assert_eq!(
            events_path(Path::new("r/grd2.json")),
            PathBuf::from("r/grd2.events.csv")
        );
    }
}
