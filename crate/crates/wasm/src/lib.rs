//! wasm-bindgen surface for `www/index.html`. Each export returns a JSON
//! string; errors come back as a thrown JS string.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use leo_vn::analysis::{sweep, SweepOptions};
use leo_vn::angle::rad;
use leo_vn::constellation::ConstellationConfig;
use leo_vn::division::{cell_bounds, classify_region, mode_boundaries, DivisionConfig, VirtualAddress};
use leo_vn::isl::{snapshot_edges, IslMode, LinkKind, ShutoffRule};

const ALTITUDE_M: f64 = 1_190_000.0;

fn config(n1: usize, n2: usize, f: usize, polar_deg: f64) -> Result<ConstellationConfig, String> {
    ConstellationConfig::new(n1, n2, f, ALTITUDE_M, rad(polar_deg)).map_err(|e| e.to_string())
}

fn mode(name: &str) -> Result<IslMode, String> {
    name.parse().map_err(|e: leo_vn::Error| e.to_string())
}

fn json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Cell {
    v: usize,
    h: usize,
    region: &'static str,
    lon: [f64; 2],
    lat: [f64; 2],
    pole_wrap: bool,
}

pub fn division_grid_json(
    n1: usize,
    n2: usize,
    f: usize,
    polar_deg: f64,
    mode_name: &str,
    t: f64,
) -> Result<String, String> {
    let c = config(n1, n2, f, polar_deg)?;
    let m = mode(mode_name)?;
    let division = DivisionConfig::matched(&c, m);
    let b = mode_boundaries(&c, m);
    let mut cells = Vec::with_capacity(n1 * n2);
    for h in 1..=n1 {
        for v in 1..=n2 {
            let cb = cell_bounds(&c, &division, VirtualAddress::new(v, h), t);
            cells.push(Cell {
                v,
                h,
                region: classify_region(v, &b).as_str(),
                lon: [cb.lon_low, cb.lon_high],
                lat: [cb.lat_low, cb.lat_high],
                pole_wrap: cb.pole_wrap,
            });
        }
    }
    json(&cells)
}

#[derive(Serialize)]
struct SweepPoint {
    f: usize,
    conventional: Option<usize>,
    optimized: Option<usize>,
}

pub fn hisl_sweep_json(n1: usize, n2: usize, polar_deg: f64) -> Result<String, String> {
    let template = config(n1, n2, 0, polar_deg)?;
    let fs: Vec<usize> = (0..n2).collect();
    let r = sweep(&template, &fs, &[polar_deg], &IslMode::ALL, &SweepOptions::default());
    let pick = |f, m| {
        r.rows
            .iter()
            .find(|row| row.f == f && row.mode == m)
            .and_then(|row| row.n_hisl)
    };
    let points: Vec<SweepPoint> = fs
        .iter()
        .map(|&f| SweepPoint {
            f,
            conventional: pick(f, IslMode::Conventional),
            optimized: pick(f, IslMode::Optimized),
        })
        .collect();
    json(&points)
}

#[derive(Serialize)]
struct Sat {
    plane: usize,
    slot: usize,
    lat: f64,
    lon: f64,
}

#[derive(Serialize)]
struct Link {
    a: usize,
    b: usize,
    horizontal: bool,
    active: bool,
}

#[derive(Serialize)]
struct SnapshotView {
    sats: Vec<Sat>,
    links: Vec<Link>,
    active_hisl: usize,
}

pub fn snapshot_view_json(
    n1: usize,
    n2: usize,
    f: usize,
    polar_deg: f64,
    mode_name: &str,
    t: f64,
) -> Result<String, String> {
    let c = config(n1, n2, f, polar_deg)?;
    let m = mode(mode_name)?;
    let snap = snapshot_edges(&c, m, &DivisionConfig::matched(&c, m), ShutoffRule::RowCell, t);
    let sats = snap
        .states
        .iter()
        .map(|s| Sat {
            plane: s.sat.plane,
            slot: s.sat.slot,
            lat: s.lat.to_degrees(),
            lon: s.lon.to_degrees(),
        })
        .collect();
    let links = snap
        .edges
        .iter()
        .map(|e| Link {
            a: e.a.index(n2),
            b: e.b.index(n2),
            horizontal: e.kind == LinkKind::Horizontal,
            active: e.active,
        })
        .collect();
    json(&SnapshotView {
        sats,
        links,
        active_hisl: snap.active_hisl_count(),
    })
}

#[wasm_bindgen]
pub fn division_grid(n1: usize, n2: usize, f: usize, polar_deg: f64, mode: &str, t: f64) -> Result<String, JsValue> {
    division_grid_json(n1, n2, f, polar_deg, mode, t).map_err(JsValue::from)
}

#[wasm_bindgen]
pub fn hisl_sweep(n1: usize, n2: usize, polar_deg: f64) -> Result<String, JsValue> {
    hisl_sweep_json(n1, n2, polar_deg).map_err(JsValue::from)
}

#[wasm_bindgen]
pub fn snapshot_view(n1: usize, n2: usize, f: usize, polar_deg: f64, mode: &str, t: f64) -> Result<String, JsValue> {
    snapshot_view_json(n1, n2, f, polar_deg, mode, t).map_err(JsValue::from)
}

/// Orbital period in seconds, for the time slider.
#[wasm_bindgen]
pub fn orbital_period(n1: usize, n2: usize, polar_deg: f64) -> Result<f64, JsValue> {
    config(n1, n2, 0, polar_deg).map(|c| c.period).map_err(JsValue::from)
}
