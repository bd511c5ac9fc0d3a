use serde_json::Value;

use leo_vn_wasm::{division_grid_json, hisl_sweep_json, snapshot_view_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn grid_has_one_cell_per_satellite() {
    let cells = parse(division_grid_json(18, 36, 2, 70.0, "optimized", 0.0).unwrap());
    let cells = cells.as_array().unwrap();
    assert_eq!(cells.len(), 648);
    assert_eq!(cells[0]["region"], "R1");
    assert_eq!(cells[0]["lat"], serde_json::json!([-70.0, -60.0]));
}

#[test]
fn sweep_matches_reference_counts() {
    let points = parse(hisl_sweep_json(18, 36, 70.0).unwrap());
    let points = points.as_array().unwrap();
    assert_eq!(points.len(), 36);
    assert_eq!(points[0]["conventional"], 476);
    assert_eq!(points[2]["conventional"], 408);
    assert_eq!(points[2]["optimized"], 442);
    assert_eq!(points[14]["conventional"], 0);
}

#[test]
fn snapshot_lists_satellites_and_links() {
    let view = parse(snapshot_view_json(18, 36, 2, 70.0, "optimized", 0.0).unwrap());
    assert_eq!(view["sats"].as_array().unwrap().len(), 648);
    assert_eq!(view["active_hisl"], 442);
    let active_h = view["links"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|l| l["horizontal"] == true && l["active"] == true)
        .count();
    assert_eq!(active_h, 442);
}

#[test]
fn bad_input_is_an_error() {
    assert!(division_grid_json(0, 36, 0, 70.0, "optimized", 0.0).is_err());
    assert!(snapshot_view_json(18, 36, 0, 70.0, "sideways", 0.0).is_err());
}
