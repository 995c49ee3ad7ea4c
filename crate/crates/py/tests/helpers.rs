use fanocheck_py::{catalog_check, scenario_json, scenario_table};

#[test]
fn table_matches_required_names() {
    let names: Vec<String> = scenario_table().into_iter().map(|t| t.0).collect();
    assert!(names.contains(&"link-ptp2-line".to_string()));
    assert!(names.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn unknown_scenario_is_none() {
    assert!(scenario_json("nope", 0, 1000).is_none());
}

#[test]
fn scenario_json_round_trips() {
    let s = scenario_json("t3aut-sigma", 0, 100_000).unwrap();
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["scenario"], "t3aut-sigma");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn catalog_recomputes() {
    let rows = catalog_check().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|(_, a, b)| a == b));
}
