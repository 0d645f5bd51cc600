//! The shipped scenario files must stay in sync with the generator and
//! run clean.

use divisor_workbench::workbench::{parse_scenario, paper_suite_text, run_suite, Status};
use std::fs;
use std::path::PathBuf;

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

#[test]
fn shipped_suite_matches_generator_byte_for_byte() {
    let generated = paper_suite_text(5, 12).unwrap();
    let shipped = fixture("paper_suite.json");
    assert_eq!(
        shipped, generated,
        "scenarios/paper_suite.json is stale; regenerate with \
         `cargo run -p divisor-workbench --example emit_paper_scenario > scenarios/paper_suite.json`"
    );
}

#[test]
fn shipped_suite_parses_and_passes() {
    let scenario = parse_scenario(&fixture("paper_suite.json")).expect("fixture must parse");
    let report = run_suite(&scenario).unwrap();
    let failures: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.status != Status::Pass)
        .collect();
    assert!(failures.is_empty(), "unexpected failures: {failures:#?}");
    assert_eq!(report.summary.pass, report.summary.total);
}

#[test]
fn quadric_basics_parses_and_passes() {
    let scenario = parse_scenario(&fixture("quadric_basics.json")).expect("fixture must parse");
    let report = run_suite(&scenario).unwrap();
    assert!(report.all_passed(), "{}", report.to_text());
    assert_eq!(report.summary.total, 8);
}

#[test]
fn schema_file_is_valid_json_and_names_the_current_version() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/scenario.schema.json");
    let text =
        fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    let value: serde_json::Value = serde_json::from_str(&text).expect("schema file must be JSON");
    assert_eq!(
        value["properties"]["schema"]["const"],
        serde_json::Value::String(divisor_workbench::workbench::SCENARIO_SCHEMA.to_string()),
        "docs/scenario.schema.json must pin the scenario schema version the parser accepts"
    );
    // Every operation the parser knows must have a branch in the formal
    // schema, and vice versa.
    let branches: Vec<&str> = value["$defs"]["check"]["oneOf"]
        .as_array()
        .expect("check oneOf")
        .iter()
        .map(|r| r["$ref"].as_str().expect("ref string"))
        .collect();
    let mut ops: Vec<String> = branches
        .iter()
        .map(|r| {
            let def = r.strip_prefix("#/$defs/").expect("local ref");
            value["$defs"][def]["properties"]["op"]["const"]
                .as_str()
                .unwrap_or_else(|| panic!("{def} must pin its op"))
                .to_string()
        })
        .collect();
    ops.sort();
    let mut known = vec![
        "det",
        "is_negative_definite",
        "solve_linear",
        "in_integer_span",
        "validate_lattice",
        "pair",
        "classes_equivalent",
        "conjugate",
        "adjunction_genus",
        "rr_chi",
        "theta_chi",
        "gram_negative_definite",
        "zariski_decompose",
        "triple",
        "c2_pair",
        "rr3_chi",
        "chi_after_blowup",
        "normal_bundle_degree",
        "restrict_equivalent",
        "restrict_pair",
        "exceptional_restriction",
        "homology_zero",
        "exc_self_intersection_in_divisor",
        "propagate",
        "moduli_pipeline",
    ];
    known.sort_unstable();
    assert_eq!(ops, known);
}
