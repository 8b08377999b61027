//! Golden CLI cases shared by the CLI tests and the acceptance suite.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

/// `(golden file stem, arguments, expected exit code)`; paths are relative
/// to the crate directory.
pub const CASES: &[(&str, &[&str], i32)] = &[
    (
        "validate_clean",
        &[
            "validate",
            "tests/fixtures/covers.json",
            "tests/fixtures/q8_trivial.json",
            "tests/fixtures/q8_central.json",
            "tests/fixtures/z3_outer.json",
            "tests/fixtures/s3_inner.json",
            "tests/fixtures/refinement.json",
            "tests/fixtures/map.json",
            "tests/fixtures/modules.json",
        ],
        0,
    ),
    ("validate_mutated", &["validate", "tests/fixtures/q8_trivial.json", "tests/fixtures/q8_mutated.json"], 1),
    ("validate_malformed", &["validate", "tests/fixtures/malformed.json"], 3),
    ("classify_q8", &["classify", "--group", "Q8", "--cover", "tetrahedron"], 0),
    ("classify_s3", &["classify", "--group", "S3", "--cover", "tetrahedron"], 0),
    ("classify_z4", &["classify", "--group", "Z4", "--cover", "tetrahedron"], 0),
    ("classify_bound", &["classify", "--group", "Z4", "--cover", "tetrahedron", "--limit-enum", "100"], 2),
    ("band_z3_outer", &["band", "tests/fixtures/z3_outer.json"], 0),
    ("band_s3_inner", &["band", "tests/fixtures/s3_inner.json"], 0),
    ("band_q8_central_pointwise", &["band", "--mode", "pointwise", "tests/fixtures/q8_central.json"], 0),
    (
        "cohomology_cech_tetra_z2",
        &["cohomology", "cech", "--cover", "tetrahedron", "--coefficients", "2", "--degree", "2"],
        0,
    ),
    ("cohomology_cech_circle_z", &["cohomology", "cech", "--cover", "circle", "--degree", "1"], 0),
    ("cohomology_cech_degree4", &["cohomology", "cech", "--cover", "circle", "--degree", "4"], 1),
    (
        "cohomology_group_z3",
        &["cohomology", "group", "--group", "Z3", "--module", "z3-neg", "--degree", "1", "tests/fixtures/modules.json"],
        0,
    ),
    (
        "cohomology_groupoid_circle",
        &["cohomology", "groupoid", "--cover", "circle", "--module", "Q", "--degree", "0"],
        0,
    ),
    (
        "cohomology_groupoid_z2_left",
        &["cohomology", "groupoid", "--group", "Z2", "--module", "Z/2", "--degree", "2", "--side", "left"],
        0,
    ),
    (
        "cohomology_groupoid_bound",
        &["cohomology", "groupoid", "--group", "S3", "--module", "Q", "--degree", "2", "--limit-cochain-dim", "10"],
        2,
    ),
    ("band_order_bound", &["band", "--limit-order", "4", "tests/fixtures/q8_central.json"], 2),
    ("pullback_z3", &["pullback", "tests/fixtures/z3_outer.json", "tests/fixtures/map.json"], 0),
    (
        "refine_z3",
        &["refine", "tests/fixtures/z3_outer.json", "tests/fixtures/refinement.json", "tests/fixtures/covers.json"],
        0,
    ),
    (
        "check_morita_s3",
        &[
            "check-morita",
            "--refinement",
            "circle-refinement",
            "--module",
            "Z/2",
            "tests/fixtures/s3_inner.json",
            "tests/fixtures/refinement.json",
            "tests/fixtures/covers.json",
        ],
        0,
    ),
    (
        "check_morita_not_surjective",
        &["check-morita", "--map", "short", "tests/fixtures/z3_outer.json", "tests/fixtures/short_map.json"],
        1,
    ),
    ("band_unresolved", &["band", "--cocycle", "missing", "tests/fixtures/z3_outer.json"], 3),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs the binary from the crate directory; returns exit code and stdout.
pub fn run_gerbe(args: &[&str]) -> (i32, Vec<u8>) {
    let out =
        Command::new(env!("CARGO_BIN_EXE_gerbe")).args(args).current_dir(crate_dir()).output().expect("gerbe runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.txt"))
}
