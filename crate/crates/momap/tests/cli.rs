//! End-to-end runs of the command-line binary over the shipped
//! fixtures: exit codes, report text, emitted map files, structured
//! output, and determinism.

use std::path::PathBuf;
use std::process::Command;

use momap::complexes::Ctx;
use momap::moment::{verify_homotopy, verify_weak};
use momap::scene::{load_moment_map, load_scene};

const BIN: &str = env!("CARGO_BIN_EXE_momap");

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn fixture_arg(name: &str) -> String {
    fixture(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn temp_file(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("momap-cli-{tag}-{}.json", std::process::id()))
}

fn fixture_ctx(name: &str) -> Ctx {
    let scene = load_scene(&fixture(name)).unwrap();
    let (action, structure) = scene.action_and_structure().unwrap();
    Ctx::new(action, structure).unwrap()
}

#[test]
fn validate_accepts_the_rotation_scene() {
    let (code, stdout, _) = run(&["validate", "--scene", &fixture_arg("so3_r3.json")]);
    assert_eq!(code, 0, "stdout:\n{stdout}");
    assert!(stdout.contains("jacobi identity"));
    assert!(stdout.contains("bracket relations: all hold"));
    assert!(stdout.ends_with("verdict: pass\n") || stdout.contains("\nverdict: pass\n"));
}

#[test]
fn validate_rejects_a_scene_with_wrong_brackets() {
    let path = temp_file("invalid-scene");
    let text = std::fs::read_to_string(fixture("translations_r2.json")).unwrap();
    let broken = text.replace("\"brackets\": []", "\"brackets\": [[1, 2, 1, \"1\"]]");
    assert_ne!(text, broken);
    std::fs::write(&path, broken).unwrap();
    let (code, stdout, _) = run(&["validate", "--scene", &path.display().to_string()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 2, "stdout:\n{stdout}");
    assert!(stdout.contains("[FAIL]"));
    assert!(stdout.contains("verdict: invalid"));
}

#[test]
fn missing_scene_file_is_a_usage_error() {
    let path = temp_file("does-not-exist");
    let (code, _, stderr) = run(&["validate", "--scene", &path.display().to_string()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error:"));
    assert!(stderr.contains("cannot read"));
}

#[test]
fn analyze_reports_the_translation_obstruction() {
    let (code, stdout, _) = run(&["analyze", "--scene", &fixture_arg("translations_r2.json")]);
    assert_eq!(code, 0, "stdout:\n{stdout}");
    assert!(stdout.contains("phi identically zero: no"));
    assert!(stdout.contains("obstructed (phi is nonzero)"));
    assert!(stdout.contains("verdict: pass"));
}

#[test]
fn analyze_works_on_an_algebra_only_scene() {
    let (code, stdout, _) = run(&["analyze", "--scene", &fixture_arg("so3_cartan.json")]);
    assert_eq!(code, 0, "stdout:\n{stdout}");
    assert!(stdout.contains("no action in the scene; algebra-level analysis only"));
    assert!(stdout.contains("dim H^3(g): 1"));
    assert!(stdout.contains("nonzero in H^3(g)"));
}

#[test]
fn construct_homotopy_exits_with_the_obstruction_certificate() {
    let (code, stdout, _) = run(&[
        "construct",
        "--homotopy",
        "--scene",
        &fixture_arg("translations_r2.json"),
    ]);
    assert_eq!(code, 3, "stdout:\n{stdout}");
    assert!(stdout.contains("obstruction certificate"));
    assert!(stdout.contains("no homotopy moment map"));
    assert!(stdout.contains("verdict: obstructed"));
}

#[test]
fn construct_weak_writes_a_loadable_map() {
    let out_path = temp_file("weak-map");
    let (code, stdout, _) = run(&[
        "construct",
        "--weak",
        "--scene",
        &fixture_arg("translations_r2.json"),
        "--out",
        &out_path.display().to_string(),
    ]);
    assert_eq!(code, 0, "stdout:\n{stdout}");
    assert!(stdout.contains("map file"));
    let ctx = fixture_ctx("translations_r2.json");
    let map = load_moment_map(&out_path, ctx.structure()).unwrap();
    std::fs::remove_file(&out_path).ok();
    assert!(verify_weak(&ctx, &map).unwrap().pass());
}

#[test]
fn construct_defaults_to_the_homotopy_flavor() {
    let out_path = temp_file("default-flavor");
    let (code, stdout, _) = run(&[
        "construct",
        "--scene",
        &fixture_arg("so3_r3.json"),
        "--out",
        &out_path.display().to_string(),
    ]);
    assert_eq!(code, 0, "stdout:\n{stdout}");
    let ctx = fixture_ctx("so3_r3.json");
    let map = load_moment_map(&out_path, ctx.structure()).unwrap();
    std::fs::remove_file(&out_path).ok();
    assert!(verify_homotopy(&ctx, &map).unwrap().pass());
}

#[test]
fn verify_accepts_the_rotation_maps() {
    for map in ["so3_weak_map.json", "so3_homotopy_map.json"] {
        let (code, stdout, _) = run(&[
            "verify",
            "--scene",
            &fixture_arg("so3_r3.json"),
            "--map",
            &fixture_arg(map),
        ]);
        assert_eq!(code, 0, "map {map}, stdout:\n{stdout}");
        assert!(stdout.contains("all residuals: 0"));
        assert!(stdout.contains("verdict: pass"));
    }
}

#[test]
fn verify_falls_back_to_the_embedded_map() {
    let (code, stdout, _) = run(&["verify", "--scene", &fixture_arg("translations_r2.json")]);
    assert_eq!(code, 0, "stdout:\n{stdout}");
    assert!(stdout.contains("verdict: pass"));
}

#[test]
fn verify_without_any_map_is_a_usage_error() {
    let (code, _, stderr) = run(&["verify", "--scene", &fixture_arg("so3_r3.json")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("no moment map given"));
}

#[test]
fn extend_assembles_and_checks_the_extension() {
    let out_path = temp_file("extension");
    let (code, stdout, _) = run(&[
        "extend",
        "--scene",
        &fixture_arg("sl2_r2.json"),
        "--map",
        &fixture_arg("sl2_weak_map.json"),
        "--out",
        &out_path.display().to_string(),
    ]);
    assert_eq!(code, 0, "stdout:\n{stdout}");
    assert!(stdout.contains("restricts to the input weak map"));
    assert!(stdout.contains("verdict: pass"));
    let ctx = fixture_ctx("sl2_r2.json");
    let map = load_moment_map(&out_path, ctx.structure()).unwrap();
    std::fs::remove_file(&out_path).ok();
    assert!(verify_homotopy(&ctx, &map).unwrap().pass());
}

#[test]
fn extend_reports_the_constant_defect_of_the_shifted_map() {
    let (code, stdout, _) = run(&[
        "extend",
        "--scene",
        &fixture_arg("sl2_r2.json"),
        "--map",
        &fixture_arg("sl2_shifted_map.json"),
    ]);
    assert_eq!(code, 3, "stdout:\n{stdout}");
    assert!(stdout.contains("h(e2, e3): -1 (constant)"));
    assert!(stdout.contains("the weak map does not extend"));
    assert!(stdout.contains("verdict: obstructed"));
}

#[test]
fn equivariance_repairs_the_shifted_map() {
    let (code, stdout, _) = run(&[
        "equivariance",
        "--scene",
        &fixture_arg("sl2_r2.json"),
        "--map",
        &fixture_arg("sl2_shifted_map.json"),
    ]);
    assert_eq!(code, 0, "stdout:\n{stdout}");
    assert!(stdout.contains("obstruction: vanishes"));
    assert!(stdout.contains("corrected map is equivariant: re-checked"));
    assert!(stdout.contains("verdict: pass"));
}

#[test]
fn equivariance_obstruction_is_conclusive_for_affine_actions() {
    let (code, stdout, _) = run(&[
        "equivariance",
        "--scene",
        &fixture_arg("translations_r2.json"),
    ]);
    assert_eq!(code, 3, "stdout:\n{stdout}");
    assert!(stdout.contains("conclusive: the action is affine"));
    assert!(stdout.contains("verdict: obstructed"));
}

#[test]
fn equivariance_below_the_map_degree_is_undecided() {
    let (code, stdout, _) = run(&[
        "equivariance",
        "--scene",
        &fixture_arg("translations_r2.json"),
        "--degree-cap",
        "0",
    ]);
    assert_eq!(code, 4, "stdout:\n{stdout}");
    assert!(stdout.contains("raise degree_cap"));
    assert!(stdout.contains("verdict: undecided within degree cap"));
}

#[test]
fn structured_output_is_json_with_the_same_verdict() {
    let (code, stdout, _) = run(&[
        "validate",
        "--scene",
        &fixture_arg("so3_r3.json"),
        "--format",
        "structured",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["exit_code"], 0);
    assert!(v["sections"].as_array().is_some_and(|s| !s.is_empty()));
    assert!(v["scene_digest"].as_str().is_some_and(|d| d.len() == 64));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let strip = |text: &str| -> String {
        text.lines()
            .filter(|l| !l.starts_with("elapsed:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let (code1, first, _) = run(&["analyze", "--scene", &fixture_arg("so3_r3.json")]);
    let (code2, second, _) = run(&["analyze", "--scene", &fixture_arg("so3_r3.json")]);
    assert_eq!(code1, 0);
    assert_eq!(code2, 0);
    assert_eq!(strip(&first), strip(&second));
}
