//! Loads scene files and checks the structural axioms: the Jacobi
//! identity for the bracket table, closedness and nondegeneracy of the
//! structure form, and the two action axioms (bracket compatibility
//! and preservation of the form).
//!
//! Run with `cargo run --example validate_scene`.

use std::path::PathBuf;

use momap::action::validate_action;
use momap::scene::{load_scene, parse_scene_str};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn main() -> momap::Result<()> {
    for name in ["so3_r3.json", "translations_r2.json", "trivial.json"] {
        let scene = load_scene(&fixture(name))?;
        let g = &scene.algebra;
        println!("{name}");
        println!("  digest    {}", scene.digest);
        match g.jacobi_check() {
            None => println!("  jacobi    holds (dimension {})", g.dim()),
            Some((i, j, k)) => {
                println!("  jacobi    FAILS on (e{}, e{}, e{})", i + 1, j + 1, k + 1)
            }
        }
        let (action, structure) = scene.action_and_structure()?;
        println!(
            "  structure {}-plectic on R^{}, d(omega) = {}",
            structure.plectic_degree(),
            structure.nvars(),
            structure.omega().ext_d().render()
        );
        println!(
            "  nondegenerate at basepoint: {}",
            if structure.nondegeneracy_check(structure.basepoint()).is_ok() {
                "yes"
            } else {
                "NO"
            }
        );
        let check = validate_action(&action, &structure);
        println!(
            "  action    {} ({} generators, polynomial degree <= {})",
            if check.pass() { "valid" } else { "INVALID" },
            action.generators().len(),
            action.max_degree()
        );
        println!();
    }

    // Structural errors are caught at parse time with a JSON-pointer
    // style location.
    let broken = r#"{
      "lie_algebra": { "dimension": 2, "brackets": [[2, 1, 1, "1"]] }
    }"#;
    match parse_scene_str(broken) {
        Err(e) => println!("rejected bracket table: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }

    // A degenerate form is rejected when the scene is assembled.
    let degenerate = r#"{
      "lie_algebra": { "dimension": 1, "brackets": [] },
      "structure": { "nvars": 3, "plectic_degree": 1,
                     "omega": [[[1, 2], [[[0, 0, 0], "1"]]]] },
      "action": { "generators": [[[], [], []]] }
    }"#;
    match parse_scene_str(degenerate) {
        Err(e) => println!("rejected degenerate structure: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
