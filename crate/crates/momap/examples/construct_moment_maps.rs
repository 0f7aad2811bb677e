//! Builds weak and homotopy moment maps for the bundled scenes, prints
//! their components, re-verifies them against the defining equations,
//! and round-trips one through the serialization format.
//!
//! Run with `cargo run --example construct_moment_maps`.

use std::path::PathBuf;

use momap::complexes::Ctx;
use momap::moment::{
    construct_homotopy, construct_weak, verify_homotopy, verify_weak, HomotopyOutcome,
};
use momap::scene::{load_scene, moment_map_text, parse_moment_map_str};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn main() -> momap::Result<()> {
    for name in ["so3_r3.json", "sl2_r2.json", "heisenberg_r2.json"] {
        let scene = load_scene(&fixture(name))?;
        let (action, structure) = scene.action_and_structure()?;
        let structure_for_parse = structure.clone();
        let ctx = Ctx::new(action, structure)?;
        println!("{name}");

        let weak = construct_weak(&ctx)?;
        println!("  weak map:");
        for k in weak.cochain().arities().collect::<Vec<_>>() {
            for (j, form) in weak.component_or_zero(&ctx, k).iter().enumerate() {
                println!(
                    "    f_{k}({}) = {}",
                    ctx.kernel(k).basis_multivector(j).render(),
                    form.render()
                );
            }
        }
        let check = verify_weak(&ctx, &weak)?;
        println!(
            "  verification: {} equations, {}",
            check.checked,
            if check.pass() { "all pass" } else { "FAIL" }
        );

        match construct_homotopy(&ctx)? {
            HomotopyOutcome::Constructed(full) => {
                let check = verify_homotopy(&ctx, &full)?;
                println!(
                    "  homotopy map: constructed, {} equations, {}",
                    check.checked,
                    if check.pass() { "all pass" } else { "FAIL" }
                );
                // Maps survive the file format exactly.
                let text = moment_map_text(&full);
                let reread = parse_moment_map_str(&text, &structure_for_parse)?;
                println!(
                    "  serialization round-trip: {}",
                    if reread.equals(&full) { "exact" } else { "LOSSY" }
                );
            }
            HomotopyOutcome::Obstructed(cert) => {
                println!(
                    "  homotopy map: obstructed at arity {} (see the \
                     obstruction_certificate example)",
                    cert.arity
                );
            }
        }
        println!();
    }
    Ok(())
}
