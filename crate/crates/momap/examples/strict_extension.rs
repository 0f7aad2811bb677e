//! Extends a verified weak moment map to a homotopy moment map by
//! solving the staircase of correction equations, or exhibits the
//! constant top component that blocks the extension.  On a symplectic
//! scene the blocking data is the classical pairwise defect
//! h(x, y) = omega(v_x, v_y) - f([x, y]), always a constant.
//!
//! Run with `cargo run --example strict_extension`.

use std::path::PathBuf;

use momap::complexes::Ctx;
use momap::linalg::format_rat;
use momap::moment::symplectic_defects;
use momap::scene::{load_moment_map, load_scene};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn main() -> momap::Result<()> {
    let scene = load_scene(&fixture("sl2_r2.json"))?;
    let (action, structure) = scene.action_and_structure()?;
    let ctx = Ctx::new(action, structure)?;

    for map_file in ["sl2_weak_map.json", "sl2_shifted_map.json"] {
        let weak = load_moment_map(&fixture(map_file), ctx.structure())?;
        println!("{map_file}");
        for (j, form) in weak.component_or_zero(&ctx, 1).iter().enumerate() {
            println!(
                "  f_1({}) = {}",
                ctx.kernel(1).basis_multivector(j).render(),
                form.render()
            );
        }

        // Both maps verify as weak moment maps; only one extends.  The
        // pairwise defects tell them apart before any solving happens.
        for d in symplectic_defects(&ctx, &weak)? {
            println!("  defect h(e{}, e{}) = {}", d.i + 1, d.j + 1, format_rat(&d.value));
        }

        let report = momap::moment::strict_extension(&ctx, &weak)?;
        let top: Vec<String> = report.gamma_top.iter().map(format_rat).collect();
        println!(
            "  top difference component: [{}] => {}",
            top.join(", "),
            if report.gamma_top_zero { "extendable" } else { "NOT extendable" }
        );
        if let Some(extension) = &report.extension {
            let verified = report
                .extension_verified
                .as_ref()
                .map(|v| v.pass())
                .unwrap_or(false);
            println!(
                "  extension verifies: {}, restricts back to the input: {}",
                if verified { "yes" } else { "NO" },
                if extension.restrict(&ctx).equals(&weak) { "yes" } else { "NO" }
            );
            for k in extension.cochain().arities().collect::<Vec<_>>() {
                for (j, form) in extension.component_or_zero(&ctx, k).iter().enumerate() {
                    if !form.is_zero() {
                        println!("  f_{k}(component {}) = {}", j + 1, form.render());
                    }
                }
            }
        }
        println!();
    }
    Ok(())
}
