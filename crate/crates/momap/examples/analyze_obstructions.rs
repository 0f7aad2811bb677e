//! The existence analysis side by side on an unobstructed and an
//! obstructed scene: Lie kernels, Chevalley–Eilenberg cohomology, the
//! top contraction map, its cocycle class, and the resulting verdicts.
//!
//! Run with `cargo run --example analyze_obstructions`.

use std::path::PathBuf;

use momap::complexes::Ctx;
use momap::lie::{ce_cohomology, LieKernel};
use momap::moment::existence_report;
use momap::scene::load_scene;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn main() -> momap::Result<()> {
    for name in ["so3_r3.json", "translations_r2.json"] {
        let scene = load_scene(&fixture(name))?;
        let (action, structure) = scene.action_and_structure()?;
        let ctx = Ctx::new(action, structure)?;
        let g = ctx.algebra();
        let n = ctx.plectic_degree();
        println!("{name} (plectic degree {n})");

        for k in 1..=g.dim() {
            let kernel = LieKernel::new(g, k)?;
            println!("  dim P_{k} = {}", kernel.rank());
        }
        for k in 1..=g.dim().min(n + 1) {
            println!("  dim H^{k}(g) = {}", ce_cohomology(g, k)?.dim);
        }

        // The single obstruction: the contraction of omega along the
        // top-arity cycles.  A homotopy moment map exists exactly when
        // it vanishes identically.
        let report = existence_report(&ctx, &scene.sample_points())?;
        let phi = &report.obstruction.phi;
        if phi.values.is_empty() {
            println!("  phi on P_{}: trivial (no cycles)", phi.arity);
        }
        for (j, value) in phi.values.iter().enumerate() {
            println!(
                "  phi({}) = {}",
                ctx.kernel(phi.arity).basis_multivector(j).render(),
                value.render()
            );
        }
        for (point, cocycle) in report.obstruction.points.iter().zip(&report.obstruction.cocycles) {
            let rendered: Vec<String> =
                point.iter().map(momap::linalg::format_rat).collect();
            println!("  cocycle at ({}) = {}", rendered.join(", "), cocycle.render());
        }
        println!(
            "  cocycle class is {}",
            if report.obstruction.class_zero { "zero" } else { "nonzero" }
        );

        println!("  weak moment map: exists");
        println!(
            "  homotopy moment map: {}",
            if report.homotopy_exists { "exists" } else { "obstructed" }
        );
        for cond in [&report.vanishing_cohomology, &report.vanishing_invariants] {
            println!(
                "  sufficient condition \"{}\": {} ({})",
                cond.statement,
                if cond.holds { "holds" } else { "does not hold" },
                cond.detail
            );
        }
        println!();
    }
    Ok(())
}
