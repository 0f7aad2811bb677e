//! Infinitesimal equivariance of a moment map and its repair: the
//! residual f(ad_x p) - L_{v_x} f(p) is tabulated for every generator,
//! and when it is nonzero an admissible correction is searched for
//! within a polynomial degree cap.  The shifted sl(2) map is repaired
//! exactly; for plane translations no correction exists and the search
//! certifies that conclusively.
//!
//! Run with `cargo run --example equivariantize`.

use std::path::PathBuf;

use momap::complexes::Ctx;
use momap::moment::{equivariance_check, equivariantize, ObstructionStatus};
use momap::scene::{load_moment_map, load_scene};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn show(ctx: &Ctx, map: &momap::moment::MomentMap, cap: usize) -> momap::Result<()> {
    let check = equivariance_check(ctx, map)?;
    println!("  residuals checked: {}", check.checked);
    for e in &check.residuals {
        println!(
            "  residual(x = e{}, p = {}) = {}",
            e.generator + 1,
            ctx.kernel(e.arity).basis_multivector(e.index).render(),
            e.residual.render()
        );
    }
    if check.equivariant {
        println!("  already equivariant");
        return Ok(());
    }

    let outcome = equivariantize(ctx, map, cap)?;
    match outcome.status {
        ObstructionStatus::Vanishes => {
            let correction = outcome.correction.as_ref().expect("correction present");
            let corrected = outcome.corrected.as_ref().expect("corrected map present");
            for (j, form) in correction.component_or_zero(ctx, 1).iter().enumerate() {
                if !form.is_zero() {
                    println!(
                        "  correction({}) = {}",
                        ctx.kernel(1).basis_multivector(j).render(),
                        form.render()
                    );
                }
            }
            let recheck = equivariance_check(ctx, corrected)?;
            println!(
                "  corrected map is equivariant: {}",
                if recheck.equivariant { "yes" } else { "NO" }
            );
        }
        ObstructionStatus::Nonzero => {
            println!(
                "  no admissible correction exists (conclusive: {})",
                outcome.conclusive
            );
        }
        ObstructionStatus::UndecidedWithinCap => {
            println!("  undecided within degree cap {cap}");
        }
    }
    Ok(())
}

fn main() -> momap::Result<()> {
    let scene = load_scene(&fixture("sl2_r2.json"))?;
    let (action, structure) = scene.action_and_structure()?;
    let ctx = Ctx::new(action, structure)?;
    let shifted = load_moment_map(&fixture("sl2_shifted_map.json"), ctx.structure())?;
    println!("sl(2), constant-shifted weak map");
    show(&ctx, &shifted, scene.settings.degree_cap)?;
    println!();

    let scene = load_scene(&fixture("translations_r2.json"))?;
    let (action, structure) = scene.action_and_structure()?;
    let ctx = Ctx::new(action, structure)?;
    let map = scene.moment_map.clone().expect("scene embeds a map");
    println!("plane translations, standard weak map");
    show(&ctx, &map, scene.settings.degree_cap)?;
    Ok(())
}
