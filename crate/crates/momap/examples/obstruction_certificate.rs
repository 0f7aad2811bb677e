//! What exactly fails when no homotopy moment map exists.  Translations
//! of the symplectic plane are the smallest obstructed scene: the final
//! constant residual of the construction cannot be absorbed, and its
//! restriction to the top cycles recovers the obstruction map phi.  The
//! Heisenberg scene contrasts it: the greedy construction leaves the
//! same kind of constant residual, but there it is a coboundary and the
//! absorption step repairs the map.
//!
//! Run with `cargo run --example obstruction_certificate`.

use std::path::PathBuf;

use momap::combi::subsets;
use momap::complexes::{phi, Ctx};
use momap::lie::Multivector;
use momap::linalg::format_rat;
use momap::moment::{construct_homotopy, verify_homotopy, HomotopyOutcome};
use momap::scene::load_scene;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load_ctx(name: &str) -> momap::Result<Ctx> {
    let scene = load_scene(&fixture(name))?;
    let (action, structure) = scene.action_and_structure()?;
    Ctx::new(action, structure)
}

fn main() -> momap::Result<()> {
    let ctx = load_ctx("translations_r2.json")?;
    println!("translations of the symplectic plane");
    match construct_homotopy(&ctx)? {
        HomotopyOutcome::Constructed(_) => println!("  unexpectedly constructed"),
        HomotopyOutcome::Obstructed(cert) => {
            let dim = ctx.algebra().dim();
            println!("  construction blocked at arity {}", cert.arity);
            for (set, value) in subsets(dim, cert.arity).iter().zip(&cert.residuals) {
                println!(
                    "  residual on {} = {}",
                    Multivector::basis(dim, set).render(),
                    format_rat(value)
                );
            }
            // Restricting the residual to the cycle space recovers phi,
            // computed independently from the structure alone.
            let direct = phi(&ctx);
            for (j, value) in cert.phi_restriction.iter().enumerate() {
                println!(
                    "  phi({}) = {} (direct computation: {})",
                    ctx.kernel(cert.arity).basis_multivector(j).render(),
                    format_rat(value),
                    direct.values[j].render()
                );
            }
            println!(
                "  partial map still verifies through arity {}",
                cert.arity - 1
            );
        }
    }
    println!();

    let ctx = load_ctx("heisenberg_r2.json")?;
    println!("heisenberg algebra on the plane (center acts by zero)");
    match construct_homotopy(&ctx)? {
        HomotopyOutcome::Constructed(map) => {
            let check = verify_homotopy(&ctx, &map)?;
            println!(
                "  constructed after absorbing the constant residual; \
                 {} equations, {}",
                check.checked,
                if check.pass() { "all pass" } else { "FAIL" }
            );
            for (j, form) in map.component_or_zero(&ctx, 1).iter().enumerate() {
                println!("  f_1(e{}) = {}", j + 1, form.render());
            }
        }
        HomotopyOutcome::Obstructed(_) => println!("  unexpectedly obstructed"),
    }
    Ok(())
}
