//! Invariant pairings and the degree-3 cocycle they induce, at the
//! level of the algebra alone: theta(x, y, z) = <[x, y], z>.  For a
//! semisimple algebra with its Killing form the class is nonzero; for
//! an abelian algebra everything collapses; a non-invariant pairing is
//! rejected outright.
//!
//! Run with `cargo run --example cartan_class`.

use std::path::PathBuf;

use momap::lie::{cartan_cocycle, ce_cohomology, sl2, solvable2, LieAlgebra};
use momap::linalg::{rat_int, RatMatrix};
use momap::scene::load_scene;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn diagonal(entries: &[i64]) -> RatMatrix {
    let mut m = RatMatrix::zeros(entries.len(), entries.len());
    for (i, &e) in entries.iter().enumerate() {
        m.set(i, i, rat_int(e));
    }
    m
}

fn describe(label: &str, g: &LieAlgebra, pairing: &RatMatrix) -> momap::Result<()> {
    println!("{label}");
    println!("  dim H^3(g) = {}", ce_cohomology(g, 3)?.dim);
    match cartan_cocycle(g, pairing) {
        Err(e) => println!("  rejected: {e}"),
        Ok(cartan) => {
            println!("  theta = {}", cartan.theta.render());
            match &cartan.primitive {
                None => println!("  class: nonzero"),
                Some(xi) => println!("  class: zero, theta = d_g({})", xi.render()),
            }
        }
    }
    println!();
    Ok(())
}

fn main() -> momap::Result<()> {
    // so(3) with its Killing form, loaded from the algebra-only scene.
    let scene = load_scene(&fixture("so3_cartan.json"))?;
    let pairing = scene.pairing.as_ref().expect("scene carries a pairing");
    describe("so(3), Killing form", &scene.algebra, pairing)?;

    // sl(2) with its Killing form: K(h,h) = 8, K(e,f) = K(f,e) = 4.
    let mut killing = RatMatrix::zeros(3, 3);
    killing.set(0, 0, rat_int(8));
    killing.set(1, 2, rat_int(4));
    killing.set(2, 1, rat_int(4));
    describe("sl(2), Killing form", &sl2(), &killing)?;

    // Abelian: every pairing is invariant and theta vanishes.
    describe(
        "abelian R^3, identity pairing",
        &LieAlgebra::abelian(3),
        &diagonal(&[1, 1, 1]),
    )?;

    // The identity pairing is not invariant for the solvable algebra
    // [e1, e2] = e2, so no cocycle is produced.
    describe("solvable [e1,e2] = e2, identity pairing", &solvable2(), &diagonal(&[1, 1]))?;
    Ok(())
}
