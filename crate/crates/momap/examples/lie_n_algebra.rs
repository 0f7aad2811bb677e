//! The graded algebra of observables of an n-plectic structure and the
//! morphism property of a homotopy moment map.  Top-degree observables
//! are pairs (form, Hamiltonian field); lower degrees are plain forms.
//! The unary bracket is the de Rham differential, the binary bracket
//! pairs fields with the commutator, and the higher brackets contract
//! the structure form.
//!
//! Run with `cargo run --example lie_n_algebra`.

use std::path::PathBuf;

use momap::complexes::Ctx;
use momap::forms::{PolyForm, PolyVec};
use momap::linfty::{bracket, morphism_consistency, GradedElement, HamiltonianPair, Payload};
use momap::moment::construct_homotopy;
use momap::poly::Poly;
use momap::scene::load_scene;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn main() -> momap::Result<()> {
    let scene = load_scene(&fixture("so3_r3.json"))?;
    let (action, structure) = scene.action_and_structure()?;
    let ctx = Ctx::new(action.clone(), structure.clone())?;
    let n = ctx.plectic_degree();
    println!("observables of the volume form on R^3 (n = {n})");

    // The rotation generators as observables: each pairs its
    // contraction primitive with the generating field.
    let outcome = construct_homotopy(&ctx)?;
    let map = outcome.constructed().expect("unobstructed scene");
    let forms = map.component_or_zero(&ctx, 1);
    let pairs: Vec<HamiltonianPair> = forms
        .iter()
        .zip(action.generators())
        .map(|(a, v)| HamiltonianPair::new(&structure, a.clone(), v.clone()))
        .collect::<momap::Result<Vec<_>>>()?;
    for (i, p) in pairs.iter().enumerate() {
        println!("  x{} = ({}, {})", i + 1, p.form().render(), p.field().render());
    }

    // Binary bracket: the commutator field paired with the contracted
    // form.  The bracket of the first two rotations is an observable
    // whose field is the third rotation.
    let b = bracket(
        &structure,
        &[
            GradedElement::pair(pairs[0].clone()),
            GradedElement::pair(pairs[1].clone()),
        ],
    )?;
    if let Payload::Pair(p) = b.payload() {
        println!("  l2(x1, x2) = ({}, {})", p.form().render(), p.field().render());
    }

    // Ternary bracket: degree drops to a function; here it vanishes
    // because the top contraction of the volume form along rotation
    // orbits does.
    let t = bracket(
        &structure,
        &[
            GradedElement::pair(pairs[0].clone()),
            GradedElement::pair(pairs[1].clone()),
            GradedElement::pair(pairs[2].clone()),
        ],
    )?;
    if let Payload::Form(f) = t.payload() {
        println!("  l3(x1, x2, x3) = {}", f.render());
    }

    // Unary bracket on a lower-degree observable is the de Rham
    // differential; at the top it lands in a pair with zero field.
    let low = GradedElement::form(&structure, -1, PolyForm::from_poly(Poly::var(3, 1)))?;
    let db = momap::linfty::unary(&structure, &low)?;
    if let Payload::Pair(p) = db.payload() {
        println!("  l1(x2) = ({}, {})", p.form().render(), p.field().render());
    }

    // A zero-field observable exists only for closed forms; the
    // constructor enforces the defining relation.
    let bad = HamiltonianPair::new(
        &structure,
        PolyForm::basis(3, &[0]).scale_poly(&Poly::var(3, 1)),
        PolyVec::zero(3),
    );
    println!(
        "  (x2 dx1, 0) accepted: {}",
        if bad.is_err() { "no (the defining relation fails)" } else { "yes" }
    );

    // The homotopy moment map induces a morphism into the observables:
    // its binary defect against the brackets vanishes identically.
    let report = morphism_consistency(&ctx, &map)?;
    println!(
        "  morphism consistency: {} checks, {}",
        report.checked,
        if report.pass() { "all pass" } else { "FAIL" }
    );
    Ok(())
}
