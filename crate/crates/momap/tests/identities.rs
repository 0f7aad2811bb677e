//! Randomized identity suites: the algebraic facts every verdict in
//! the crate leans on, each checked on at least 500 random cases with
//! exact arithmetic.  The check bodies live in `common::checks` so the
//! acceptance gate can run the same code.

mod common;

use common::checks;
use common::*;
use momap::action::{validate_action, volume_form, GAction, NPlecticStructure};
use momap::forms::PolyVec;
use momap::lie::so3;
use momap::linalg::rat_int;
use momap::poly::Poly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CASES: usize = 500;

#[test]
fn homology_differential_squares_to_zero() {
    checks::homology_differential_squares(CASES);
}

#[test]
fn cochain_differential_squares_to_zero() {
    checks::cochain_differential_squares(CASES);
}

#[test]
fn exterior_derivative_squares_to_zero() {
    checks::exterior_derivative_squares(CASES);
}

#[test]
fn total_differential_squares_to_zero() {
    checks::total_differential_squares(CASES);
}

#[test]
fn extended_cartan_residual_vanishes() {
    checks::cartan_residual_vanishes(CASES);
}

#[test]
fn radial_homotopy_splits_the_exterior_derivative() {
    checks::radial_homotopy_splits(CASES);
}

#[test]
fn field_homology_matches_algebra_homology() {
    checks::field_homology_matches(CASES);
}

#[test]
fn adjoint_action_is_the_wedge_defect_of_homology() {
    checks::adjoint_wedge_defect(CASES);
}

#[test]
fn lie_derivative_of_contractions_is_the_adjoint_contraction() {
    checks::lie_derivative_adjoint(CASES);
}

#[test]
fn kernel_contractions_are_closed() {
    checks::kernel_contractions_closed(CASES);
}

#[test]
fn restriction_is_a_chain_map() {
    checks::restriction_chain_map(CASES);
}

#[test]
fn restricted_canonical_cocycle_splits_into_kernel_part_and_phi() {
    checks::restricted_cocycle_splits(CASES);
}

#[test]
fn conjugated_scenes_still_validate() {
    // The coordinate-change helper itself is load-bearing for the
    // randomized suites, so check it produces honest scenes.
    let corpus = scene_corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for i in 0..50 {
        let (_, base) = &corpus[i % corpus.len()];
        let m = rand_gl(&mut rng, base.nvars());
        let ctx = conjugate_ctx(base, &m).expect("conjugation preserves validity");
        let report = validate_action(ctx.action(), ctx.structure());
        assert!(report.pass());
    }
}

#[test]
fn constant_scene_sampler_produces_valid_scenes() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut produced = 0;
    for _ in 0..400 {
        if let Some(ctx) = random_constant_ctx(&mut rng) {
            let report = validate_action(ctx.action(), ctx.structure());
            assert!(report.pass());
            produced += 1;
        }
    }
    assert!(produced >= 100, "sampler yielded only {produced} scenes");
}

#[test]
fn pullback_helper_commutes_with_the_exterior_derivative() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..CASES {
        let nvars = rng.gen_range(2..=3);
        let degree = rng.gen_range(0..nvars);
        let a = rand_form(&mut rng, nvars, degree, 2);
        let m = rand_gl(&mut rng, nvars);
        let lhs = pullback_linear(&a.ext_d(), &m);
        let rhs = pullback_linear(&a, &m).ext_d();
        assert!(lhs.sub(&rhs).is_zero());
    }
}

#[test]
fn validation_flags_broken_generators() {
    // Negating one rotation generator breaks the bracket table, and
    // validation names the failing pairs instead of passing.
    let v1 = PolyVec::new(vec![Poly::var(3, 1), Poly::var(3, 0).neg(), Poly::zero(3)]);
    let v2 = PolyVec::new(vec![Poly::var(3, 2), Poly::zero(3), Poly::var(3, 0).neg()]);
    let v3 = PolyVec::new(vec![Poly::zero(3), Poly::var(3, 2).neg(), Poly::var(3, 1)]);
    let action = GAction::new(so3(), vec![v1, v2, v3]).unwrap();
    let structure = NPlecticStructure::new(3, 2, volume_form(3), vec![rat_int(0); 3]).unwrap();
    let report = validate_action(&action, &structure);
    assert!(!report.pass());
    assert!(report.bracket_failures.iter().any(|f| (f.i, f.j) == (0, 1)));
}
