//! Shared fixtures for unit tests: the three standard actions used
//! throughout the test suite, both as raw (action, structure) pairs and
//! wrapped in a validated [`Ctx`].

use crate::action::{volume_form, GAction, NPlecticStructure};
use crate::complexes::Ctx;
use crate::forms::{PolyForm, PolyVec};
use crate::lie::{heisenberg3, sl2, so3, LieAlgebra};
use crate::linalg::rat_int;
use crate::poly::Poly;

fn x(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}

/// Rotation fields on R^3 matching so(3) in the basis used by the
/// bundled scene: v1 = x2∂1 - x1∂2, v2 = x3∂1 - x1∂3, v3 = x3∂2 - x2∂3.
pub fn rotation_action() -> GAction {
    let v1 = PolyVec::new(vec![x(3, 1), x(3, 0).neg(), Poly::zero(3)]);
    let v2 = PolyVec::new(vec![x(3, 2), Poly::zero(3), x(3, 0).neg()]);
    let v3 = PolyVec::new(vec![Poly::zero(3), x(3, 2), x(3, 1).neg()]);
    GAction::new(so3(), vec![v1, v2, v3]).unwrap()
}

/// The volume form on R^3 as a 2-plectic structure, based at the origin.
pub fn vol3() -> NPlecticStructure {
    NPlecticStructure::new(3, 2, volume_form(3), vec![rat_int(0); 3]).unwrap()
}

/// so(3) rotating R^3 with the volume form.
pub fn rotation_ctx() -> Ctx {
    Ctx::new(rotation_action(), vol3()).unwrap()
}

/// The area form on R^2 as a symplectic (1-plectic) structure.
pub fn area2() -> NPlecticStructure {
    NPlecticStructure::new(2, 1, PolyForm::basis(2, &[0, 1]), vec![rat_int(0); 2]).unwrap()
}

/// The abelian algebra R^2 acting on (R^2, dx1∧dx2) by translations:
/// v1 = ∂1, v2 = ∂2.
pub fn translation_action() -> GAction {
    let v1 = PolyVec::unit(2, 0);
    let v2 = PolyVec::unit(2, 1);
    GAction::new(LieAlgebra::abelian(2), vec![v1, v2]).unwrap()
}

/// Translations of the symplectic plane, the standard obstructed scene.
pub fn translation_ctx() -> Ctx {
    Ctx::new(translation_action(), area2()).unwrap()
}

/// sl(2) acting on (R^2, dx1∧dx2) in the basis (h, e, f):
/// v_h = x1∂1 - x2∂2, v_e = x1∂2, v_f = x2∂1.
pub fn sl2_action() -> GAction {
    let vh = PolyVec::new(vec![x(2, 0), x(2, 1).neg()]);
    let ve = PolyVec::new(vec![Poly::zero(2), x(2, 0)]);
    let vf = PolyVec::new(vec![x(2, 1), Poly::zero(2)]);
    GAction::new(sl2(), vec![vh, ve, vf]).unwrap()
}

/// sl(2) on the symplectic plane, the standard unobstructed n=1 scene.
pub fn sl2_ctx() -> Ctx {
    Ctx::new(sl2_action(), area2()).unwrap()
}

/// The Heisenberg algebra acting on the plane: the two generators
/// translate, the center acts by zero.  The contraction map on cycles
/// vanishes here even though the greedy homotopy construction leaves a
/// constant residual, so this scene exercises the absorption step.
pub fn heisenberg_plane_action() -> GAction {
    let v1 = PolyVec::unit(2, 0);
    let v2 = PolyVec::unit(2, 1);
    let v3 = PolyVec::zero(2);
    GAction::new(heisenberg3(), vec![v1, v2, v3]).unwrap()
}

/// The Heisenberg scene on the symplectic plane.
pub fn heisenberg_plane_ctx() -> Ctx {
    Ctx::new(heisenberg_plane_action(), area2()).unwrap()
}
