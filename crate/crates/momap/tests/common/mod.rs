//! Shared scene builders and random generators for the integration
//! suites.  Randomness is always drawn from a seeded generator so
//! every run checks the same cases.

#![allow(dead_code)]

pub mod checks;

use momap::action::{volume_form, GAction, NPlecticStructure};
use momap::combi::subsets;
use momap::complexes::Ctx;
use momap::forms::{PolyForm, PolyVec};
use momap::lie::{heisenberg3, sl2, so3, solvable2, LieAlgebra, Multivector};
use momap::linalg::{rat_int, Rat, RatMatrix};
use momap::poly::Poly;
use num_traits::{One, Zero};
use rand::Rng;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn x(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}

/// so(3) rotating R^3 with the volume form.
pub fn rotation_ctx() -> Ctx {
    let v1 = PolyVec::new(vec![x(3, 1), x(3, 0).neg(), Poly::zero(3)]);
    let v2 = PolyVec::new(vec![x(3, 2), Poly::zero(3), x(3, 0).neg()]);
    let v3 = PolyVec::new(vec![Poly::zero(3), x(3, 2), x(3, 1).neg()]);
    let action = GAction::new(so3(), vec![v1, v2, v3]).unwrap();
    let s = NPlecticStructure::new(3, 2, volume_form(3), vec![rat_int(0); 3]).unwrap();
    Ctx::new(action, s).unwrap()
}

fn area2() -> NPlecticStructure {
    NPlecticStructure::new(2, 1, PolyForm::basis(2, &[0, 1]), vec![rat_int(0); 2]).unwrap()
}

/// Translations of the symplectic plane, the standard obstructed scene.
pub fn translation_ctx() -> Ctx {
    let action = GAction::new(
        LieAlgebra::abelian(2),
        vec![PolyVec::unit(2, 0), PolyVec::unit(2, 1)],
    )
    .unwrap();
    Ctx::new(action, area2()).unwrap()
}

/// sl(2) on the symplectic plane in the basis (h, e, f).
pub fn sl2_ctx() -> Ctx {
    let vh = PolyVec::new(vec![x(2, 0), x(2, 1).neg()]);
    let ve = PolyVec::new(vec![Poly::zero(2), x(2, 0)]);
    let vf = PolyVec::new(vec![x(2, 1), Poly::zero(2)]);
    let action = GAction::new(sl2(), vec![vh, ve, vf]).unwrap();
    Ctx::new(action, area2()).unwrap()
}

/// The Heisenberg algebra on the plane, center acting by zero.
pub fn heisenberg_ctx() -> Ctx {
    let action = GAction::new(
        heisenberg3(),
        vec![PolyVec::unit(2, 0), PolyVec::unit(2, 1), PolyVec::zero(2)],
    )
    .unwrap();
    Ctx::new(action, area2()).unwrap()
}

/// One-dimensional algebra acting by zero on the symplectic plane.
pub fn trivial_ctx() -> Ctx {
    let action = GAction::new(LieAlgebra::abelian(1), vec![PolyVec::zero(2)]).unwrap();
    Ctx::new(action, area2()).unwrap()
}

pub fn scene_corpus() -> Vec<(&'static str, Ctx)> {
    vec![
        ("so(3) on volume R^3", rotation_ctx()),
        ("translations on the plane", translation_ctx()),
        ("sl(2) on the plane", sl2_ctx()),
        ("heisenberg on the plane", heisenberg_ctx()),
        ("trivial on the plane", trivial_ctx()),
    ]
}

pub fn algebra_corpus() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("so(3)", so3()),
        ("sl(2)", sl2()),
        ("heisenberg", heisenberg3()),
        ("solvable2", solvable2()),
        ("abelian3", LieAlgebra::abelian(3)),
        ("abelian4", LieAlgebra::abelian(4)),
    ]
}

pub fn rand_rat(rng: &mut impl Rng) -> Rat {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn rand_point(rng: &mut impl Rng, nvars: usize) -> Vec<Rat> {
    (0..nvars).map(|_| rat(rng.gen_range(-4..=4), 1)).collect()
}

pub fn rand_poly(rng: &mut impl Rng, nvars: usize, max_degree: u32) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..rng.gen_range(1..=3) {
        let mut exps = vec![0u32; nvars];
        let degree = rng.gen_range(0..=max_degree);
        for _ in 0..degree {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        p.add_term(exps, rand_rat(rng));
    }
    p
}

pub fn rand_form(rng: &mut impl Rng, nvars: usize, degree: usize, max_degree: u32) -> PolyForm {
    let mut a = PolyForm::zero(nvars, degree);
    let sets = subsets(nvars, degree);
    for _ in 0..rng.gen_range(1..=3) {
        let set = sets[rng.gen_range(0..sets.len())].clone();
        a.add_comp(set, rand_poly(rng, nvars, max_degree));
    }
    a
}

pub fn rand_vec(rng: &mut impl Rng, nvars: usize, max_degree: u32) -> PolyVec {
    PolyVec::new((0..nvars).map(|_| rand_poly(rng, nvars, max_degree)).collect())
}

pub fn rand_multivector(rng: &mut impl Rng, dim: usize, degree: usize) -> Multivector {
    let mut p = Multivector::zero(dim, degree);
    for set in subsets(dim, degree) {
        p.add_term(set, rand_rat(rng));
    }
    p
}

/// Inverse by column-wise solving; `None` for singular input.
pub fn invert(m: &RatMatrix, n: usize) -> Option<RatMatrix> {
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        cols.push(m.solve(&e)?);
    }
    RatMatrix::from_cols(cols, n).ok()
}

/// A random invertible rational matrix with small integer entries.
pub fn rand_gl(rng: &mut impl Rng, n: usize) -> RatMatrix {
    loop {
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|_| (0..n).map(|_| rat(rng.gen_range(-2..=2), 1)).collect())
            .collect();
        let m = RatMatrix::from_rows(rows).unwrap();
        if invert(&m, n).is_some() {
            return m;
        }
    }
}

/// Substitutes `x_i = sum_j m[i][j] y_j` into a polynomial.
pub fn substitute_linear(p: &Poly, m: &RatMatrix) -> Poly {
    let nvars = p.nvars();
    let linear: Vec<Poly> = (0..nvars)
        .map(|i| {
            let mut row = Poly::zero(nvars);
            for j in 0..nvars {
                row = row.add(&Poly::var(nvars, j).scale(m.at(i, j)));
            }
            row
        })
        .collect();
    let mut out = Poly::zero(nvars);
    for (exps, c) in p.terms() {
        let mut term = Poly::constant(nvars, c.clone());
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&linear[i]);
            }
        }
        out = out.add(&term);
    }
    out
}

/// Pullback of a form along the linear map `y -> m y`, entrywise on
/// basis forms: `dx_i -> sum_j m[i][j] dy_j`.
pub fn pullback_linear(a: &PolyForm, m: &RatMatrix) -> PolyForm {
    let nvars = a.nvars();
    let image: Vec<PolyForm> = (0..nvars)
        .map(|i| {
            let mut f = PolyForm::zero(nvars, 1);
            for j in 0..nvars {
                f = f.add(&PolyForm::dx(nvars, j).scale(m.at(i, j)));
            }
            f
        })
        .collect();
    let mut out = PolyForm::zero(nvars, a.degree());
    for (set, p) in a.comps() {
        let mut wedge = PolyForm::from_poly(substitute_linear(p, m));
        for &i in set {
            wedge = wedge.wedge(&image[i]);
        }
        out = out.add(&wedge);
    }
    out
}

/// The image of a whole scene under the coordinate change `x = m y`:
/// fields push forward, the form pulls back, and every structural
/// property (brackets, preservation, vanishing of the obstruction) is
/// carried along.
pub fn conjugate_ctx(ctx: &Ctx, m: &RatMatrix) -> Option<Ctx> {
    let nvars = ctx.nvars();
    let inv = invert(m, nvars)?;
    let generators = ctx
        .action()
        .generators()
        .iter()
        .map(|v| {
            let composed: Vec<Poly> =
                v.comps().iter().map(|p| substitute_linear(p, m)).collect();
            let comps: Vec<Poly> = (0..nvars)
                .map(|i| {
                    let mut acc = Poly::zero(nvars);
                    for j in 0..nvars {
                        acc = acc.add(&composed[j].scale(inv.at(i, j)));
                    }
                    acc
                })
                .collect();
            PolyVec::new(comps)
        })
        .collect();
    let omega = pullback_linear(ctx.structure().omega(), m);
    let action = GAction::new(ctx.algebra().clone(), generators).ok()?;
    let s = NPlecticStructure::new(
        nvars,
        ctx.plectic_degree(),
        omega,
        vec![Rat::zero(); nvars],
    )
    .ok()?;
    Ctx::new(action, s).ok()
}

/// A random abelian algebra of constant fields together with a random
/// constant-coefficient structure it automatically preserves.  `None`
/// when the sampled form is degenerate.
pub fn random_constant_ctx(rng: &mut impl Rng) -> Option<Ctx> {
    let (nvars, n) = *[(2usize, 1usize), (4, 1), (3, 2), (4, 3)]
        .iter()
        .nth(rng.gen_range(0..4))?;
    let mut omega = PolyForm::zero(nvars, n + 1);
    for set in subsets(nvars, n + 1) {
        omega.add_comp(set, Poly::constant(nvars, rand_rat(rng)));
    }
    let s = NPlecticStructure::new(nvars, n, omega, vec![Rat::zero(); nvars]).ok()?;
    let dim = rng.gen_range(2..=3.min(nvars));
    let generators: Vec<PolyVec> = (0..dim)
        .map(|_| {
            PolyVec::new(
                (0..nvars)
                    .map(|_| Poly::constant(nvars, rat(rng.gen_range(-2..=2), 1)))
                    .collect(),
            )
        })
        .collect();
    let action = GAction::new(LieAlgebra::abelian(dim), generators).ok()?;
    Ctx::new(action, s).ok()
}
