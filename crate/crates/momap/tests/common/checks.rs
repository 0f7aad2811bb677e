//! The core identity checks, parameterized by case count so the
//! dedicated suite and the acceptance gate share one implementation.
//! Every check panics with context on the first failing case.

use super::*;
use momap::combi::subsets;
use momap::complexes::{
    canonical_cocycle, d_tot, kernel_cocycle, phi, restrict_to_kernels, Ctx, Flavor,
    GradedCochain,
};
use momap::forms::{cartan_residual, euler_homotopy, PolyForm};
use momap::lie::{adjoint_action, ce_differential, delta, DualCochain, Multivector};
use momap::linalg::{rat_int, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_cochain(
    rng: &mut impl Rng,
    ctx: &Ctx,
    flavor: Flavor,
    total_degree: usize,
) -> GradedCochain {
    let n = ctx.plectic_degree();
    let mut x = GradedCochain::new(flavor, total_degree, ctx.nvars());
    for k in 1..=(n + 1).min(total_degree) {
        let Some(degree) = x.form_degree(k) else { continue };
        let len = ctx.component_len(flavor, k);
        let forms: Vec<PolyForm> = (0..len)
            .map(|_| rand_form(rng, ctx.nvars(), degree, 2))
            .collect();
        x.set_component(k, forms);
    }
    x
}

/// `δ∘δ = 0` on random multivectors over the algebra corpus.
pub fn homology_differential_squares(cases: usize) {
    let corpus = algebra_corpus();
    let mut rng = rng(11);
    for i in 0..cases {
        let (name, g) = &corpus[i % corpus.len()];
        let k = rng.gen_range(2..=g.dim());
        let p = rand_multivector(&mut rng, g.dim(), k);
        let dd = delta(g, &delta(g, &p));
        for set in subsets(g.dim(), k.saturating_sub(2)) {
            assert!(dd.coeff(&set).is_zero(), "delta^2 != 0 on {name}");
        }
    }
}

/// `d_g∘d_g = 0` on random cochains over the algebra corpus.
pub fn cochain_differential_squares(cases: usize) {
    let corpus = algebra_corpus();
    let mut rng = rng(12);
    for i in 0..cases {
        let (name, g) = &corpus[i % corpus.len()];
        let k = rng.gen_range(1..g.dim());
        let sets = subsets(g.dim(), k);
        let coords: Vec<Rat> = sets.iter().map(|_| rand_rat(&mut rng)).collect();
        let xi = DualCochain::from_coords(g.dim(), k, &sets, &coords);
        let dd = ce_differential(g, &ce_differential(g, &xi));
        assert!(dd.is_zero(), "d_g^2 != 0 on {name}");
    }
}

/// `d∘d = 0` on random polynomial forms.
pub fn exterior_derivative_squares(cases: usize) {
    let mut rng = rng(13);
    for _ in 0..cases {
        let nvars = rng.gen_range(2..=4);
        let degree = rng.gen_range(0..nvars);
        let a = rand_form(&mut rng, nvars, degree, 3);
        assert!(a.ext_d().ext_d().is_zero());
    }
}

/// `d_tot∘d_tot = 0` on random graded cochains of both flavors.
pub fn total_differential_squares(cases: usize) {
    let corpus = scene_corpus();
    let mut rng = rng(14);
    for i in 0..cases {
        let (name, ctx) = &corpus[i % corpus.len()];
        let n = ctx.plectic_degree();
        let flavor = if rng.gen_bool(0.5) { Flavor::Full } else { Flavor::Kernel };
        let t = rng.gen_range(1..=n + 1);
        let x = rand_cochain(&mut rng, ctx, flavor, t);
        assert!(d_tot(ctx, &d_tot(ctx, &x)).is_zero(), "d_tot^2 != 0 on {name}");
    }
}

/// The graded Cartan identity residual vanishes for 2 and 3 factors.
pub fn cartan_residual_vanishes(cases: usize) {
    let mut rng = rng(15);
    for _ in 0..cases {
        let nvars = rng.gen_range(2..=3);
        let k = rng.gen_range(2..=3);
        let degree = rng.gen_range(1..=nvars);
        let a = rand_form(&mut rng, nvars, degree, 2);
        let factors: Vec<_> = (0..k).map(|_| rand_vec(&mut rng, nvars, 2)).collect();
        assert!(cartan_residual(&a, &factors).is_zero());
    }
}

/// `d∘h + h∘d = id` on positive-degree forms.
pub fn radial_homotopy_splits(cases: usize) {
    let mut rng = rng(16);
    for _ in 0..cases {
        let nvars = rng.gen_range(2..=4);
        let degree = rng.gen_range(1..=nvars);
        let a = rand_form(&mut rng, nvars, degree, 3);
        let reassembled = euler_homotopy(&a).ext_d().add(&euler_homotopy(&a.ext_d()));
        assert!(reassembled.sub(&a).is_zero());
    }
}

/// `δ̄(v_p) = v_{δp}`: both sides are formal sums of decomposable
/// fields, compared through contraction with every constant basis
/// form of matching degree.
pub fn field_homology_matches(cases: usize) {
    let corpus: Vec<_> = scene_corpus()
        .into_iter()
        .filter(|(_, ctx)| ctx.algebra().dim() >= 2)
        .collect();
    let mut rng = rng(17);
    for i in 0..cases {
        let (name, ctx) = &corpus[i % corpus.len()];
        let dim = ctx.algebra().dim();
        let k = rng.gen_range(2..=dim);
        let p = rand_multivector(&mut rng, dim, k);
        let lhs = ctx.action().multi_field(&p).delta_bar();
        let rhs = ctx.action().multi_field(&delta(ctx.algebra(), &p));
        for set in subsets(ctx.nvars(), k - 1) {
            let probe = PolyForm::basis(ctx.nvars(), &set);
            assert!(
                lhs.contract(&probe).sub(&rhs.contract(&probe)).is_zero(),
                "field homology mismatch on {name}"
            );
        }
    }
}

/// `ad_x p = -δ(x∧p) - x∧δ(p)`.
pub fn adjoint_wedge_defect(cases: usize) {
    let corpus = algebra_corpus();
    let mut rng = rng(18);
    for i in 0..cases {
        let (name, g) = &corpus[i % corpus.len()];
        let dim = g.dim();
        let xi = rng.gen_range(0..dim);
        let k = rng.gen_range(1..=dim);
        let p = rand_multivector(&mut rng, dim, k);
        let x = Multivector::basis(dim, &[xi]);
        let lhs = adjoint_action(g, xi, &p);
        let mut rhs = delta(g, &x.wedge(&p)).scale(&rat_int(-1));
        if k >= 2 {
            rhs = rhs.add(&x.wedge(&delta(g, &p)).scale(&rat_int(-1)));
        }
        for set in subsets(dim, k) {
            assert_eq!(lhs.coeff(&set), rhs.coeff(&set), "adjoint mismatch on {name}");
        }
    }
}

/// `L_{v_x} ι_{v_p} ω = ι_{v_{ad_x p}} ω` for preserved structures.
pub fn lie_derivative_adjoint(cases: usize) {
    let corpus = scene_corpus();
    let mut rng = rng(19);
    for i in 0..cases {
        let (name, ctx) = &corpus[i % corpus.len()];
        let dim = ctx.algebra().dim();
        let k = rng.gen_range(1..=dim.min(ctx.plectic_degree() + 1));
        let p = rand_multivector(&mut rng, dim, k);
        let xi = rng.gen_range(0..dim);
        let contraction = ctx.action().omega_contraction(ctx.structure(), &p);
        let lhs = contraction.lie_derivative(&ctx.action().generators()[xi]);
        let rhs = ctx
            .action()
            .omega_contraction(ctx.structure(), &adjoint_action(ctx.algebra(), xi, &p));
        assert!(lhs.sub(&rhs).is_zero(), "invariance mismatch on {name}");
    }
}

/// `ι_{v_p} ω` is closed for every cycle `p ∈ P_k`, `k ≤ n`.
pub fn kernel_contractions_closed(cases: usize) {
    let corpus = scene_corpus();
    let mut rng = rng(20);
    for i in 0..cases {
        let (name, ctx) = &corpus[i % corpus.len()];
        let n = ctx.plectic_degree();
        let dim = ctx.algebra().dim();
        for k in 1..=n.min(dim) {
            let rank = ctx.kernel_rank(k);
            if rank == 0 {
                continue;
            }
            let mut p = Multivector::zero(dim, k);
            for j in 0..rank {
                p = p.add(
                    &ctx.kernel(k)
                        .basis_multivector(j)
                        .scale(&rand_rat(&mut rng)),
                );
            }
            let contraction = ctx.action().omega_contraction(ctx.structure(), &p);
            assert!(contraction.ext_d().is_zero(), "non-closed contraction on {name}");
        }
    }
}

/// `restrict∘d_tot = d_tot∘restrict` on random full cochains.
pub fn restriction_chain_map(cases: usize) {
    let corpus = scene_corpus();
    let mut rng = rng(21);
    for i in 0..cases {
        let (name, ctx) = &corpus[i % corpus.len()];
        let n = ctx.plectic_degree();
        let t = rng.gen_range(1..=n + 1);
        let x = rand_cochain(&mut rng, ctx, Flavor::Full, t);
        let lhs = restrict_to_kernels(ctx, &d_tot(ctx, &x));
        let rhs = d_tot(ctx, &restrict_to_kernels(ctx, &x));
        assert!(lhs.equals(&rhs), "restriction is not a chain map on {name}");
    }
}

/// `res(ω̃) = ω̂ + (-1)^n φ` across random coordinate changes of the
/// scene corpus.
pub fn restricted_cocycle_splits(cases: usize) {
    let corpus = scene_corpus();
    let mut rng = rng(22);
    let mut checked = 0;
    while checked < cases {
        let (name, base) = &corpus[checked % corpus.len()];
        let m = rand_gl(&mut rng, base.nvars());
        let Some(ctx) = conjugate_ctx(base, &m) else { continue };
        let n = ctx.plectic_degree();
        let full = canonical_cocycle(&ctx).unwrap();
        let hat = kernel_cocycle(&ctx).unwrap();
        let phi_map = phi(&ctx);
        let mut expected = hat.clone();
        if !phi_map.values.is_empty() {
            let sign = if n % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            let top: Vec<PolyForm> = phi_map
                .values
                .iter()
                .map(|p| PolyForm::from_poly(p.clone()).scale(&sign))
                .collect();
            expected.set_component(n + 1, top);
        }
        assert!(
            restrict_to_kernels(&ctx, &full).equals(&expected),
            "restricted cocycle mismatch on a conjugate of {name}"
        );
        checked += 1;
    }
}

/// Runs every suite at the given case count; returns how many ran.
pub fn run_all(cases: usize) -> usize {
    homology_differential_squares(cases);
    cochain_differential_squares(cases);
    exterior_derivative_squares(cases);
    total_differential_squares(cases);
    cartan_residual_vanishes(cases);
    radial_homotopy_splits(cases);
    field_homology_matches(cases);
    adjoint_wedge_defect(cases);
    lie_derivative_adjoint(cases);
    kernel_contractions_closed(cases);
    restriction_chain_map(cases);
    restricted_cocycle_splits(cases);
    12
}
