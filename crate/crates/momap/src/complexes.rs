//! The graded complexes coupling the Lie algebra to the manifold, their
//! canonical cocycles, and the top-arity obstruction analysis.
//!
//! A graded cochain of total degree `D` has one differential-form
//! component per basis element of `Λ^k g` (full flavor) or per Lie
//! kernel basis element of `P_k` (kernel flavor) at every arity `k`
//! with `D - k >= 0`; the form degree at arity `k` is `D - k`.
//!
//! The total differential on the full complex is
//! `(d_tot x)_k(p) = x_{k-1}(δ p) + (-1)^k d(x_k(p))`; on the kernel
//! complex `δ` vanishes by definition of the kernels and only the
//! signed de Rham term survives.  The sign `(-1)^k` is what makes
//! `d_tot ∘ d_tot = 0` and makes restriction to kernels a chain map,
//! and the moment-map correspondence in [`crate::moment`] holds
//! verbatim against this convention.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::action::{GAction, NPlecticStructure};
use crate::combi::subsets;
use crate::forms::PolyForm;
use crate::lie::{
    adjoint_action, ce_differential, class_is_zero, delta, DualCochain, LieAlgebra, LieKernel,
    Multivector,
};
use crate::linalg::Rat;
use crate::moment::zeta;
use crate::poly::Poly;
use crate::{Error, Result};

/// Which complex a graded cochain lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Components over all of `Λ^k g`.
    Full,
    /// Components over the Lie kernels `P_k` only.
    Kernel,
}

impl Flavor {
    pub fn label(self) -> &'static str {
        match self {
            Flavor::Full => "full",
            Flavor::Kernel => "kernel",
        }
    }
}

/// Shared context: an action on a structure plus the Lie kernels and
/// subset index tables, computed once.
#[derive(Clone, Debug)]
pub struct Ctx {
    action: GAction,
    structure: NPlecticStructure,
    kernels: Vec<LieKernel>,
    subset_index: Vec<BTreeMap<Vec<usize>, usize>>,
}

impl Ctx {
    pub fn new(action: GAction, structure: NPlecticStructure) -> Result<Self> {
        if action.algebra().dim() > 0 && action.nvars() != structure.nvars() {
            return Err(Error::Dimension {
                context: "action variable count".into(),
                expected: structure.nvars(),
                got: action.nvars(),
            });
        }
        let dim = action.algebra().dim();
        let mut kernels = Vec::with_capacity(dim);
        for k in 1..=dim {
            kernels.push(LieKernel::new(action.algebra(), k)?);
        }
        let subset_index = (0..=dim)
            .map(|k| {
                subsets(dim, k)
                    .into_iter()
                    .enumerate()
                    .map(|(i, s)| (s, i))
                    .collect()
            })
            .collect();
        Ok(Ctx {
            action,
            structure,
            kernels,
            subset_index,
        })
    }

    pub fn action(&self) -> &GAction {
        &self.action
    }

    pub fn structure(&self) -> &NPlecticStructure {
        &self.structure
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.action.algebra()
    }

    pub fn nvars(&self) -> usize {
        self.structure.nvars()
    }

    /// The `n` of the structure.
    pub fn plectic_degree(&self) -> usize {
        self.structure.plectic_degree()
    }

    /// Lie kernel at arity `k`, `1 <= k <= dim`.
    pub fn kernel(&self, k: usize) -> &LieKernel {
        &self.kernels[k - 1]
    }

    /// Rank of `P_k`; zero beyond the algebra dimension.
    pub fn kernel_rank(&self, k: usize) -> usize {
        if k >= 1 && k <= self.algebra().dim() {
            self.kernel(k).rank()
        } else {
            0
        }
    }

    pub fn subset_position(&self, set: &[usize]) -> usize {
        self.subset_index[set.len()][set]
    }

    /// Component count at arity `k` for a flavor.
    pub fn component_len(&self, flavor: Flavor, k: usize) -> usize {
        match flavor {
            Flavor::Full => subsets(self.algebra().dim(), k).len(),
            Flavor::Kernel => self.kernel_rank(k),
        }
    }
}

/// Cochain of one total degree in the full or kernel complex.
#[derive(Clone, Debug)]
pub struct GradedCochain {
    flavor: Flavor,
    total_degree: usize,
    nvars: usize,
    comps: BTreeMap<usize, Vec<PolyForm>>,
}

impl GradedCochain {
    pub fn new(flavor: Flavor, total_degree: usize, nvars: usize) -> Self {
        GradedCochain {
            flavor,
            total_degree,
            nvars,
            comps: BTreeMap::new(),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn total_degree(&self) -> usize {
        self.total_degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Form degree of the arity-`k` component.
    pub fn form_degree(&self, k: usize) -> Option<usize> {
        self.total_degree.checked_sub(k)
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.comps.keys().copied()
    }

    pub fn set_component(&mut self, k: usize, forms: Vec<PolyForm>) {
        assert!(k >= 1, "arities start at 1");
        assert!(
            self.form_degree(k).is_some(),
            "arity exceeds the total degree"
        );
        if forms.iter().all(PolyForm::is_zero) {
            self.comps.remove(&k);
        } else {
            self.comps.insert(k, forms);
        }
    }

    pub fn component(&self, k: usize) -> Option<&[PolyForm]> {
        self.comps.get(&k).map(Vec::as_slice)
    }

    /// Component padded with zero forms to the flavor's length.
    pub fn component_or_zero(&self, ctx: &Ctx, k: usize) -> Vec<PolyForm> {
        let len = ctx.component_len(self.flavor, k);
        let degree = self.form_degree(k).unwrap_or(0);
        let mut out = self.comps.get(&k).cloned().unwrap_or_default();
        while out.len() < len {
            out.push(PolyForm::zero(self.nvars, degree));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|v| v.iter().all(PolyForm::is_zero))
    }

    pub fn add(&self, other: &GradedCochain) -> GradedCochain {
        assert_eq!(self.flavor, other.flavor, "flavor mismatch in add");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.total_degree, other.total_degree, "degree mismatch");
        let mut out = self.clone();
        for (k, forms) in &other.comps {
            let merged = match out.comps.get(k) {
                Some(existing) => (0..existing.len().max(forms.len()))
                    .map(|i| match (existing.get(i), forms.get(i)) {
                        (Some(a), Some(b)) => a.add(b),
                        (Some(a), None) => a.clone(),
                        (None, Some(b)) => b.clone(),
                        (None, None) => unreachable!("index below the maximum length"),
                    })
                    .collect(),
                None => forms.clone(),
            };
            out.set_component(*k, merged);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> GradedCochain {
        let mut out = GradedCochain::new(self.flavor, self.total_degree, self.nvars);
        if c.is_zero() {
            return out;
        }
        for (k, forms) in &self.comps {
            out.set_component(*k, forms.iter().map(|f| f.scale(c)).collect());
        }
        out
    }

    pub fn sub(&self, other: &GradedCochain) -> GradedCochain {
        self.add(&other.scale(&-Rat::from_integer(1.into())))
    }

    /// Equality by components, treating missing arities as zero.
    pub fn equals(&self, other: &GradedCochain) -> bool {
        if self.flavor != other.flavor {
            return false;
        }
        let arities: std::collections::BTreeSet<usize> =
            self.arities().chain(other.arities()).collect();
        for k in arities {
            match (self.comps.get(&k), other.comps.get(&k)) {
                (Some(a), Some(b)) => {
                    for i in 0..a.len().max(b.len()) {
                        let same = match (a.get(i), b.get(i)) {
                            (Some(x), Some(y)) => x == y,
                            (Some(x), None) => x.is_zero(),
                            (None, Some(y)) => y.is_zero(),
                            (None, None) => true,
                        };
                        if !same {
                            return false;
                        }
                    }
                }
                (Some(a), None) => {
                    if !a.iter().all(PolyForm::is_zero) {
                        return false;
                    }
                }
                (None, Some(b)) => {
                    if !b.iter().all(PolyForm::is_zero) {
                        return false;
                    }
                }
                (None, None) => {}
            }
        }
        true
    }

    /// Evaluates a full-flavor cochain on an arbitrary multivector.
    pub fn apply_full(&self, ctx: &Ctx, p: &Multivector) -> PolyForm {
        assert_eq!(self.flavor, Flavor::Full);
        let k = p.degree();
        let degree = self.form_degree(k).unwrap_or(0);
        let mut out = PolyForm::zero(self.nvars, degree);
        let Some(forms) = self.comps.get(&k) else {
            return out;
        };
        for (set, c) in p.terms() {
            if let Some(f) = forms.get(ctx.subset_position(set)) {
                out = out.add(&f.scale(c));
            }
        }
        out
    }

    /// Evaluates a kernel-flavor cochain on a cycle.
    pub fn apply_kernel(&self, ctx: &Ctx, p: &Multivector) -> Result<PolyForm> {
        assert_eq!(self.flavor, Flavor::Kernel);
        let k = p.degree();
        let degree = self.form_degree(k).unwrap_or(0);
        let coords = ctx.kernel(k).express(p)?;
        let mut out = PolyForm::zero(self.nvars, degree);
        let Some(forms) = self.comps.get(&k) else {
            return Ok(out);
        };
        for (c, f) in coords.iter().zip(forms) {
            if !c.is_zero() {
                out = out.add(&f.scale(c));
            }
        }
        Ok(out)
    }
}

/// Total differential; see the module docs for the sign convention.
pub fn d_tot(ctx: &Ctx, x: &GradedCochain) -> GradedCochain {
    let dim = ctx.algebra().dim();
    let mut out = GradedCochain::new(x.flavor(), x.total_degree() + 1, x.nvars());
    for k in 1..=dim {
        let Some(target_degree) = (x.total_degree() + 1).checked_sub(k) else {
            continue;
        };
        let len = ctx.component_len(x.flavor(), k);
        let mut forms = vec![PolyForm::zero(x.nvars(), target_degree); len];
        let de_rham_sign = if k % 2 == 0 {
            Rat::from_integer(1.into())
        } else {
            Rat::from_integer((-1).into())
        };
        if let Some(own) = x.component(k) {
            for (j, f) in own.iter().enumerate() {
                forms[j] = forms[j].add(&f.ext_d().scale(&de_rham_sign));
            }
        }
        if x.flavor() == Flavor::Full && k >= 2 {
            if let Some(lower) = x.component(k - 1) {
                for (j, set) in subsets(dim, k).iter().enumerate() {
                    let boundary = delta(ctx.algebra(), &Multivector::basis(dim, set));
                    for (t, c) in boundary.terms() {
                        if let Some(f) = lower.get(ctx.subset_position(t)) {
                            forms[j] = forms[j].add(&f.scale(c));
                        }
                    }
                }
            }
        }
        if forms.iter().any(|f| !f.is_zero()) {
            out.set_component(k, forms);
        }
    }
    out
}

/// The canonical total cocycle of the structure: arity-`k` component
/// `(-1)^{k-1} ι_{v_p} ω` over `Λ^k g`, for `k = 1..n+1`.
///
/// Fails with the exact residual when it is not `d_tot`-closed, which
/// signals that the action does not preserve the form.
pub fn canonical_cocycle(ctx: &Ctx) -> Result<GradedCochain> {
    let dim = ctx.algebra().dim();
    let n = ctx.plectic_degree();
    let mut out = GradedCochain::new(Flavor::Full, n + 1, ctx.nvars());
    for k in 1..=dim.min(n + 1) {
        let sign = if (k - 1) % 2 == 0 {
            Rat::from_integer(1.into())
        } else {
            Rat::from_integer((-1).into())
        };
        let forms: Vec<PolyForm> = subsets(dim, k)
            .iter()
            .map(|s| {
                ctx.action()
                    .omega_contraction(ctx.structure(), &Multivector::basis(dim, s))
                    .scale(&sign)
            })
            .collect();
        out.set_component(k, forms);
    }
    let residual = d_tot(ctx, &out);
    if !residual.is_zero() {
        return Err(Error::NotClosed {
            context: "canonical total cocycle".into(),
            residual: render_cochain_summary(&residual),
        });
    }
    Ok(out)
}

/// Kernel-complex counterpart of [`canonical_cocycle`]: the same signed
/// contractions restricted to `P_k` for `k = 1..n`; every component
/// must be a closed form.
pub fn kernel_cocycle(ctx: &Ctx) -> Result<GradedCochain> {
    let dim = ctx.algebra().dim();
    let n = ctx.plectic_degree();
    let mut out = GradedCochain::new(Flavor::Kernel, n + 1, ctx.nvars());
    for k in 1..=dim.min(n) {
        let sign = if (k - 1) % 2 == 0 {
            Rat::from_integer(1.into())
        } else {
            Rat::from_integer((-1).into())
        };
        let kernel = ctx.kernel(k);
        let mut forms = Vec::with_capacity(kernel.rank());
        for j in 0..kernel.rank() {
            let p = kernel.basis_multivector(j);
            let form = ctx
                .action()
                .omega_contraction(ctx.structure(), &p)
                .scale(&sign);
            let residual = form.ext_d();
            if !residual.is_zero() {
                return Err(Error::NotClosed {
                    context: format!("kernel cocycle component at arity {k}, cycle {}", j + 1),
                    residual: residual.render(),
                });
            }
            forms.push(form);
        }
        out.set_component(k, forms);
    }
    Ok(out)
}

/// Restriction of a full cochain to the Lie kernels, arity by arity.
/// This is a chain map: it commutes with the total differentials.
pub fn restrict_to_kernels(ctx: &Ctx, x: &GradedCochain) -> GradedCochain {
    assert_eq!(x.flavor(), Flavor::Full);
    let dim = ctx.algebra().dim();
    let mut out = GradedCochain::new(Flavor::Kernel, x.total_degree(), x.nvars());
    for k in 1..=dim {
        let Some(forms) = x.component(k) else { continue };
        let Some(degree) = x.form_degree(k) else { continue };
        let kernel = ctx.kernel(k);
        let restricted: Vec<PolyForm> = kernel
            .basis_coords()
            .iter()
            .map(|coords| {
                let mut acc = PolyForm::zero(x.nvars(), degree);
                for (c, f) in coords.iter().zip(forms) {
                    if !c.is_zero() {
                        acc = acc.add(&f.scale(c));
                    }
                }
                acc
            })
            .collect();
        out.set_component(k, restricted);
    }
    out
}

/// The top-arity contraction map on cycles: `p ∈ P_{n+1} ↦ ι_{v_p} ω`,
/// one function per kernel basis element.  Its vanishing is the entire
/// existence question for homotopy moment maps here.
#[derive(Clone, Debug)]
pub struct PhiMap {
    pub arity: usize,
    pub values: Vec<Poly>,
}

impl PhiMap {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Poly::is_zero)
    }
}

pub fn phi(ctx: &Ctx) -> PhiMap {
    let k = ctx.plectic_degree() + 1;
    let mut values = Vec::new();
    if k <= ctx.algebra().dim() {
        let kernel = ctx.kernel(k);
        for j in 0..kernel.rank() {
            let p = kernel.basis_multivector(j);
            values.push(
                ctx.action()
                    .omega_contraction(ctx.structure(), &p)
                    .as_poly(),
            );
        }
    }
    PhiMap { arity: k, values }
}

/// Everything the top-arity obstruction analysis produces: the
/// contraction map on cycles, the pointwise cocycles, and the class
/// verdict with a primitive as witness when the class vanishes.
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub phi: PhiMap,
    /// Sample points, basepoint first.
    pub points: Vec<Vec<Rat>>,
    /// The cocycle at each sample point, same order.
    pub cocycles: Vec<DualCochain>,
    pub class_zero: bool,
    /// Primitive of the basepoint cocycle, when the class vanishes.
    pub primitive: Option<DualCochain>,
}

impl ObstructionReport {
    /// The existence verdict for homotopy moment maps.
    pub fn unobstructed(&self) -> bool {
        self.class_zero
    }
}

/// Computes the pointwise obstruction cocycle
/// `p ↦ (-1)^n ζ(n+1) (ι_{v_p} ω)|_m` on `Λ^{n+1} g` at the basepoint
/// and the extra sample points, decides its class, and cross-checks
/// the verdict against the contraction map on cycles.
///
/// Preconditions: the action validates.  A non-closed cocycle is
/// reported as a precondition failure; a verdict that disagrees across
/// points or with the cycle-level map would violate the supporting
/// theory and comes back as an internal error.
pub fn obstruction_cocycle(ctx: &Ctx, extra_points: &[Vec<Rat>]) -> Result<ObstructionReport> {
    let g = ctx.algebra();
    let n = ctx.plectic_degree();
    let k = n + 1;
    let phi = phi(ctx);
    let mut points = vec![ctx.structure().basepoint().to_vec()];
    points.extend(extra_points.iter().cloned());

    let sets = subsets(g.dim(), k);
    let contractions: Vec<Poly> = sets
        .iter()
        .map(|s| {
            ctx.action()
                .omega_contraction(ctx.structure(), &Multivector::basis(g.dim(), s))
                .as_poly()
        })
        .collect();
    let normalization = {
        let n_sign = if n % 2 == 0 { 1 } else { -1 };
        zeta(k) * Rat::from_integer(n_sign.into())
    };

    let mut cocycles = Vec::new();
    let mut verdicts = Vec::new();
    let mut primitive = None;
    for (pos, m) in points.iter().enumerate() {
        if m.len() != ctx.nvars() {
            return Err(Error::Dimension {
                context: format!("sample point {pos}"),
                expected: ctx.nvars(),
                got: m.len(),
            });
        }
        let mut c = DualCochain::zero(g.dim(), k);
        for (s, p) in sets.iter().zip(&contractions) {
            c.set(s.clone(), p.eval(m) * &normalization);
        }
        let closed = ce_differential(g, &c);
        if !closed.is_zero() {
            return Err(Error::Precondition(format!(
                "obstruction cocycle fails to be closed at sample point {pos}; the action does not preserve the structure (d c = {})",
                closed.render()
            )));
        }
        let witness = class_is_zero(g, &c)?;
        if pos == 0 {
            primitive = witness.clone();
        }
        verdicts.push(witness.is_some());
        cocycles.push(c);
    }
    let class_zero = verdicts[0];
    if verdicts.iter().any(|&v| v != class_zero) {
        return Err(Error::Internal(
            "obstruction class verdict varies across sample points".into(),
        ));
    }
    for c in &cocycles[1..] {
        let diff = cocycles[0].sub(c);
        if class_is_zero(g, &diff)?.is_none() {
            return Err(Error::Internal(
                "pointwise obstruction cocycles differ by a non-exact cochain".into(),
            ));
        }
    }
    if class_zero != phi.is_zero() {
        return Err(Error::Internal(
            "class verdict disagrees with the cycle-level contraction map".into(),
        ));
    }
    Ok(ObstructionReport {
        phi,
        points,
        cocycles,
        class_zero,
        primitive,
    })
}

/// The algebra's action on graded cochains:
/// `(x·c)_k(p) = L_{v_x}(c_k(p)) - c_k(ad_x p)`.
///
/// A cochain built from the structure by contraction is invariant, so
/// this measures equivariance defects.
pub fn generator_action(ctx: &Ctx, x: usize, c: &GradedCochain) -> Result<GradedCochain> {
    let g = ctx.algebra();
    let dim = g.dim();
    let v = &ctx.action().generators()[x];
    let mut out = GradedCochain::new(c.flavor(), c.total_degree(), c.nvars());
    for k in 1..=dim {
        if c.component(k).is_none() {
            continue;
        }
        let Some(degree) = c.form_degree(k) else { continue };
        let forms = c.component_or_zero(ctx, k);
        let mut moved = vec![PolyForm::zero(c.nvars(), degree); forms.len()];
        match c.flavor() {
            Flavor::Full => {
                for (j, set) in subsets(dim, k).iter().enumerate() {
                    let lie = forms[j].lie_derivative(v);
                    let image = adjoint_action(g, x, &Multivector::basis(dim, set));
                    let mut pulled = PolyForm::zero(c.nvars(), degree);
                    for (t, coeff) in image.terms() {
                        pulled = pulled.add(&forms[ctx.subset_position(t)].scale(coeff));
                    }
                    moved[j] = lie.sub(&pulled);
                }
            }
            Flavor::Kernel => {
                let kernel = ctx.kernel(k);
                for j in 0..forms.len() {
                    let lie = forms[j].lie_derivative(v);
                    let image = adjoint_action(g, x, &kernel.basis_multivector(j));
                    // kernels are ad-invariant, so the image is a cycle
                    let coords = kernel.express(&image).map_err(|_| {
                        Error::Internal("adjoint action left the Lie kernel".into())
                    })?;
                    let mut pulled = PolyForm::zero(c.nvars(), degree);
                    for (coeff, f) in coords.iter().zip(forms.iter()) {
                        if !coeff.is_zero() {
                            pulled = pulled.add(&f.scale(coeff));
                        }
                    }
                    moved[j] = lie.sub(&pulled);
                }
            }
        }
        out.set_component(k, moved);
    }
    Ok(out)
}

/// Short rendering for error messages: arity, index, and form.
pub fn render_cochain_summary(c: &GradedCochain) -> String {
    let mut pieces = Vec::new();
    for k in c.arities().collect::<Vec<_>>() {
        if let Some(forms) = c.component(k) {
            for (j, f) in forms.iter().enumerate() {
                if !f.is_zero() {
                    pieces.push(format!("arity {k} index {}: {}", j + 1, f.render()));
                }
            }
        }
    }
    if pieces.is_empty() {
        "0".to_string()
    } else {
        pieces.join("; ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat_int};
    use crate::testutil::{rotation_ctx, sl2_ctx, translation_ctx};

    #[test]
    fn canonical_cocycle_is_closed_for_the_standard_actions() {
        for ctx in [rotation_ctx(), translation_ctx(), sl2_ctx()] {
            let omega = canonical_cocycle(&ctx).unwrap();
            assert!(d_tot(&ctx, &omega).is_zero());
        }
    }

    #[test]
    fn canonical_cocycle_arity_one_is_the_plain_contraction() {
        let ctx = rotation_ctx();
        let omega = canonical_cocycle(&ctx).unwrap();
        let forms = omega.component(1).unwrap();
        for (i, f) in forms.iter().enumerate() {
            let direct = ctx
                .action()
                .omega_contraction(ctx.structure(), &Multivector::basis(3, &[i]));
            assert_eq!(*f, direct);
        }
    }

    #[test]
    fn total_differential_squares_to_zero_on_the_canonical_cocycle_pieces() {
        let ctx = rotation_ctx();
        let mut x = GradedCochain::new(Flavor::Full, 2, 3);
        // an arbitrary mixed cochain: arity 1 gets x1 dx2, arity 2 gets x3
        let mut a1 = vec![PolyForm::zero(3, 1); 3];
        a1[0] = PolyForm::dx(3, 1).scale_poly(&Poly::var(3, 0));
        let mut a2 = vec![PolyForm::zero(3, 0); 3];
        a2[2] = PolyForm::from_poly(Poly::var(3, 2));
        x.set_component(1, a1);
        x.set_component(2, a2);
        let dd = d_tot(&ctx, &d_tot(&ctx, &x));
        assert!(dd.is_zero());
    }

    #[test]
    fn restriction_is_a_chain_map_on_a_sample() {
        let ctx = sl2_ctx();
        let mut x = GradedCochain::new(Flavor::Full, 1, 2);
        let mut a1 = vec![PolyForm::zero(2, 0); 3];
        a1[0] = PolyForm::from_poly(Poly::var(2, 0));
        a1[2] = PolyForm::from_poly(Poly::var(2, 1));
        x.set_component(1, a1);
        let lhs = restrict_to_kernels(&ctx, &d_tot(&ctx, &x));
        let rhs = d_tot(&ctx, &restrict_to_kernels(&ctx, &x));
        assert!(lhs.equals(&rhs));
    }

    #[test]
    fn rotation_phi_vanishes_and_class_is_zero() {
        let ctx = rotation_ctx();
        let phi_map = phi(&ctx);
        assert_eq!(phi_map.values.len(), 1);
        assert!(phi_map.is_zero());
        let report = obstruction_cocycle(
            &ctx,
            &[vec![rat_int(1), rat_int(-2), rat_int(3)]],
        )
        .unwrap();
        assert!(report.class_zero);
        assert!(report.primitive.is_some());
        assert!(report.cocycles[0].is_zero());
    }

    #[test]
    fn translation_obstruction_is_the_frozen_cocycle() {
        let ctx = translation_ctx();
        let phi_map = phi(&ctx);
        assert_eq!(phi_map.values.len(), 1);
        assert_eq!(phi_map.values[0].as_constant(), Some(rat_int(1)));
        let report = obstruction_cocycle(&ctx, &[vec![rat_int(2), rat_int(5)]]).unwrap();
        assert!(!report.class_zero);
        // c(e1∧e2) = (-1)^1 ζ(2) · 1 = -1 at every point
        for c in &report.cocycles {
            assert_eq!(c.coeff(&[0, 1]), rat_int(-1));
        }
    }

    #[test]
    fn restricted_canonical_cocycle_matches_kernel_cocycle_plus_signed_phi() {
        for ctx in [rotation_ctx(), translation_ctx(), sl2_ctx()] {
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
            assert!(restrict_to_kernels(&ctx, &full).equals(&expected));
        }
    }

    #[test]
    fn canonical_cocycle_is_invariant_under_every_generator() {
        for ctx in [rotation_ctx(), translation_ctx(), sl2_ctx()] {
            let omega = canonical_cocycle(&ctx).unwrap();
            for x in 0..ctx.algebra().dim() {
                let moved = generator_action(&ctx, x, &omega).unwrap();
                assert!(moved.is_zero());
            }
        }
    }
}
