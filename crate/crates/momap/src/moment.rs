//! Weak and homotopy moment maps: verification against the defining
//! equations, construction through the radial primitive, the existence
//! dichotomy, strict extension of a weak map, and infinitesimal
//! equivariance with equivariantization.
//!
//! A homotopy moment map has components `f_k : Λ^k g → Ω^{n-k}(M)` for
//! `k = 1..n` and satisfies, with `f_0 = f_{n+1} = 0`,
//!
//! ```text
//!     d f_k(p) + ζ(k) ι_{v_p} ω + f_{k-1}(δ p) = 0,   k = 1..n+1.
//! ```
//!
//! A weak moment map keeps only the first `n` equations and only on the
//! Lie kernels `P_k`, where the `δ` term drops out.  Scaling the
//! components by `ζ(k)` turns a map of either kind into a potential of
//! the canonical cocycle of its complex, and that correspondence is
//! exact under the sign conventions of [`crate::complexes`].

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::combi::subsets;
use crate::complexes::{
    canonical_cocycle, d_tot, generator_action, obstruction_cocycle, phi, restrict_to_kernels,
    Ctx, Flavor, GradedCochain, ObstructionReport,
};
use crate::forms::{euler_homotopy, poincare_primitive, PolyForm};
use crate::lie::{adjoint_action, ce_cohomology, ce_matrix, delta, invariants, Multivector};
use crate::linalg::{dot, format_rat, rat_int, Rat, RatMatrix};
use crate::action::monomials_up_to;
use crate::poly::Poly;
use crate::{Error, Result};

/// The sign `ζ(k) = -(-1)^{k(k+1)/2}` appearing in the higher brackets
/// and the moment-map equations; period four in `k`: +1, +1, -1, -1.
pub fn zeta(k: usize) -> Rat {
    match k % 4 {
        1 | 2 => rat_int(1),
        _ => rat_int(-1),
    }
}

/// A weak or homotopy moment map: one differential form of degree
/// `n - k` per arity-`k` domain basis vector, where the domain is the
/// Lie kernel `P_k` (weak) or all of `Λ^k g` (homotopy).
#[derive(Clone, Debug)]
pub struct MomentMap {
    data: GradedCochain,
}

impl MomentMap {
    pub fn new(flavor: Flavor, plectic_degree: usize, nvars: usize) -> Self {
        MomentMap {
            data: GradedCochain::new(flavor, plectic_degree, nvars),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.data.flavor()
    }

    /// The `n` the map was built for.
    pub fn plectic_degree(&self) -> usize {
        self.data.total_degree()
    }

    pub fn nvars(&self) -> usize {
        self.data.nvars()
    }

    pub fn cochain(&self) -> &GradedCochain {
        &self.data
    }

    pub fn set_component(&mut self, k: usize, forms: Vec<PolyForm>) {
        self.data.set_component(k, forms);
    }

    pub fn component(&self, k: usize) -> Option<&[PolyForm]> {
        self.data.component(k)
    }

    pub fn component_or_zero(&self, ctx: &Ctx, k: usize) -> Vec<PolyForm> {
        self.data.component_or_zero(ctx, k)
    }

    /// Largest polynomial coefficient degree over all components.
    pub fn max_coeff_degree(&self) -> usize {
        self.data
            .arities()
            .filter_map(|k| self.data.component(k))
            .flatten()
            .map(PolyForm::coeff_degree)
            .max()
            .unwrap_or(0)
    }

    /// The potential associated to the map: components `ζ(k) f_k`.  A
    /// map verifies exactly when the total differential of its
    /// potential is the canonical cocycle of its complex.
    pub fn potential(&self) -> GradedCochain {
        let mut out = GradedCochain::new(self.flavor(), self.plectic_degree(), self.nvars());
        for k in self.data.arities().collect::<Vec<_>>() {
            if let Some(forms) = self.data.component(k) {
                let z = zeta(k);
                out.set_component(k, forms.iter().map(|f| f.scale(&z)).collect());
            }
        }
        out
    }

    /// Inverse of [`MomentMap::potential`]; `ζ(k)` is its own inverse.
    pub fn from_potential(alpha: &GradedCochain) -> MomentMap {
        let mut out = MomentMap::new(alpha.flavor(), alpha.total_degree(), alpha.nvars());
        for k in alpha.arities().collect::<Vec<_>>() {
            if let Some(forms) = alpha.component(k) {
                let z = zeta(k);
                out.set_component(k, forms.iter().map(|f| f.scale(&z)).collect());
            }
        }
        out
    }

    /// Componentwise difference, used for corrections.
    pub fn sub(&self, other: &MomentMap) -> MomentMap {
        MomentMap {
            data: self.data.sub(&other.data),
        }
    }

    /// Restriction of a homotopy map to the Lie kernels, which is a
    /// weak map whenever the input verifies.
    pub fn restrict(&self, ctx: &Ctx) -> MomentMap {
        assert_eq!(self.flavor(), Flavor::Full, "only full maps restrict");
        MomentMap {
            data: restrict_to_kernels(ctx, &self.data),
        }
    }

    /// Exact componentwise equality against another map, treating
    /// missing arities as zero.
    pub fn equals(&self, other: &MomentMap) -> bool {
        self.data.equals(&other.data)
    }
}

/// Checks that a map's shape matches the context and the expected
/// flavor before any equation is evaluated.
fn validate_shape(ctx: &Ctx, map: &MomentMap, flavor: Flavor) -> Result<()> {
    if map.flavor() != flavor {
        return Err(Error::FlavorMismatch {
            expected: flavor.label().into(),
            found: map.flavor().label().into(),
        });
    }
    if map.nvars() != ctx.nvars() {
        return Err(Error::Dimension {
            context: "moment map variable count".into(),
            expected: ctx.nvars(),
            got: map.nvars(),
        });
    }
    if map.plectic_degree() != ctx.plectic_degree() {
        return Err(Error::Dimension {
            context: "moment map plectic degree".into(),
            expected: ctx.plectic_degree(),
            got: map.plectic_degree(),
        });
    }
    let n = ctx.plectic_degree();
    let top = n.min(ctx.algebra().dim());
    for k in map.cochain().arities().collect::<Vec<_>>() {
        if k > top {
            return Err(Error::Dimension {
                context: "moment map arity range".into(),
                expected: top,
                got: k,
            });
        }
        let forms = map.component(k).unwrap();
        let want = ctx.component_len(flavor, k);
        if forms.len() > want {
            return Err(Error::Dimension {
                context: format!("moment map component count at arity {k}"),
                expected: want,
                got: forms.len(),
            });
        }
        for (j, f) in forms.iter().enumerate() {
            if !f.is_zero() && f.degree() != n - k {
                return Err(Error::Dimension {
                    context: format!("form degree at arity {k}, index {}", j + 1),
                    expected: n - k,
                    got: f.degree(),
                });
            }
        }
    }
    Ok(())
}

/// One nonzero residual of a defining equation.
#[derive(Clone, Debug)]
pub struct ResidualEntry {
    pub arity: usize,
    /// Position in the arity's domain basis (kernel basis or subset
    /// order), zero-based.
    pub index: usize,
    pub residual: PolyForm,
}

/// Outcome of checking a map against its defining equations.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub flavor: Flavor,
    /// Number of (arity, basis vector) equations evaluated.
    pub checked: usize,
    pub failures: Vec<ResidualEntry>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `d f̂_k(p) + ζ(k) ι_{v_p} ω` on every Lie-kernel basis
/// vector, `k = 1..n`; the map passes when every residual is the zero
/// form.
pub fn verify_weak(ctx: &Ctx, map: &MomentMap) -> Result<VerifyReport> {
    validate_shape(ctx, map, Flavor::Kernel)?;
    let n = ctx.plectic_degree();
    let dim = ctx.algebra().dim();
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 1..=n.min(dim) {
        let forms = map.component_or_zero(ctx, k);
        let kernel = ctx.kernel(k);
        let z = zeta(k);
        for (j, f) in forms.iter().enumerate() {
            let p = kernel.basis_multivector(j);
            let contraction = ctx.action().omega_contraction(ctx.structure(), &p);
            let residual = f.ext_d().add(&contraction.scale(&z));
            checked += 1;
            if !residual.is_zero() {
                failures.push(ResidualEntry {
                    arity: k,
                    index: j,
                    residual,
                });
            }
        }
    }
    Ok(VerifyReport {
        flavor: Flavor::Kernel,
        checked,
        failures,
    })
}

/// Evaluates `d f_k(p) + ζ(k) ι_{v_p} ω + f_{k-1}(δ p)` on every basis
/// multivector for `k = 1..n+1`, with `f_0 = f_{n+1} = 0`.
pub fn verify_homotopy(ctx: &Ctx, map: &MomentMap) -> Result<VerifyReport> {
    validate_shape(ctx, map, Flavor::Full)?;
    let n = ctx.plectic_degree();
    let dim = ctx.algebra().dim();
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 1..=(n + 1).min(dim) {
        let z = zeta(k);
        let own = if k <= n {
            Some(map.component_or_zero(ctx, k))
        } else {
            None
        };
        for (j, set) in subsets(dim, k).iter().enumerate() {
            let p = Multivector::basis(dim, set);
            let mut residual = ctx
                .action()
                .omega_contraction(ctx.structure(), &p)
                .scale(&z);
            if let Some(own) = &own {
                residual = residual.add(&own[j].ext_d());
            }
            if k >= 2 {
                let boundary = delta(ctx.algebra(), &p);
                residual = residual.add(&map.cochain().apply_full(ctx, &boundary));
            }
            checked += 1;
            if !residual.is_zero() {
                failures.push(ResidualEntry {
                    arity: k,
                    index: j,
                    residual,
                });
            }
        }
    }
    Ok(VerifyReport {
        flavor: Flavor::Full,
        checked,
        failures,
    })
}

/// Builds the weak moment map `f̂_k(p) = -ζ(k) h(ι_{v_p} ω)` from the
/// radial primitive `h`; always exists here because every closed form
/// on R^N has a primitive.  The output passes [`verify_weak`].
pub fn construct_weak(ctx: &Ctx) -> Result<MomentMap> {
    let n = ctx.plectic_degree();
    let dim = ctx.algebra().dim();
    let mut map = MomentMap::new(Flavor::Kernel, n, ctx.nvars());
    for k in 1..=n.min(dim) {
        let kernel = ctx.kernel(k);
        let z = zeta(k);
        let mut forms = Vec::with_capacity(kernel.rank());
        for j in 0..kernel.rank() {
            let p = kernel.basis_multivector(j);
            let contraction = ctx.action().omega_contraction(ctx.structure(), &p);
            forms.push(poincare_primitive(&contraction)?.scale(&-z.clone()));
        }
        map.set_component(k, forms);
    }
    Ok(map)
}

/// Failure certificate of [`construct_homotopy`]: the final equation's
/// constant residuals over the full arity-(n+1) basis, together with
/// their restriction to the cycle space rescaled to the contraction
/// map.  Nonzero restriction values are exactly the obstruction.
#[derive(Clone, Debug)]
pub struct ObstructionCertificate {
    pub arity: usize,
    /// `-f_n(δ p) - ζ(n+1) ι_{v_p} ω` per basis subset, each constant.
    pub residuals: Vec<Rat>,
    /// The residuals on the kernel basis of `P_{n+1}`, rescaled by
    /// `-ζ(n+1)` so they equal the contraction map's values there.
    pub phi_restriction: Vec<Rat>,
    /// The components that satisfy the first `n` equations.
    pub partial: MomentMap,
}

/// Outcome of the ascending construction.
#[derive(Clone, Debug)]
pub enum HomotopyOutcome {
    Constructed(MomentMap),
    Obstructed(ObstructionCertificate),
}

impl HomotopyOutcome {
    pub fn constructed(&self) -> Option<&MomentMap> {
        match self {
            HomotopyOutcome::Constructed(m) => Some(m),
            HomotopyOutcome::Obstructed(_) => None,
        }
    }
}

/// Ascending construction of a homotopy moment map:
/// `f_k(p) = h(-f_{k-1}(δ p) - ζ(k) ι_{v_p} ω)` for `k = 1..n`, each
/// right-hand side checked to be closed, followed by the final
/// equation at arity `n+1`.  A constant final residual that is a
/// coboundary is absorbed into `f_n`; one that is not is a genuine
/// obstruction and comes back as a certificate.  Construction succeeds
/// exactly when the contraction map on top cycles vanishes.
pub fn construct_homotopy(ctx: &Ctx) -> Result<HomotopyOutcome> {
    let n = ctx.plectic_degree();
    let dim = ctx.algebra().dim();
    let g = ctx.algebra();
    let mut map = MomentMap::new(Flavor::Full, n, ctx.nvars());
    for k in 1..=n.min(dim) {
        let z = zeta(k);
        let sets = subsets(dim, k);
        let mut forms = Vec::with_capacity(sets.len());
        for set in &sets {
            let p = Multivector::basis(dim, set);
            let mut rhs = ctx
                .action()
                .omega_contraction(ctx.structure(), &p)
                .scale(&-z.clone());
            if k >= 2 {
                let boundary = delta(g, &p);
                rhs = rhs.sub(&map.cochain().apply_full(ctx, &boundary));
            }
            forms.push(poincare_primitive(&rhs)?);
        }
        map.set_component(k, forms);
    }

    if n + 1 > dim {
        return Ok(HomotopyOutcome::Constructed(map));
    }

    let z_top = zeta(n + 1);
    let sets = subsets(dim, n + 1);
    let mut rho = Vec::with_capacity(sets.len());
    for set in &sets {
        let p = Multivector::basis(dim, set);
        let r = ctx
            .action()
            .omega_contraction(ctx.structure(), &p)
            .scale(&-z_top.clone())
            .sub(&map.cochain().apply_full(ctx, &delta(g, &p)));
        let poly = r.as_poly();
        match poly.as_constant() {
            Some(c) => rho.push(c),
            None => {
                return Err(Error::Internal(format!(
                    "final residual is not constant on {:?}: {}",
                    set,
                    poly.render()
                )))
            }
        }
    }

    if rho.iter().all(Rat::is_zero) {
        return Ok(HomotopyOutcome::Constructed(map));
    }

    // The residual is a closed constant cochain; absorbing it into f_n
    // is possible exactly when it is a coboundary.
    match ce_matrix(g, n).solve(&rho) {
        Some(xi) => {
            let mut forms = map.component_or_zero(ctx, n);
            for (j, c) in xi.iter().enumerate() {
                if !c.is_zero() {
                    forms[j] =
                        forms[j].add(&PolyForm::from_poly(Poly::constant(ctx.nvars(), c.clone())));
                }
            }
            map.set_component(n, forms);
            Ok(HomotopyOutcome::Constructed(map))
        }
        None => {
            let kernel = ctx.kernel(n + 1);
            let mut phi_restriction = Vec::with_capacity(kernel.rank());
            for coords in kernel.basis_coords() {
                phi_restriction.push(-z_top.clone() * dot(coords, &rho));
            }
            let phi_map = phi(ctx);
            if phi_map.values.len() != phi_restriction.len()
                || phi_map
                    .values
                    .iter()
                    .zip(&phi_restriction)
                    .any(|(p, c)| p.as_constant().as_ref() != Some(c))
            {
                return Err(Error::Internal(
                    "final residual restriction disagrees with the contraction map on cycles"
                        .into(),
                ));
            }
            Ok(HomotopyOutcome::Obstructed(ObstructionCertificate {
                arity: n + 1,
                residuals: rho,
                phi_restriction,
                partial: map,
            }))
        }
    }
}

/// One sufficient-condition hypothesis quoted in the dichotomy report.
#[derive(Clone, Debug)]
pub struct SufficientCondition {
    pub statement: String,
    pub holds: bool,
    pub detail: String,
}

/// The full existence analysis for one scene.
#[derive(Clone, Debug)]
pub struct ExistenceReport {
    /// Weak maps always exist here; this is the constructed witness.
    pub weak_witness: MomentMap,
    pub obstruction: ObstructionReport,
    /// Homotopy existence: weak existence and a vanishing contraction
    /// map, equivalently a vanishing class.
    pub homotopy_exists: bool,
    /// `dim H^k(g)` for `k = 1..n`.
    pub cohomology_dims: Vec<(usize, usize)>,
    /// `dim H^0(g, P_k)` for `k = 1..n`, the invariant functionals on
    /// the cycle spaces under the adjoint action.
    pub invariant_dims: Vec<(usize, usize)>,
    pub vanishing_cohomology: SufficientCondition,
    pub vanishing_invariants: SufficientCondition,
}

/// Invariant functionals on `P_k`: the joint kernel of the transposed
/// adjoint matrices, computed through the represented-family helper.
fn kernel_invariant_dim(ctx: &Ctx, k: usize) -> Result<usize> {
    let g = ctx.algebra();
    if k > g.dim() {
        return Ok(0);
    }
    let kernel = ctx.kernel(k);
    let r = kernel.rank();
    if r == 0 {
        return Ok(0);
    }
    let mut mats = Vec::with_capacity(g.dim());
    for x in 0..g.dim() {
        let mut cols = Vec::with_capacity(r);
        for j in 0..r {
            let image = adjoint_action(g, x, &kernel.basis_multivector(j));
            cols.push(
                kernel
                    .express(&image)
                    .map_err(|_| Error::Internal("adjoint action left the Lie kernel".into()))?,
            );
        }
        let ad = RatMatrix::from_cols(cols, r)?;
        mats.push(ad.transpose().scale(&rat_int(-1)));
    }
    Ok(invariants(g, &mats)?.len())
}

/// Decides both existence questions and reports the two quoted
/// sufficient conditions with their truth values for this algebra.
pub fn existence_report(ctx: &Ctx, extra_points: &[Vec<Rat>]) -> Result<ExistenceReport> {
    let n = ctx.plectic_degree();
    let g = ctx.algebra();
    let weak_witness = construct_weak(ctx)?;
    let obstruction = obstruction_cocycle(ctx, extra_points)?;
    let homotopy_exists = obstruction.unobstructed();

    let mut cohomology_dims = Vec::new();
    for k in 1..=n {
        let d = if k <= g.dim() {
            ce_cohomology(g, k)?.dim
        } else {
            0
        };
        cohomology_dims.push((k, d));
    }
    let mut invariant_dims = Vec::new();
    for k in 1..=n {
        invariant_dims.push((k, kernel_invariant_dim(ctx, k)?));
    }

    let cohomology_holds = cohomology_dims.iter().all(|(_, d)| *d == 0);
    let invariants_hold = invariant_dims.iter().all(|(_, d)| *d == 0);
    let vanishing_cohomology = SufficientCondition {
        statement: if n == 1 {
            "H^1(g) = 0".to_string()
        } else {
            format!("H^1(g) = ... = H^{n}(g) = 0")
        },
        holds: cohomology_holds,
        detail: cohomology_dims
            .iter()
            .map(|(k, d)| format!("dim H^{k}(g) = {d}"))
            .collect::<Vec<_>>()
            .join(", "),
    };
    let vanishing_invariants = SufficientCondition {
        statement: if n == 1 {
            "H^0(g, P_1) = 0".to_string()
        } else {
            format!("H^0(g, P_k) = 0 for k = 1..{n}")
        },
        holds: invariants_hold,
        detail: invariant_dims
            .iter()
            .map(|(k, d)| format!("dim H^0(g, P_{k}) = {d}"))
            .collect::<Vec<_>>()
            .join(", "),
    };

    Ok(ExistenceReport {
        weak_witness,
        obstruction,
        homotopy_exists,
        cohomology_dims,
        invariant_dims,
        vanishing_cohomology,
        vanishing_invariants,
    })
}

/// One pairwise defect value of a symplectic weak map.
#[derive(Clone, Debug)]
pub struct DefectEntry {
    /// Zero-based generator indices, `i < j`.
    pub i: usize,
    pub j: usize,
    pub value: Rat,
}

/// The symplectic pairwise defect `h(x, y) = ω(v_x, v_y) - f̂([x, y])`,
/// constant for every verified weak map on a preserved structure.
pub fn symplectic_defects(ctx: &Ctx, weak: &MomentMap) -> Result<Vec<DefectEntry>> {
    validate_shape(ctx, weak, Flavor::Kernel)?;
    if ctx.plectic_degree() != 1 {
        return Err(Error::Precondition(
            "pairwise defects are defined for 1-plectic structures only".into(),
        ));
    }
    let g = ctx.algebra();
    let dim = g.dim();
    let mut out = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let pair = Multivector::basis(dim, &[i, j]);
            let omega_val = ctx
                .action()
                .omega_contraction(ctx.structure(), &pair)
                .as_poly();
            let bracket = Multivector::from_coords(
                dim,
                1,
                &subsets(dim, 1),
                g.bracket_basis(i, j),
            );
            let applied = weak.cochain().apply_kernel(ctx, &bracket)?.as_poly();
            let defect = omega_val.sub(&applied);
            match defect.as_constant() {
                Some(value) => out.push(DefectEntry { i, j, value }),
                None => {
                    return Err(Error::Internal(format!(
                        "pairwise defect at ({}, {}) is not constant: {}",
                        i + 1,
                        j + 1,
                        defect.render()
                    )))
                }
            }
        }
    }
    Ok(out)
}

/// Everything the strict-extension analysis produces.
#[derive(Clone, Debug)]
pub struct ExtensionReport {
    /// The difference cochain `ω̃ - d_tot β` for the lifted potential.
    pub gamma: GradedCochain,
    /// Form-valued primitives of the arity components with positive
    /// form degree, keyed by arity.
    pub primitives: Vec<(usize, Vec<PolyForm>)>,
    /// Arity-(n+1) coefficients of the difference cochain, constants.
    pub gamma_top: Vec<Rat>,
    pub gamma_top_zero: bool,
    /// The assembled homotopy map when the verdict is positive.
    pub extension: Option<MomentMap>,
    pub extension_verified: Option<VerifyReport>,
    /// Pairwise defect table, present for 1-plectic structures.
    pub defects: Vec<DefectEntry>,
}

impl ExtensionReport {
    pub fn extendable(&self) -> bool {
        self.gamma_top_zero
    }
}

/// [`strict_extension_with_lift`] with the zero lift on every stored
/// complement.
pub fn strict_extension(ctx: &Ctx, weak: &MomentMap) -> Result<ExtensionReport> {
    strict_extension_with_lift(ctx, weak, &BTreeMap::new())
}

/// Decides whether a verified weak map is the restriction of a
/// homotopy map, constructively.
///
/// The weak potential is lifted to the full complex by the given
/// values on the stored kernel complements (zero by default), the
/// difference `γ = ω̃ - d_tot β` is formed, each arity component is
/// checked to be closed and solved against the coboundary image of the
/// algebra, and the final verdict is whether the arity-(n+1) component
/// vanishes; the verdict does not depend on the lift.  On success the
/// primitives assemble an extension, which is re-verified and restricts
/// to the input exactly.
///
/// Errors when the weak map does not verify or when the contraction
/// map on top cycles is nonzero, which already rules out extendability.
pub fn strict_extension_with_lift(
    ctx: &Ctx,
    weak: &MomentMap,
    lift: &BTreeMap<(usize, usize), PolyForm>,
) -> Result<ExtensionReport> {
    let n = ctx.plectic_degree();
    let dim = ctx.algebra().dim();
    let g = ctx.algebra();

    let verified = verify_weak(ctx, weak)?;
    if !verified.pass() {
        let first = &verified.failures[0];
        return Err(Error::Precondition(format!(
            "the weak map must verify before extension; residual at arity {}, index {}: {}",
            first.arity,
            first.index + 1,
            first.residual.render()
        )));
    }
    let phi_map = phi(ctx);
    if !phi_map.is_zero() {
        let values = phi_map
            .values
            .iter()
            .map(Poly::render)
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::Precondition(format!(
            "the contraction map on top cycles must vanish before extension; values: {values}"
        )));
    }

    let defects = if n == 1 {
        symplectic_defects(ctx, weak)?
    } else {
        Vec::new()
    };

    // Lift the weak potential to the full complex.
    let mut beta = GradedCochain::new(Flavor::Full, n, ctx.nvars());
    for k in 1..=n.min(dim) {
        let kernel = ctx.kernel(k);
        let z = zeta(k);
        let hat = weak.component_or_zero(ctx, k);
        let sets = subsets(dim, k);
        let mut forms = Vec::with_capacity(sets.len());
        for set in &sets {
            let (kcoords, ccoords) = kernel.decompose(&Multivector::basis(dim, set))?;
            let mut value = PolyForm::zero(ctx.nvars(), n - k);
            for (c, f) in kcoords.iter().zip(&hat) {
                if !c.is_zero() {
                    value = value.add(&f.scale(&(c * &z)));
                }
            }
            for (pos, c) in ccoords.iter().enumerate() {
                if !c.is_zero() {
                    if let Some(extra) = lift.get(&(k, pos)) {
                        value = value.add(&extra.scale(c));
                    }
                }
            }
            forms.push(value);
        }
        beta.set_component(k, forms);
    }

    let omega_tilde = canonical_cocycle(ctx)?;
    let gamma = omega_tilde.sub(&d_tot(ctx, &beta));

    if gamma
        .component(1)
        .is_some_and(|forms| forms.iter().any(|f| !f.is_zero()))
    {
        return Err(Error::Internal(
            "difference cochain has an arity-1 component; the weak equations exclude this".into(),
        ));
    }

    let mut primitives = Vec::new();
    let mut mu = GradedCochain::new(Flavor::Full, n, ctx.nvars());
    let mut gamma_top = Vec::new();
    for a in 2..=(n + 1).min(dim) {
        let slices = gamma.component_or_zero(ctx, a);
        for (idx, f) in slices.iter().enumerate() {
            let residual = f.ext_d();
            if !residual.is_zero() {
                return Err(Error::Internal(format!(
                    "difference component at arity {a}, index {} is not closed: {}",
                    idx + 1,
                    residual.render()
                )));
            }
        }
        solve_into_coboundaries(g, a, &slices, "difference cochain")?;
        if a <= n {
            let eta: Vec<PolyForm> = slices.iter().map(euler_homotopy).collect();
            solve_into_coboundaries(g, a, &eta, "primitive")?;
            let sign = if a % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            mu.set_component(a, eta.iter().map(|f| f.scale(&sign)).collect());
            primitives.push((a, eta));
        } else {
            for (idx, f) in slices.iter().enumerate() {
                match f.as_poly().as_constant() {
                    Some(c) => gamma_top.push(c),
                    None => {
                        return Err(Error::Internal(format!(
                            "top difference component at index {} is not constant",
                            idx + 1
                        )))
                    }
                }
            }
        }
    }

    let gamma_top_zero = gamma_top.iter().all(Rat::is_zero);
    let mut extension = None;
    let mut extension_verified = None;
    if gamma_top_zero {
        let total = beta.add(&mu);
        let ext = MomentMap::from_potential(&total);
        let report = verify_homotopy(ctx, &ext)?;
        if !report.pass() {
            return Err(Error::Internal(
                "assembled extension fails verification".into(),
            ));
        }
        extension = Some(ext);
        extension_verified = Some(report);
    }

    Ok(ExtensionReport {
        gamma,
        primitives,
        gamma_top,
        gamma_top_zero,
        extension,
        extension_verified,
        defects,
    })
}

/// Solves every coefficient slice of an arity-`a` family of forms
/// against the coboundary image `d_g Λ^{a-1} g*`, failing with an
/// internal error when a slice escapes the image.
fn solve_into_coboundaries(
    g: &crate::lie::LieAlgebra,
    a: usize,
    forms: &[PolyForm],
    what: &str,
) -> Result<Vec<Vec<Rat>>> {
    let matrix = ce_matrix(g, a - 1);
    let mut slices: BTreeMap<(Vec<usize>, Vec<u32>), Vec<Rat>> = BTreeMap::new();
    for (idx, f) in forms.iter().enumerate() {
        for (set, poly) in f.comps() {
            for (mono, c) in poly.terms() {
                slices
                    .entry((set.clone(), mono.clone()))
                    .or_insert_with(|| vec![Rat::zero(); forms.len()])[idx] = c.clone();
            }
        }
    }
    let mut solutions = Vec::new();
    for ((set, mono), w) in slices {
        match matrix.solve(&w) {
            Some(sol) => solutions.push(sol),
            None => {
                return Err(Error::Internal(format!(
                    "{what} slice at arity {a}, form component {:?}, monomial {:?} \
                     escapes the coboundary image",
                    set, mono
                )))
            }
        }
    }
    Ok(solutions)
}

/// Status of the equivariantization obstruction for a map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionStatus {
    /// A correction exists (possibly zero): an equivariant map with
    /// the same verification status exists.
    Vanishes,
    /// No correction exists at any polynomial degree; conclusive.
    Nonzero,
    /// No correction exists within the degree cap, and the action's
    /// degree leaves the uncapped question open.
    UndecidedWithinCap,
}

impl ObstructionStatus {
    pub fn label(self) -> &'static str {
        match self {
            ObstructionStatus::Vanishes => "vanishes",
            ObstructionStatus::Nonzero => "nonzero",
            ObstructionStatus::UndecidedWithinCap => "undecided within degree cap",
        }
    }
}

/// One nonzero equivariance residual `f_k(ad_x p) - L_{v_x} f_k(p)`.
#[derive(Clone, Debug)]
pub struct EquivarianceEntry {
    /// Zero-based generator index.
    pub generator: usize,
    pub arity: usize,
    /// Zero-based position in the arity's domain basis.
    pub index: usize,
    pub residual: PolyForm,
}

/// Equivariance analysis: the residual table always, and the
/// correction data when [`equivariantize`] produced the report.
#[derive(Clone, Debug)]
pub struct EquivarianceReport {
    /// Number of (generator, arity, basis vector) residuals evaluated.
    pub checked: usize,
    pub residuals: Vec<EquivarianceEntry>,
    pub equivariant: bool,
    pub status: ObstructionStatus,
    /// Whether the status is conclusive at every polynomial degree.
    pub conclusive: bool,
    /// The degree cap the correction search ran under, if it ran.
    pub degree_cap: Option<usize>,
    /// Admissible correction `β` with `x·β = x·f` for all generators.
    pub correction: Option<MomentMap>,
    /// The equivariant map `f - β`.
    pub corrected: Option<MomentMap>,
}

impl EquivarianceReport {
    pub fn pass(&self) -> bool {
        self.equivariant
    }
}

/// Tabulates the residuals `f_k(ad_x p) - L_{v_x} f_k(p)` for every
/// generator and every domain basis vector of the map's flavor.
pub fn equivariance_check(ctx: &Ctx, map: &MomentMap) -> Result<EquivarianceReport> {
    validate_shape(ctx, map, map.flavor())?;
    let n = ctx.plectic_degree();
    let dim = ctx.algebra().dim();
    let mut checked = 0;
    let mut residuals = Vec::new();
    for x in 0..dim {
        let moved = generator_action(ctx, x, map.cochain())?;
        for k in 1..=n.min(dim) {
            let len = ctx.component_len(map.flavor(), k);
            checked += len;
            if let Some(forms) = moved.component(k) {
                for (j, f) in forms.iter().enumerate() {
                    if !f.is_zero() {
                        residuals.push(EquivarianceEntry {
                            generator: x,
                            arity: k,
                            index: j,
                            residual: f.neg(),
                        });
                    }
                }
            }
        }
    }
    let equivariant = residuals.is_empty();
    let status = if equivariant {
        ObstructionStatus::Vanishes
    } else {
        ObstructionStatus::UndecidedWithinCap
    };
    Ok(EquivarianceReport {
        checked,
        residuals,
        equivariant,
        status,
        conclusive: equivariant,
        degree_cap: None,
        correction: None,
        corrected: None,
    })
}

/// Row label for the correction linear system: constraint class, then
/// generator or zero, arity, domain index, form subset, monomial.
type RowKey = (u8, usize, usize, usize, Vec<usize>, Vec<u32>);

/// Searches for an admissible correction `β` with `x·β = x·f` for all
/// generators, over polynomial coefficients of degree at most
/// `degree_cap`.  Admissible means the corrected map still verifies:
/// closed-form-valued kernel cochains in the weak flavor, potentials
/// annihilated by the total differential in the homotopy flavor.
///
/// For actions with affine generators the Lie derivative does not
/// raise coefficient degree, so a failed search at a cap at least the
/// map's own degree upgrades to a conclusive nonzero verdict;
/// otherwise the failure is reported as undecided within the cap.
pub fn equivariantize(ctx: &Ctx, map: &MomentMap, degree_cap: usize) -> Result<EquivarianceReport> {
    let flavor = map.flavor();
    let base = match flavor {
        Flavor::Kernel => verify_weak(ctx, map)?,
        Flavor::Full => verify_homotopy(ctx, map)?,
    };
    if !base.pass() {
        return Err(Error::Precondition(
            "the map must verify before equivariantization".into(),
        ));
    }
    let mut report = equivariance_check(ctx, map)?;
    report.degree_cap = Some(degree_cap);
    if report.equivariant {
        return Ok(report);
    }

    let n = ctx.plectic_degree();
    let dim = ctx.algebra().dim();
    let g = ctx.algebra();
    let nvars = ctx.nvars();
    let monos = monomials_up_to(nvars, degree_cap);

    // Adjoint matrices on the domain basis, one per (generator, arity).
    let mut ad_mats: Vec<Vec<Vec<Vec<Rat>>>> = Vec::new();
    for x in 0..dim {
        let mut per_arity = Vec::new();
        for k in 1..=n.min(dim) {
            let len = ctx.component_len(flavor, k);
            let mut rows = vec![vec![Rat::zero(); len]; len];
            match flavor {
                Flavor::Full => {
                    for (i, set) in subsets(dim, k).iter().enumerate() {
                        let image = adjoint_action(g, x, &Multivector::basis(dim, set));
                        for (t, c) in image.terms() {
                            rows[i][ctx.subset_position(t)] = c.clone();
                        }
                    }
                }
                Flavor::Kernel => {
                    let kernel = ctx.kernel(k);
                    for i in 0..len {
                        let image = adjoint_action(g, x, &kernel.basis_multivector(i));
                        let coords = kernel.express(&image).map_err(|_| {
                            Error::Internal("adjoint action left the Lie kernel".into())
                        })?;
                        rows[i] = coords;
                    }
                }
            }
            per_arity.push(rows);
        }
        ad_mats.push(per_arity);
    }

    // Unknowns: one coefficient per (arity, domain index, form subset,
    // monomial).
    let mut unknowns: Vec<(usize, usize, Vec<usize>, Vec<u32>)> = Vec::new();
    for k in 1..=n.min(dim) {
        let len = ctx.component_len(flavor, k);
        for j in 0..len {
            for set in subsets(nvars, n - k) {
                for m in &monos {
                    unknowns.push((k, j, set.clone(), m.clone()));
                }
            }
        }
    }

    let mut row_index: BTreeMap<RowKey, usize> = BTreeMap::new();
    let index_of = |key: RowKey, row_index: &mut BTreeMap<RowKey, usize>| -> usize {
        let next = row_index.len();
        *row_index.entry(key).or_insert(next)
    };

    // Right-hand side: the targets x·f.
    let mut rhs_entries: Vec<(usize, Rat)> = Vec::new();
    for x in 0..dim {
        let moved = generator_action(ctx, x, map.cochain())?;
        for k in 1..=n.min(dim) {
            if let Some(forms) = moved.component(k) {
                for (j, f) in forms.iter().enumerate() {
                    for (set, poly) in f.comps() {
                        for (mono, c) in poly.terms() {
                            let row = index_of(
                                (0, x, k, j, set.clone(), mono.clone()),
                                &mut row_index,
                            );
                            rhs_entries.push((row, c.clone()));
                        }
                    }
                }
            }
        }
    }

    // Columns: the image of each unknown under equivariance and
    // admissibility constraints.
    let mut columns: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(unknowns.len());
    let delta_coords: Vec<Vec<Vec<Rat>>> = (0..=dim)
        .map(|k| {
            if k == 0 {
                return Vec::new();
            }
            let lower = subsets(dim, k - 1);
            subsets(dim, k)
                .iter()
                .map(|set| {
                    delta(g, &Multivector::basis(dim, set)).coords(&lower)
                })
                .collect()
        })
        .collect();
    for (k, j, set, m) in &unknowns {
        let k = *k;
        let j = *j;
        let mono = Poly::monomial(nvars, m.clone(), rat_int(1));
        let basis_form = PolyForm::basis(nvars, set).scale_poly(&mono);
        let mut entries = Vec::new();
        for x in 0..dim {
            let v = &ctx.action().generators()[x];
            let lie = basis_form.lie_derivative(v);
            for (s2, poly) in lie.comps() {
                for (m2, c) in poly.terms() {
                    let row = index_of((0, x, k, j, s2.clone(), m2.clone()), &mut row_index);
                    entries.push((row, c.clone()));
                }
            }
            let ad = &ad_mats[x][k - 1];
            for (i, row_coeffs) in ad.iter().enumerate() {
                let c = &row_coeffs[j];
                if !c.is_zero() {
                    let row = index_of((0, x, k, i, set.clone(), m.clone()), &mut row_index);
                    entries.push((row, -c.clone()));
                }
            }
        }
        match flavor {
            Flavor::Kernel => {
                let db = basis_form.ext_d();
                for (s2, poly) in db.comps() {
                    for (m2, c) in poly.terms() {
                        let row = index_of((1, 0, k, j, s2.clone(), m2.clone()), &mut row_index);
                        entries.push((row, c.clone()));
                    }
                }
            }
            Flavor::Full => {
                let z = zeta(k);
                let sign = if k % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                let db = basis_form.ext_d().scale(&(&sign * &z));
                for (s2, poly) in db.comps() {
                    for (m2, c) in poly.terms() {
                        let row = index_of((1, 0, k, j, s2.clone(), m2.clone()), &mut row_index);
                        entries.push((row, c.clone()));
                    }
                }
                if k + 1 <= (n + 1).min(dim) {
                    for (s, coords) in delta_coords[k + 1].iter().enumerate() {
                        let c = &coords[j];
                        if !c.is_zero() {
                            let row =
                                index_of((1, 0, k + 1, s, set.clone(), m.clone()), &mut row_index);
                            entries.push((row, c * &z));
                        }
                    }
                }
            }
        }
        columns.push(entries);
    }

    let rows = row_index.len();
    let cols = unknowns.len();
    let mut matrix = RatMatrix::zeros(rows, cols);
    for (cidx, entries) in columns.iter().enumerate() {
        for (r, c) in entries {
            let updated = matrix.at(*r, cidx) + c;
            matrix.set(*r, cidx, updated);
        }
    }
    let mut rhs = vec![Rat::zero(); rows];
    for (r, c) in rhs_entries {
        rhs[r] = &rhs[r] + &c;
    }

    match matrix.solve(&rhs) {
        Some(solution) => {
            let mut correction = MomentMap::new(flavor, n, nvars);
            let mut comps: BTreeMap<usize, Vec<PolyForm>> = BTreeMap::new();
            for k in 1..=n.min(dim) {
                let len = ctx.component_len(flavor, k);
                comps.insert(k, vec![PolyForm::zero(nvars, n - k); len]);
            }
            for ((k, j, set, m), c) in unknowns.iter().zip(&solution) {
                if !c.is_zero() {
                    let mono = Poly::monomial(nvars, m.clone(), c.clone());
                    let term = PolyForm::basis(nvars, set).scale_poly(&mono);
                    let forms = comps.get_mut(k).unwrap();
                    forms[*j] = forms[*j].add(&term);
                }
            }
            for (k, forms) in comps {
                correction.set_component(k, forms);
            }
            let corrected = map.sub(&correction);
            let reverify = match flavor {
                Flavor::Kernel => verify_weak(ctx, &corrected)?,
                Flavor::Full => verify_homotopy(ctx, &corrected)?,
            };
            if !reverify.pass() {
                return Err(Error::Internal(
                    "corrected map fails verification; the admissibility rows are wrong".into(),
                ));
            }
            let recheck = equivariance_check(ctx, &corrected)?;
            if !recheck.equivariant {
                return Err(Error::Internal(
                    "corrected map fails the equivariance residuals".into(),
                ));
            }
            report.status = ObstructionStatus::Vanishes;
            report.conclusive = true;
            report.correction = Some(correction);
            report.corrected = Some(corrected);
            Ok(report)
        }
        None => {
            let affine = ctx.action().max_degree() <= 1;
            let conclusive = affine && degree_cap >= map.max_coeff_degree();
            report.status = if conclusive {
                ObstructionStatus::Nonzero
            } else {
                ObstructionStatus::UndecidedWithinCap
            };
            report.conclusive = conclusive;
            Ok(report)
        }
    }
}

/// Renders a residual table for error and report text.
pub fn render_residuals(entries: &[ResidualEntry]) -> String {
    entries
        .iter()
        .map(|e| {
            format!(
                "arity {}, index {}: {}",
                e.arity,
                e.index + 1,
                e.residual.render()
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Renders the defect table as `h(e_i, e_j) = value` lines.
pub fn render_defects(defects: &[DefectEntry]) -> String {
    defects
        .iter()
        .map(|d| format!("h(e{}, e{}) = {}", d.i + 1, d.j + 1, format_rat(&d.value)))
        .collect::<Vec<_>>()
        .join("; ")
}
