//! The Lie n-algebra of observables of an n-plectic structure: graded
//! elements, the unary differential, and the higher brackets on
//! Hamiltonian pairs, together with the consistency check tying the
//! brackets to the moment-map equations.
//!
//! The underlying graded vector space puts Hamiltonian pairs in degree
//! zero and `Ω^{n-1+i}(M)` in degree `i` for `1-n ≤ i < 0`.  The only
//! nonzero brackets are the de Rham differential on negative degrees
//! and, on tuples of Hamiltonian pairs,
//!
//! ```text
//!     l_k(a_1, ..., a_k) = ζ(k) ι(v_1 ∧ ... ∧ v_k) ω,
//! ```
//!
//! which lands back in degree `2 - k`.

use crate::action::NPlecticStructure;
use crate::complexes::Ctx;
use crate::forms::{PolyForm, PolyMultiVec, PolyVec};
use crate::lie::{delta, Multivector};
use crate::moment::{zeta, MomentMap};
use crate::{Error, Result};

/// A form of degree `n - 1` together with a Hamiltonian vector field
/// for it: `d(form) = -ι_{field} ω`, checked exactly at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianPair {
    form: PolyForm,
    field: PolyVec,
}

impl HamiltonianPair {
    pub fn new(s: &NPlecticStructure, form: PolyForm, field: PolyVec) -> Result<Self> {
        let n = s.plectic_degree();
        if !form.is_zero() && form.degree() != n - 1 {
            return Err(Error::Dimension {
                context: "Hamiltonian form degree".into(),
                expected: n - 1,
                got: form.degree(),
            });
        }
        let residual = form.ext_d().add(&s.omega().contract_vec(&field));
        if !residual.is_zero() {
            return Err(Error::Precondition(format!(
                "the field is not Hamiltonian for the form: d(form) + contraction = {}",
                residual.render()
            )));
        }
        Ok(HamiltonianPair { form, field })
    }

    pub fn form(&self) -> &PolyForm {
        &self.form
    }

    pub fn field(&self) -> &PolyVec {
        &self.field
    }
}

/// Payload of a graded element: a Hamiltonian pair in degree zero, a
/// bare form below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Pair(HamiltonianPair),
    Form(PolyForm),
}

/// One element of the graded space, tagged with its degree
/// `i ∈ {0, -1, ..., 1-n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    degree: isize,
    payload: Payload,
}

impl GradedElement {
    /// Wraps a Hamiltonian pair as a degree-0 element.
    pub fn pair(p: HamiltonianPair) -> Self {
        GradedElement {
            degree: 0,
            payload: Payload::Pair(p),
        }
    }

    /// A negative-degree element: a form of degree `n - 1 + i`.
    pub fn form(s: &NPlecticStructure, degree: isize, form: PolyForm) -> Result<Self> {
        let n = s.plectic_degree() as isize;
        if degree >= 0 || degree < 1 - n {
            return Err(Error::Precondition(format!(
                "degree {degree} is outside the graded range {}..=-1",
                1 - n
            )));
        }
        let want = (n - 1 + degree) as usize;
        if !form.is_zero() && form.degree() != want {
            return Err(Error::Dimension {
                context: format!("form degree at graded degree {degree}"),
                expected: want,
                got: form.degree(),
            });
        }
        Ok(GradedElement {
            degree,
            payload: Payload::Form(form),
        })
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Pair(p) => p.form.is_zero() && p.field.is_zero(),
            Payload::Form(f) => f.is_zero(),
        }
    }
}

/// The unary bracket: the de Rham differential on negative degrees,
/// raising the degree by one.  Landing in degree zero pairs the result
/// with the zero field, which is Hamiltonian for it because the
/// differential of an exact form vanishes.
pub fn unary(s: &NPlecticStructure, x: &GradedElement) -> Result<GradedElement> {
    if x.degree() >= 0 {
        return Err(Error::Precondition(
            "the unary bracket is only defined in negative degrees".into(),
        ));
    }
    let form = match &x.payload {
        Payload::Form(f) => f.ext_d(),
        Payload::Pair(_) => unreachable!("negative degrees carry bare forms"),
    };
    if x.degree() == -1 {
        let pair = HamiltonianPair::new(s, form, PolyVec::zero(s.nvars()))?;
        Ok(GradedElement::pair(pair))
    } else {
        GradedElement::form(s, x.degree() + 1, form)
    }
}

/// The higher brackets, `k ≥ 2`: zero whenever the total degree is
/// negative, and `ζ(k) ι(v_1 ∧ ... ∧ v_k) ω` on Hamiltonian pairs.
/// The binary bracket of pairs is again a pair, with field the
/// commutator of the inputs; longer brackets land in negative degrees.
pub fn bracket(s: &NPlecticStructure, xs: &[GradedElement]) -> Result<GradedElement> {
    let k = xs.len();
    if k < 2 {
        return Err(Error::Precondition(
            "higher brackets take at least two arguments".into(),
        ));
    }
    let n = s.plectic_degree() as isize;
    let total: isize = xs.iter().map(GradedElement::degree).sum();
    let out_degree = total + 2 - k as isize;
    if total < 0 {
        let clamped = out_degree.max(1 - n);
        if clamped == 0 {
            let zero = PolyForm::zero(s.nvars(), s.plectic_degree() - 1);
            let pair = HamiltonianPair::new(s, zero, PolyVec::zero(s.nvars()))?;
            return Ok(GradedElement::pair(pair));
        }
        let want = (n - 1 + clamped) as usize;
        return GradedElement::form(s, clamped, PolyForm::zero(s.nvars(), want));
    }
    let fields: Vec<PolyVec> = xs
        .iter()
        .map(|x| match &x.payload {
            Payload::Pair(p) => p.field.clone(),
            Payload::Form(_) => unreachable!("total degree zero forces degree-zero arguments"),
        })
        .collect();
    let value = PolyMultiVec::decomposable(fields.clone())
        .contract(s.omega())
        .scale(&zeta(k));
    if k == 2 {
        let commutator = fields[0].bracket(&fields[1]);
        let pair = HamiltonianPair::new(s, value, commutator).map_err(|_| {
            Error::Precondition(
                "the commutator is not Hamiltonian for the binary bracket; \
                 the fields do not preserve the structure form"
                    .into(),
            )
        })?;
        Ok(GradedElement::pair(pair))
    } else {
        GradedElement::form(s, out_degree, value)
    }
}

/// One failed consistency equation, with the residual form.
#[derive(Clone, Debug)]
pub struct MorphismFailure {
    pub label: String,
    pub residual: PolyForm,
}

/// Outcome of checking a homotopy moment map against the bracket
/// structure.
#[derive(Clone, Debug)]
pub struct MorphismReport {
    pub checked: usize,
    pub failures: Vec<MorphismFailure>,
}

impl MorphismReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the bracket-level content of the moment-map equations: every
/// generator's first component pairs with its fundamental field as a
/// Hamiltonian pair, and the binary bracket of two such pairs agrees
/// with `-f_1(δ(x∧y)) - d f_2(x∧y)`.  A verified homotopy map passes
/// both families exactly.
pub fn morphism_consistency(ctx: &Ctx, map: &MomentMap) -> Result<MorphismReport> {
    let s = ctx.structure();
    let g = ctx.algebra();
    let dim = g.dim();
    let n = ctx.plectic_degree();
    let f1 = map.component_or_zero(ctx, 1);
    let mut checked = 0;
    let mut failures = Vec::new();

    let mut pairs = Vec::with_capacity(dim);
    for (x, form) in f1.iter().enumerate() {
        checked += 1;
        match HamiltonianPair::new(s, form.clone(), ctx.action().generators()[x].clone()) {
            Ok(p) => pairs.push(Some(p)),
            Err(_) => {
                let residual = form
                    .ext_d()
                    .add(&s.omega().contract_vec(&ctx.action().generators()[x]));
                failures.push(MorphismFailure {
                    label: format!("generator {} is not Hamiltonian for its component", x + 1),
                    residual,
                });
                pairs.push(None);
            }
        }
    }

    let f2 = if n >= 2 {
        Some(map.component_or_zero(ctx, 2))
    } else {
        None
    };
    for i in 0..dim {
        for j in (i + 1)..dim {
            let (Some(pi), Some(pj)) = (&pairs[i], &pairs[j]) else {
                continue;
            };
            checked += 1;
            let value = bracket(s, &[GradedElement::pair(pi.clone()), GradedElement::pair(pj.clone())])?;
            let Payload::Pair(out) = value.payload() else {
                unreachable!("binary bracket of pairs is a pair");
            };
            let p = Multivector::basis(dim, &[i, j]);
            let mut target = map.cochain().apply_full(ctx, &delta(g, &p)).neg();
            if let Some(f2) = &f2 {
                let pos = ctx.subset_position(&[i, j]);
                target = target.sub(&f2[pos].ext_d());
            }
            let residual = out.form().sub(&target);
            if !residual.is_zero() {
                failures.push(MorphismFailure {
                    label: format!(
                        "bracket of generators {} and {} misses the map's combination",
                        i + 1,
                        j + 1
                    ),
                    residual,
                });
            }
        }
    }

    Ok(MorphismReport { checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::volume_form;
    use crate::linalg::rat_int;
    use crate::moment::{construct_homotopy, HomotopyOutcome};
    use crate::poly::Poly;
    use crate::testutil::{rotation_ctx, sl2_ctx, translation_ctx};

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn plane() -> NPlecticStructure {
        NPlecticStructure::new(2, 1, PolyForm::basis(2, &[0, 1]), vec![rat_int(0); 2]).unwrap()
    }

    #[test]
    fn pair_construction_checks_the_defining_relation() {
        let s = plane();
        // d x = dx = -ι_{∂2}(dx1∧dx2)
        let good = HamiltonianPair::new(&s, PolyForm::from_poly(x(2, 0)), PolyVec::unit(2, 1));
        assert!(good.is_ok());
        let bad = HamiltonianPair::new(&s, PolyForm::from_poly(x(2, 0)), PolyVec::unit(2, 0));
        assert!(bad.is_err());
    }

    #[test]
    fn binary_bracket_of_coordinate_pairs_is_their_poisson_bracket() {
        let s = plane();
        let px = HamiltonianPair::new(&s, PolyForm::from_poly(x(2, 0)), PolyVec::unit(2, 1)).unwrap();
        let py = HamiltonianPair::new(
            &s,
            PolyForm::from_poly(x(2, 1)),
            PolyVec::unit(2, 0).scale(&rat_int(-1)),
        )
        .unwrap();
        let value = bracket(&s, &[GradedElement::pair(px.clone()), GradedElement::pair(py.clone())])
            .unwrap();
        let Payload::Pair(out) = value.payload() else {
            panic!("expected a pair");
        };
        assert_eq!(out.form(), &PolyForm::from_poly(Poly::constant(2, rat_int(1))));
        // the same value through the two-argument contraction directly
        let direct = PolyMultiVec::decomposable(vec![py.field().clone(), px.field().clone()])
            .contract(s.omega());
        assert_eq!(out.form(), &direct.neg());
        // antisymmetry
        let swapped = bracket(&s, &[GradedElement::pair(py), GradedElement::pair(px)]).unwrap();
        let Payload::Pair(sw) = swapped.payload() else {
            panic!("expected a pair");
        };
        assert_eq!(sw.form(), &out.form().neg());
    }

    #[test]
    fn brackets_with_negative_total_degree_vanish() {
        let ctx = rotation_ctx();
        let s = ctx.structure();
        let low = GradedElement::form(s, -1, PolyForm::from_poly(x(3, 0))).unwrap();
        let map = match construct_homotopy(&ctx).unwrap() {
            HomotopyOutcome::Constructed(m) => m,
            HomotopyOutcome::Obstructed(_) => unreachable!(),
        };
        let f1 = map.component_or_zero(&ctx, 1);
        let p0 = HamiltonianPair::new(s, f1[0].clone(), ctx.action().generators()[0].clone())
            .unwrap();
        let value = bracket(s, &[GradedElement::pair(p0), low]).unwrap();
        assert!(value.is_zero());
        assert_eq!(value.degree(), -1);
    }

    #[test]
    fn unary_squares_to_zero_through_the_grading() {
        // a 4-plectic-degree-minus-one chain: n = 3 volume on R^4 gives
        // degrees -2, -1, 0
        let s = NPlecticStructure::new(4, 3, volume_form(4), vec![rat_int(0); 4]).unwrap();
        let a = GradedElement::form(&s, -2, PolyForm::from_poly(x(4, 0).mul(&x(4, 1)))).unwrap();
        let da = unary(&s, &a).unwrap();
        assert_eq!(da.degree(), -1);
        let dda = unary(&s, &da).unwrap();
        assert_eq!(dda.degree(), 0);
        assert!(dda.is_zero());
        // degree 0 rejects the unary bracket
        assert!(unary(&s, &dda).is_err());
    }

    #[test]
    fn verified_maps_pass_the_morphism_check() {
        for ctx in [rotation_ctx(), sl2_ctx()] {
            let map = match construct_homotopy(&ctx).unwrap() {
                HomotopyOutcome::Constructed(m) => m,
                HomotopyOutcome::Obstructed(_) => unreachable!(),
            };
            let report = morphism_consistency(&ctx, &map).unwrap();
            assert!(report.pass(), "failures: {:?}", report.failures);
        }
    }

    #[test]
    fn corrupted_second_component_fails_the_morphism_check() {
        let ctx = rotation_ctx();
        let map = match construct_homotopy(&ctx).unwrap() {
            HomotopyOutcome::Constructed(m) => m,
            HomotopyOutcome::Obstructed(_) => unreachable!(),
        };
        let mut broken = map.clone();
        let mut forms = broken.component_or_zero(&ctx, 2);
        forms[0] = forms[0].add(&PolyForm::from_poly(x(3, 0)));
        broken.set_component(2, forms);
        let report = morphism_consistency(&ctx, &broken).unwrap();
        assert!(!report.pass());
    }

    #[test]
    fn obstructed_partial_map_fails_on_the_blocked_bracket() {
        let ctx = translation_ctx();
        let partial = match construct_homotopy(&ctx).unwrap() {
            HomotopyOutcome::Obstructed(cert) => cert.partial,
            HomotopyOutcome::Constructed(_) => unreachable!(),
        };
        let report = morphism_consistency(&ctx, &partial).unwrap();
        assert!(!report.pass());
        assert_eq!(report.failures.len(), 1);
    }
}
