//! Polynomial n-plectic structures on `R^N` and Lie algebra actions by
//! polynomial vector fields.
//!
//! A structure is a closed `(n+1)`-form that is nondegenerate at its
//! basepoint; both properties are certified at construction, so holding
//! an [`NPlecticStructure`] is itself a certificate.  Actions are *not*
//! auto-checked: [`validate_action`] reports every failing bracket pair
//! and every generator that fails to preserve the form, so broken
//! scenes stay loadable and diagnosable.

use num_traits::Zero;

use crate::combi::subsets;
use crate::forms::{PolyForm, PolyMultiVec, PolyVec};
use crate::lie::{LieAlgebra, Multivector};
use crate::linalg::{format_rat, Rat, RatMatrix};
use crate::poly::Poly;
use crate::{Error, Result};

/// Closed nondegenerate polynomial `(n+1)`-form on `R^N` with a chosen
/// basepoint.
#[derive(Clone, Debug)]
pub struct NPlecticStructure {
    nvars: usize,
    plectic_degree: usize,
    omega: PolyForm,
    basepoint: Vec<Rat>,
}

impl NPlecticStructure {
    /// Certifies closedness, the degree bookkeeping, and nondegeneracy
    /// at the basepoint.
    pub fn new(
        nvars: usize,
        plectic_degree: usize,
        omega: PolyForm,
        basepoint: Vec<Rat>,
    ) -> Result<Self> {
        if plectic_degree == 0 {
            return Err(Error::Precondition(
                "plectic degree must be at least 1".into(),
            ));
        }
        if omega.nvars() != nvars {
            return Err(Error::Dimension {
                context: "structure form variable count".into(),
                expected: nvars,
                got: omega.nvars(),
            });
        }
        if omega.degree() != plectic_degree + 1 && !omega.is_zero() {
            return Err(Error::Dimension {
                context: "structure form degree".into(),
                expected: plectic_degree + 1,
                got: omega.degree(),
            });
        }
        if basepoint.len() != nvars {
            return Err(Error::Dimension {
                context: "basepoint".into(),
                expected: nvars,
                got: basepoint.len(),
            });
        }
        let residual = omega.ext_d();
        if !residual.is_zero() {
            return Err(Error::NotClosed {
                context: "structure form".into(),
                residual: residual.render(),
            });
        }
        let s = NPlecticStructure {
            nvars,
            plectic_degree,
            omega,
            basepoint,
        };
        let base = s.basepoint.clone();
        s.nondegeneracy_check(&base)?;
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The `n` in n-plectic.
    pub fn plectic_degree(&self) -> usize {
        self.plectic_degree
    }

    pub fn omega(&self) -> &PolyForm {
        &self.omega
    }

    pub fn basepoint(&self) -> &[Rat] {
        &self.basepoint
    }

    /// Fails with the offending kernel direction if some constant vector
    /// contracts to zero into the form at the given point.
    pub fn nondegeneracy_check(&self, point: &[Rat]) -> Result<()> {
        if point.len() != self.nvars {
            return Err(Error::Dimension {
                context: "nondegeneracy sample point".into(),
                expected: self.nvars,
                got: point.len(),
            });
        }
        let rows = subsets(self.nvars, self.plectic_degree);
        let mut m = RatMatrix::zeros(rows.len(), self.nvars);
        for i in 0..self.nvars {
            let contracted = self.omega.contract_vec(&PolyVec::unit(self.nvars, i));
            let values = contracted.eval_comps(point);
            for (row, s) in rows.iter().enumerate() {
                if let Some(v) = values.get(s) {
                    m.set(row, i, v.clone());
                }
            }
        }
        match m.kernel_basis().into_iter().next() {
            None => Ok(()),
            Some(dir) => {
                let coords: Vec<String> = point.iter().map(format_rat).collect();
                let kernel: Vec<String> = dir.iter().map(format_rat).collect();
                Err(Error::Degenerate {
                    point: coords.join(", "),
                    direction: kernel.join(", "),
                })
            }
        }
    }
}

/// Lie algebra action: one polynomial vector field per basis element.
#[derive(Clone, Debug)]
pub struct GAction {
    algebra: LieAlgebra,
    generators: Vec<PolyVec>,
}

impl GAction {
    /// Checks counts and variable consistency only; whether the fields
    /// really represent the algebra is [`validate_action`]'s job.
    pub fn new(algebra: LieAlgebra, generators: Vec<PolyVec>) -> Result<Self> {
        if generators.len() != algebra.dim() {
            return Err(Error::Dimension {
                context: "one generator field per basis element".into(),
                expected: algebra.dim(),
                got: generators.len(),
            });
        }
        if let Some(first) = generators.first() {
            for (i, g) in generators.iter().enumerate() {
                if g.nvars() != first.nvars() {
                    return Err(Error::Dimension {
                        context: format!("generator {} variable count", i + 1),
                        expected: first.nvars(),
                        got: g.nvars(),
                    });
                }
            }
        }
        Ok(GAction {
            algebra,
            generators,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[PolyVec] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.generators.first().map_or(0, PolyVec::nvars)
    }

    /// The field of an arbitrary algebra element given by coordinates.
    pub fn field(&self, x: &[Rat]) -> PolyVec {
        let mut acc = PolyVec::zero(self.nvars());
        for (c, g) in x.iter().zip(&self.generators) {
            if !c.is_zero() {
                acc = acc.add(&g.scale(c));
            }
        }
        acc
    }

    /// The decomposable-sum multivector field `v_p` attached to a
    /// multivector `p` on the algebra, basis wedges mapping to wedges
    /// of generators.
    pub fn multi_field(&self, p: &Multivector) -> PolyMultiVec {
        let mut out = PolyMultiVec::zero(self.nvars(), p.degree());
        for (set, c) in p.terms() {
            let factors: Vec<PolyVec> = set.iter().map(|&i| self.generators[i].clone()).collect();
            if factors.is_empty() {
                // degree-0 multivectors are scalars
                out.add_term(c.clone(), Vec::new());
            } else {
                out.add_term(c.clone(), factors);
            }
        }
        out
    }

    /// `ι_{v_p} ω`, the basic contraction every moment-map equation is
    /// built from.
    pub fn omega_contraction(&self, s: &NPlecticStructure, p: &Multivector) -> PolyForm {
        self.multi_field(p).contract(s.omega())
    }

    /// Largest generator coefficient degree.
    pub fn max_degree(&self) -> usize {
        self.generators
            .iter()
            .map(PolyVec::coeff_degree)
            .max()
            .unwrap_or(0)
    }
}

/// One failing bracket pair: the field of `[e_i, e_j]` minus the
/// bracket of the fields.
#[derive(Clone, Debug)]
pub struct BracketFailure {
    pub i: usize,
    pub j: usize,
    pub residual: PolyVec,
}

/// One generator whose flow does not preserve the structure form.
#[derive(Clone, Debug)]
pub struct PreservationFailure {
    pub generator: usize,
    pub residual: PolyForm,
}

/// Outcome of checking that an action is really an action on the
/// structure: Lie algebra homomorphism into vector fields, and every
/// generator's Lie derivative of ω vanishing.
#[derive(Clone, Debug)]
pub struct ActionReport {
    pub bracket_failures: Vec<BracketFailure>,
    pub preservation_failures: Vec<PreservationFailure>,
}

impl ActionReport {
    pub fn pass(&self) -> bool {
        self.bracket_failures.is_empty() && self.preservation_failures.is_empty()
    }
}

/// Exact check of both action axioms, reporting every failure rather
/// than stopping at the first.
pub fn validate_action(act: &GAction, s: &NPlecticStructure) -> ActionReport {
    let g = act.algebra();
    let mut bracket_failures = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let expected = act.field(g.bracket_basis(i, j));
            let got = act.generators()[i].bracket(&act.generators()[j]);
            let residual = expected.add(&got.scale(&-Rat::from_integer(1.into())));
            if !residual.is_zero() {
                bracket_failures.push(BracketFailure { i, j, residual });
            }
        }
    }
    let mut preservation_failures = Vec::new();
    for (idx, v) in act.generators().iter().enumerate() {
        let residual = s.omega().lie_derivative(v);
        if !residual.is_zero() {
            preservation_failures.push(PreservationFailure {
                generator: idx,
                residual,
            });
        }
    }
    ActionReport {
        bracket_failures,
        preservation_failures,
    }
}

/// Solves `ι_v ω = -d a` for a polynomial field `v` with coefficient
/// degree at most `degree_cap`; `None` when no such field exists within
/// the cap.
///
/// Unknown coefficients are ordered (component, lexicographic exponent)
/// and free ones are set to zero, so the answer is deterministic.
pub fn hamiltonian_vector_field(
    s: &NPlecticStructure,
    a: &PolyForm,
    degree_cap: usize,
) -> Option<PolyVec> {
    if a.degree() != s.plectic_degree() - 1 && !a.is_zero() {
        return None;
    }
    let nvars = s.nvars();
    let target = a.ext_d().neg();
    // columns of the linear system: one monomial coefficient per
    // (component i, exponent vector) pair
    let monomials = monomials_up_to(nvars, degree_cap);

    let contracted: Vec<PolyForm> = (0..nvars)
        .map(|i| s.omega().contract_vec(&PolyVec::unit(nvars, i)))
        .collect();

    use std::collections::BTreeMap;
    let mut row_index: BTreeMap<(Vec<usize>, Vec<u32>), usize> = BTreeMap::new();
    let mut columns: Vec<BTreeMap<usize, Rat>> = Vec::new();
    let mut rows = 0usize;
    let mut index_of = |key: (Vec<usize>, Vec<u32>), rows: &mut usize| -> usize {
        *row_index.entry(key).or_insert_with(|| {
            let r = *rows;
            *rows += 1;
            r
        })
    };
    for i in 0..nvars {
        for mono in &monomials {
            let mut col = BTreeMap::new();
            for (set, p) in contracted[i].comps() {
                for (e, c) in p.terms() {
                    let shifted: Vec<u32> = e.iter().zip(mono).map(|(a, b)| a + b).collect();
                    let r = index_of((set.clone(), shifted), &mut rows);
                    let entry = col.entry(r).or_insert_with(Rat::zero);
                    *entry += c;
                }
            }
            columns.push(col);
        }
    }
    let mut rhs_entries: Vec<(usize, Rat)> = Vec::new();
    for (set, p) in target.comps() {
        for (e, c) in p.terms() {
            let r = index_of((set.clone(), e.clone()), &mut rows);
            rhs_entries.push((r, c.clone()));
        }
    }
    let mut m = RatMatrix::zeros(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (r, c) in col {
            m.set(*r, j, c.clone());
        }
    }
    let mut b = vec![Rat::zero(); rows];
    for (r, c) in rhs_entries {
        b[r] += c;
    }
    let sol = m.solve(&b)?;
    let mut comps = vec![Poly::zero(nvars); nvars];
    for (i, comp) in comps.iter_mut().enumerate() {
        for (k, mono) in monomials.iter().enumerate() {
            let c = &sol[i * monomials.len() + k];
            if !c.is_zero() {
                comp.add_term(mono.clone(), c.clone());
            }
        }
    }
    Some(PolyVec::new(comps))
}

/// Standard volume form on `R^nvars`.
pub fn volume_form(nvars: usize) -> PolyForm {
    PolyForm::basis(nvars, &(0..nvars).collect::<Vec<usize>>())
}

/// All exponent vectors with total degree `<= cap`, in lexicographic
/// order; shared by every capped linear solve in the crate.
pub fn monomials_up_to(nvars: usize, cap: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; nvars]];
    for _ in 0..cap {
        let mut next = Vec::new();
        for e in &out {
            for i in 0..nvars {
                let mut e2 = e.clone();
                e2[i] += 1;
                next.push(e2);
            }
        }
        out.extend(next);
    }
    out.sort();
    out.dedup();
    out
}
