//! Polynomial differential forms and multivector fields on `R^N`.
//!
//! Contraction with a decomposable multivector field inserts the factors
//! left to right: `ι(v_1∧…∧v_k) a = ι_{v_k}(… ι_{v_1} a)`, i.e. `v_1`
//! fills the first slot of `a`.  Every sign in the crate is downstream
//! of this choice, and the graded Cartan identity test in this module
//! keeps it honest.
//!
//! The homotopy operator `h` is the Euler-radial one: on a monomial
//! `x^α dx_S` it contracts with the Euler field and divides by
//! `|α| + |S|`, giving `d∘h + h∘d = id` on positive-degree forms over
//! all of `R^N`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::combi::merge_sign;
use crate::linalg::Rat;
use crate::poly::Poly;
use crate::{Error, Result};

/// Polynomial differential form of a fixed degree.
///
/// Components are indexed by strictly increasing index sets; a degree
/// larger than the variable count is legal and necessarily the zero
/// form, so wedge and `d` never need special cases.
#[derive(Clone, Debug)]
pub struct PolyForm {
    nvars: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Poly>,
}

/// Equality is mathematical: zero forms of different recorded degrees
/// are equal (index-set keys pin the degree of anything nonzero).
impl PartialEq for PolyForm {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.comps == other.comps
    }
}

impl Eq for PolyForm {}

impl PolyForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        PolyForm {
            nvars,
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// A function viewed as a 0-form.
    pub fn from_poly(p: Poly) -> Self {
        let nvars = p.nvars();
        let mut form = PolyForm::zero(nvars, 0);
        form.add_comp(Vec::new(), p);
        form
    }

    /// The coordinate form `dx_i` (0-based index).
    pub fn dx(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut form = PolyForm::zero(nvars, 1);
        form.add_comp(vec![i], Poly::one(nvars));
        form
    }

    /// Basis form `dx_S` for a strictly increasing set `S`.
    pub fn basis(nvars: usize, set: &[usize]) -> Self {
        assert!(set.windows(2).all(|w| w[0] < w[1]), "index set not sorted");
        assert!(set.iter().all(|&i| i < nvars), "index out of range");
        let mut form = PolyForm::zero(nvars, set.len());
        form.add_comp(set.to_vec(), Poly::one(nvars));
        form
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comps(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.comps.iter()
    }

    pub fn comp(&self, set: &[usize]) -> Poly {
        self.comps
            .get(set)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn add_comp(&mut self, set: Vec<usize>, p: Poly) {
        debug_assert_eq!(set.len(), self.degree);
        if p.is_zero() {
            return;
        }
        match self.comps.entry(set) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&p);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// The underlying function of a 0-form (any zero form counts).
    pub fn as_poly(&self) -> Poly {
        assert!(
            self.degree == 0 || self.is_zero(),
            "as_poly needs a 0-form"
        );
        self.comp(&[])
    }

    /// Addition; the zero form matches any degree so that contractions
    /// that collapse to zero stay composable.
    pub fn add(&self, other: &PolyForm) -> PolyForm {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "degree mismatch in add");
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (s, p) in &other.comps {
            out.add_comp(s.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyForm) -> PolyForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyForm {
        let mut out = self.clone();
        for p in out.comps.values_mut() {
            *p = p.neg();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PolyForm {
        if c.is_zero() {
            return PolyForm::zero(self.nvars, self.degree);
        }
        let mut out = self.clone();
        for p in out.comps.values_mut() {
            *p = p.scale(c);
        }
        out
    }

    pub fn scale_poly(&self, q: &Poly) -> PolyForm {
        let mut out = PolyForm::zero(self.nvars, self.degree);
        for (s, p) in &self.comps {
            out.add_comp(s.clone(), p.mul(q));
        }
        out
    }

    pub fn wedge(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.nvars, other.nvars);
        let mut out = PolyForm::zero(self.nvars, self.degree + other.degree);
        for (s, p) in &self.comps {
            for (t, q) in &other.comps {
                if let Some((sign, u)) = merge_sign(s, t) {
                    out.add_comp(u, p.mul(q).scale(&Rat::from_integer(sign.into())));
                }
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn ext_d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.nvars, self.degree + 1);
        for (s, p) in &self.comps {
            for i in 0..self.nvars {
                let dp = p.partial(i);
                if dp.is_zero() {
                    continue;
                }
                if let Some((sign, u)) = merge_sign(&[i], s) {
                    out.add_comp(u, dp.scale(&Rat::from_integer(sign.into())));
                }
            }
        }
        out
    }

    /// Contraction with a single vector field.
    ///
    /// On a 0-form the result is the zero form (reported at degree 0).
    pub fn contract_vec(&self, v: &PolyVec) -> PolyForm {
        assert_eq!(self.nvars, v.nvars());
        if self.degree == 0 {
            return PolyForm::zero(self.nvars, 0);
        }
        let mut out = PolyForm::zero(self.nvars, self.degree - 1);
        for (s, p) in &self.comps {
            for (pos, &idx) in s.iter().enumerate() {
                let vi = v.comp(idx);
                if vi.is_zero() {
                    continue;
                }
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let mut rest = s.clone();
                rest.remove(pos);
                out.add_comp(rest, p.mul(vi).scale(&Rat::from_integer(sign.into())));
            }
        }
        out
    }

    /// Lie derivative along `v` by the Cartan formula.
    pub fn lie_derivative(&self, v: &PolyVec) -> PolyForm {
        let a = self.ext_d().contract_vec(v);
        let b = self.contract_vec(v).ext_d();
        a.add(&b)
    }

    /// All components evaluated at a point.
    pub fn eval_comps(&self, point: &[Rat]) -> BTreeMap<Vec<usize>, Rat> {
        let mut out = BTreeMap::new();
        for (s, p) in &self.comps {
            let v = p.eval(point);
            if !v.is_zero() {
                out.insert(s.clone(), v);
            }
        }
        out
    }

    /// Largest coefficient total degree; zero form reports 0.
    pub fn coeff_degree(&self) -> usize {
        self.comps.values().map(Poly::total_degree).max().unwrap_or(0)
    }

    /// Rendering like `(x1^2 + x2)*dx1^dx3 + dx2` with 1-based indices.
    pub fn render(&self) -> String {
        if self.comps.is_empty() {
            return "0".to_string();
        }
        let mut pieces = Vec::new();
        for (s, p) in &self.comps {
            let dxs: Vec<String> = s.iter().map(|i| format!("dx{}", i + 1)).collect();
            let coeff = p.render();
            let piece = if dxs.is_empty() {
                coeff
            } else if coeff == "1" {
                dxs.join("^")
            } else if coeff == "-1" {
                format!("-{}", dxs.join("^"))
            } else if coeff.contains(' ') {
                format!("({})*{}", coeff, dxs.join("^"))
            } else {
                format!("{}*{}", coeff, dxs.join("^"))
            };
            pieces.push(piece);
        }
        pieces.join(" + ")
    }
}

/// Polynomial vector field, one component per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVec {
    comps: Vec<Poly>,
}

impl PolyVec {
    pub fn new(comps: Vec<Poly>) -> Self {
        assert!(!comps.is_empty(), "vector field needs at least one component");
        let nvars = comps[0].nvars();
        assert!(comps.iter().all(|p| p.nvars() == nvars));
        PolyVec { comps }
    }

    pub fn zero(nvars: usize) -> Self {
        PolyVec {
            comps: vec![Poly::zero(nvars); nvars],
        }
    }

    /// The coordinate field `∂_i`.
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut comps = vec![Poly::zero(nvars); nvars];
        comps[i] = Poly::one(nvars);
        PolyVec { comps }
    }

    /// The Euler field `Σ x_i ∂_i`.
    pub fn euler(nvars: usize) -> Self {
        PolyVec {
            comps: (0..nvars).map(|i| Poly::var(nvars, i)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.comps.len()
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &PolyVec) -> PolyVec {
        assert_eq!(self.nvars(), other.nvars());
        PolyVec {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> PolyVec {
        PolyVec {
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Directional derivative `v(f) = Σ v_i ∂_i f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(self.nvars());
        for (i, vi) in self.comps.iter().enumerate() {
            if !vi.is_zero() {
                acc = acc.add(&vi.mul(&f.partial(i)));
            }
        }
        acc
    }

    /// Lie bracket of vector fields `[v, w] = v∘w - w∘v`.
    pub fn bracket(&self, other: &PolyVec) -> PolyVec {
        assert_eq!(self.nvars(), other.nvars());
        let comps = (0..self.nvars())
            .map(|i| self.apply(other.comp(i)).sub(&other.apply(self.comp(i))))
            .collect();
        PolyVec { comps }
    }

    /// Largest component total degree; the zero field reports 0.
    pub fn coeff_degree(&self) -> usize {
        self.comps.iter().map(Poly::total_degree).max().unwrap_or(0)
    }

    /// Rendering like `x2*d/dx1 - x1*d/dx2`.
    pub fn render(&self) -> String {
        let mut pieces = Vec::new();
        for (i, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let coeff = p.render();
            let piece = if coeff == "1" {
                format!("d/dx{}", i + 1)
            } else if coeff == "-1" {
                format!("-d/dx{}", i + 1)
            } else if coeff.contains(' ') {
                format!("({})*d/dx{}", coeff, i + 1)
            } else {
                format!("{}*d/dx{}", coeff, i + 1)
            };
            pieces.push(piece);
        }
        if pieces.is_empty() {
            "0".to_string()
        } else {
            pieces.join(" + ").replace("+ -", "- ")
        }
    }
}

/// Formal sum of decomposable multivector fields of one degree.
///
/// Degree 0 is the span of the empty wedge, i.e. scalars.
#[derive(Clone, Debug)]
pub struct PolyMultiVec {
    nvars: usize,
    degree: usize,
    terms: Vec<(Rat, Vec<PolyVec>)>,
}

impl PolyMultiVec {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        PolyMultiVec {
            nvars,
            degree,
            terms: Vec::new(),
        }
    }

    pub fn decomposable(factors: Vec<PolyVec>) -> Self {
        assert!(!factors.is_empty());
        let nvars = factors[0].nvars();
        PolyMultiVec {
            nvars,
            degree: factors.len(),
            terms: vec![(Rat::from_integer(1.into()), factors)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(Rat, Vec<PolyVec>)] {
        &self.terms
    }

    pub fn add_term(&mut self, c: Rat, factors: Vec<PolyVec>) {
        assert_eq!(factors.len(), self.degree);
        if !c.is_zero() {
            self.terms.push((c, factors));
        }
    }

    pub fn add(&self, other: &PolyMultiVec) -> PolyMultiVec {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    pub fn scale(&self, c: &Rat) -> PolyMultiVec {
        if c.is_zero() {
            return PolyMultiVec::zero(self.nvars, self.degree);
        }
        let mut out = self.clone();
        for (w, _) in out.terms.iter_mut() {
            *w *= c;
        }
        out
    }

    /// Contraction into a form, first factor first.
    pub fn contract(&self, a: &PolyForm) -> PolyForm {
        let result_degree = a.degree().saturating_sub(self.degree);
        let mut out = PolyForm::zero(self.nvars, result_degree);
        for (c, factors) in &self.terms {
            let mut acc = a.clone();
            for v in factors {
                acc = acc.contract_vec(v);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Field-level homology differential
    /// `δ̄(v_1∧…∧v_k) = Σ_{i<j} (-1)^{i+j} [v_i,v_j]∧v_1…v̂_i…v̂_j…v_k`,
    /// extended linearly; degrees 0 and 1 map to zero.
    pub fn delta_bar(&self) -> PolyMultiVec {
        let out_degree = self.degree.saturating_sub(1);
        let mut out = PolyMultiVec::zero(self.nvars, out_degree);
        if self.degree < 2 {
            return out;
        }
        for (c, factors) in &self.terms {
            for a in 0..factors.len() {
                for b in a + 1..factors.len() {
                    let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                    let mut rest = vec![factors[a].bracket(&factors[b])];
                    for (pos, f) in factors.iter().enumerate() {
                        if pos != a && pos != b {
                            rest.push(f.clone());
                        }
                    }
                    out.add_term(c * Rat::from_integer(sign.into()), rest);
                }
            }
        }
        out
    }
}

/// Euler-radial homotopy operator on positive-degree forms: divides the
/// Euler contraction of each monomial term by its scaling weight.
pub fn euler_homotopy(a: &PolyForm) -> PolyForm {
    assert!(a.degree() >= 1, "homotopy operator needs degree >= 1");
    let nvars = a.nvars();
    let mut out = PolyForm::zero(nvars, a.degree() - 1);
    for (s, p) in a.comps() {
        for (exps, c) in p.terms() {
            let weight: usize = s.len() + exps.iter().map(|&e| e as usize).sum::<usize>();
            let scale = c / Rat::from_integer((weight as i64).into());
            for (pos, &idx) in s.iter().enumerate() {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let mut rest = s.clone();
                rest.remove(pos);
                let mut exps2 = exps.clone();
                exps2[idx] += 1;
                out.add_comp(
                    rest,
                    Poly::monomial(nvars, exps2, &scale * Rat::from_integer(sign.into())),
                );
            }
        }
    }
    out
}

/// Primitive of a closed positive-degree form via [`euler_homotopy`];
/// rejects non-closed input with the exact residual.
pub fn poincare_primitive(a: &PolyForm) -> Result<PolyForm> {
    if a.degree() == 0 {
        return Err(Error::Precondition(
            "primitives exist only in degree >= 1".into(),
        ));
    }
    let da = a.ext_d();
    if !da.is_zero() {
        return Err(Error::NotClosed {
            context: format!("degree-{} form", a.degree()),
            residual: da.render(),
        });
    }
    Ok(euler_homotopy(a))
}

/// Residual of the graded Cartan identity
/// `(-1)^k d ι(v_1∧…∧v_k) a  -  ι(δ̄(v_1∧…∧v_k)) a
///   - Σ_i (-1)^i ι(v_1∧…v̂_i…∧v_k) L_{v_i} a - ι(v_1∧…∧v_k) da`
/// for `k >= 2`; identically zero when the sign conventions agree.
pub fn cartan_residual(a: &PolyForm, factors: &[PolyVec]) -> PolyForm {
    let k = factors.len();
    assert!(k >= 2, "graded Cartan identity needs k >= 2");
    let w = PolyMultiVec::decomposable(factors.to_vec());
    let lhs_sign = if k % 2 == 0 { 1 } else { -1 };
    let lhs = w
        .contract(a)
        .ext_d()
        .scale(&Rat::from_integer(lhs_sign.into()));
    let mut rhs = w.delta_bar().contract(a);
    for i in 1..=k {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let omitted: Vec<PolyVec> = factors
            .iter()
            .enumerate()
            .filter(|(pos, _)| *pos != i - 1)
            .map(|(_, v)| v.clone())
            .collect();
        let reduced = PolyMultiVec::decomposable(omitted)
            .contract(&a.lie_derivative(&factors[i - 1]));
        rhs = rhs.add(&reduced.scale(&Rat::from_integer(sign.into())));
    }
    rhs = rhs.add(&w.contract(&a.ext_d()));
    lhs.sub(&rhs)
}
