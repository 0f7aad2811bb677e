//! Lie algebras over `Q` by structure constants, exterior powers, the
//! homology differential and its kernels, Chevalley–Eilenberg cohomology,
//! invariant pairings, and the Cartan 3-cocycle.
//!
//! Basis elements of `Λ^k g` are strictly increasing index sets in
//! lexicographic order; every matrix in this module is written against
//! that ordering, so kernel bases and cohomology representatives are
//! deterministic.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::combi::{merge_sign, remove_at, subsets};
use crate::linalg::{format_rat, quotient_dim, Rat, RatMatrix};
use crate::{Error, Result};

/// Finite-dimensional Lie algebra with rational structure constants.
///
/// The full bracket table is stored with antisymmetry built in at
/// construction; the Jacobi identity is *not* assumed here and is
/// checked separately by [`LieAlgebra::jacobi_check`], so a scene with a
/// broken bracket can still be loaded and diagnosed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    // table[i][j] = coordinates of [e_i, e_j]
    table: Vec<Vec<Vec<Rat>>>,
}

impl LieAlgebra {
    /// Builds from sparse bracket data `(i, j, k, c)` meaning the
    /// coefficient of `e_k` in `[e_i, e_j]` is `c`, with `i < j`
    /// required; the transposed entries are filled in by antisymmetry.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, Rat)]) -> Result<Self> {
        let mut table = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        for (pos, (i, j, k, c)) in entries.iter().enumerate() {
            if *i >= *j {
                return Err(Error::parse(
                    format!("brackets[{pos}]"),
                    format!("bracket entries need i < j, got i = {i}, j = {j}"),
                ));
            }
            if *j >= dim || *k >= dim {
                return Err(Error::parse(
                    format!("brackets[{pos}]"),
                    format!("index out of range for a dimension-{dim} algebra"),
                ));
            }
            table[*i][*j][*k] += c;
            table[*j][*i][*k] -= c;
        }
        Ok(LieAlgebra { dim, table })
    }

    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            table: vec![vec![vec![Rat::zero(); dim]; dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rat] {
        &self.table[i][j]
    }

    /// Coordinates of `[x, y]` for arbitrary coordinate vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..self.dim {
                    if !self.table[i][j][k].is_zero() {
                        out[k] += &c * &self.table[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// First basis triple `(i, j, k)` violating the Jacobi identity, if
    /// any, in lexicographic order.
    pub fn jacobi_check(&self) -> Option<(usize, usize, usize)> {
        let basis = |i: usize| {
            let mut v = vec![Rat::zero(); self.dim];
            v[i] = Rat::from_integer(1.into());
            v
        };
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let mut acc = self.bracket(&self.bracket(&basis(i), &basis(j)), &basis(k));
                    for (a, b) in acc
                        .iter_mut()
                        .zip(self.bracket(&self.bracket(&basis(j), &basis(k)), &basis(i)))
                    {
                        *a += b;
                    }
                    for (a, b) in acc
                        .iter_mut()
                        .zip(self.bracket(&self.bracket(&basis(k), &basis(i)), &basis(j)))
                    {
                        *a += b;
                    }
                    if acc.iter().any(|c| !c.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Matrix of `ad(e_x)` on the basis: column `j` holds `[e_x, e_j]`.
    pub fn ad_matrix(&self, x: usize) -> RatMatrix {
        RatMatrix::from_fn(self.dim, self.dim, |k, j| self.table[x][j][k].clone())
    }

    /// Killing form matrix `K[i][j] = tr(ad e_i · ad e_j)`.
    pub fn killing_form(&self) -> RatMatrix {
        let ads: Vec<RatMatrix> = (0..self.dim).map(|i| self.ad_matrix(i)).collect();
        RatMatrix::from_fn(self.dim, self.dim, |i, j| {
            let prod = ads[i].mul(&ads[j]);
            let mut tr = Rat::zero();
            for k in 0..self.dim {
                tr += prod.at(k, k);
            }
            tr
        })
    }
}

/// Element of `Λ^k g`, sparse over increasing index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Rat>,
}

impl Multivector {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Multivector {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `e_S` for a strictly increasing set `S`.
    pub fn basis(dim: usize, set: &[usize]) -> Self {
        assert!(set.windows(2).all(|w| w[0] < w[1]), "index set not sorted");
        assert!(set.iter().all(|&i| i < dim), "index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(set.to_vec(), Rat::from_integer(1.into()));
        Multivector {
            dim,
            degree: set.len(),
            terms,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, set: &[usize]) -> Rat {
        self.terms.get(set).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, set: Vec<usize>, c: Rat) {
        debug_assert_eq!(set.len(), self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(set).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            // re-borrow to drop the now-zero term
            let keys: Vec<Vec<usize>> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in keys {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Multivector {
        if c.is_zero() {
            return Multivector::zero(self.dim, self.degree);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn sub(&self, other: &Multivector) -> Multivector {
        self.add(&other.scale(&-Rat::from_integer(1.into())))
    }

    pub fn wedge(&self, other: &Multivector) -> Multivector {
        assert_eq!(self.dim, other.dim);
        let mut out = Multivector::zero(self.dim, self.degree + other.degree);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if let Some((sign, u)) = merge_sign(s, t) {
                    out.add_term(u, Rat::from_integer(sign.into()) * a * b);
                }
            }
        }
        out
    }

    /// Coordinates against the lexicographic basis of `Λ^degree`.
    pub fn coords(&self, basis_sets: &[Vec<usize>]) -> Vec<Rat> {
        basis_sets.iter().map(|s| self.coeff(s)).collect()
    }

    /// Reassembles from coordinates against the lexicographic basis.
    pub fn from_coords(dim: usize, degree: usize, basis_sets: &[Vec<usize>], v: &[Rat]) -> Self {
        assert_eq!(basis_sets.len(), v.len());
        let mut out = Multivector::zero(dim, degree);
        for (s, c) in basis_sets.iter().zip(v) {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    /// Wedge of a degree-1 vector given by coordinates with `self`.
    pub fn wedge_vector_front(&self, x: &[Rat]) -> Multivector {
        let mut front = Multivector::zero(self.dim, 1);
        for (i, c) in x.iter().enumerate() {
            front.add_term(vec![i], c.clone());
        }
        front.wedge(self)
    }

    /// Human-readable rendering like `2*e[1,3] - 1/2*e[2,3]` (1-based).
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (s, c) in &self.terms {
            let ones: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&format!("{}*e[{}]", format_rat(c), ones.join(",")));
        }
        out
    }
}

/// The Lie algebra homology differential
/// `δ(x_1∧…∧x_k) = Σ_{i<j} (-1)^{i+j} [x_i,x_j] ∧ x_1∧…x̂_i…x̂_j…∧x_k`.
///
/// On degree 1 the sum is empty, so `δ` vanishes there and every vector
/// is a cycle.
pub fn delta(g: &LieAlgebra, p: &Multivector) -> Multivector {
    assert!(p.degree() >= 1, "delta needs degree >= 1");
    let mut out = Multivector::zero(g.dim(), p.degree() - 1);
    for (set, coeff) in p.terms() {
        for a in 0..set.len() {
            for b in a + 1..set.len() {
                // (-1)^{i+j} with 1-based positions equals (-1)^{a+b} 0-based
                let pos_sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                let mut rest = set.clone();
                rest.remove(b);
                rest.remove(a);
                let bracket = g.bracket_basis(set[a], set[b]);
                for (k, c) in bracket.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some((ins_sign, merged)) = merge_sign(&[k], &rest) {
                        let total = Rat::from_integer((pos_sign * ins_sign).into()) * coeff * c;
                        out.add_term(merged, total);
                    }
                }
            }
        }
    }
    out
}

/// Matrix of `δ_k : Λ^k g → Λ^{k-1} g` against lexicographic bases.
pub fn delta_matrix(g: &LieAlgebra, k: usize) -> RatMatrix {
    let dom = subsets(g.dim(), k);
    let cod = subsets(g.dim(), k.saturating_sub(1));
    let mut m = RatMatrix::zeros(cod.len(), dom.len());
    for (col, s) in dom.iter().enumerate() {
        let image = delta(g, &Multivector::basis(g.dim(), s));
        for (row, t) in cod.iter().enumerate() {
            m.set(row, col, image.coeff(t));
        }
    }
    m
}

/// The `x`-th adjoint action extended as a derivation of `Λ^k g`.
pub fn adjoint_action(g: &LieAlgebra, x: usize, p: &Multivector) -> Multivector {
    let mut out = Multivector::zero(g.dim(), p.degree());
    for (set, coeff) in p.terms() {
        for pos in 0..set.len() {
            let (sign, rest) = remove_at(set, pos);
            let image = g.bracket_basis(x, set[pos]);
            for (k, c) in image.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if let Some((ins_sign, merged)) = merge_sign(&[k], &rest) {
                    out.add_term(
                        merged,
                        Rat::from_integer((sign * ins_sign).into()) * coeff * c,
                    );
                }
            }
        }
    }
    out
}

/// Matrix of [`adjoint_action`] on `Λ^k g` against lexicographic bases.
pub fn adjoint_matrix(g: &LieAlgebra, x: usize, k: usize) -> RatMatrix {
    let basis_sets = subsets(g.dim(), k);
    let mut m = RatMatrix::zeros(basis_sets.len(), basis_sets.len());
    for (col, s) in basis_sets.iter().enumerate() {
        let image = adjoint_action(g, x, &Multivector::basis(g.dim(), s));
        for (row, t) in basis_sets.iter().enumerate() {
            m.set(row, col, image.coeff(t));
        }
    }
    m
}

/// Kernel of `δ_k`, the space of degree-`k` Lie cycles, with a
/// deterministic basis and a complement spanned by basis index sets.
#[derive(Clone, Debug)]
pub struct LieKernel {
    degree: usize,
    dim: usize,
    basis_sets: Vec<Vec<usize>>,
    kernel: Vec<Vec<Rat>>,
    complement_sets: Vec<Vec<usize>>,
    // columns: kernel basis then complement basis elements; square and
    // invertible, cached for decomposing vectors
    decomp: RatMatrix,
}

impl LieKernel {
    pub fn new(g: &LieAlgebra, k: usize) -> Result<Self> {
        let m = delta_matrix(g, k);
        let (_, pivots) = m.rref();
        let kernel = m.kernel_basis();
        let basis_sets = subsets(g.dim(), k);
        let complement_sets: Vec<Vec<usize>> =
            pivots.iter().map(|&p| basis_sets[p].clone()).collect();
        let mut cols = kernel.clone();
        for &p in &pivots {
            let mut v = vec![Rat::zero(); basis_sets.len()];
            v[p] = Rat::from_integer(1.into());
            cols.push(v);
        }
        let decomp = RatMatrix::from_cols(cols, basis_sets.len())?;
        Ok(LieKernel {
            degree: k,
            dim: g.dim(),
            basis_sets,
            kernel,
            complement_sets,
            decomp,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of independent cycles.
    pub fn rank(&self) -> usize {
        self.kernel.len()
    }

    /// Kernel basis as coordinate vectors against the lexicographic
    /// basis of `Λ^degree`.
    pub fn basis_coords(&self) -> &[Vec<Rat>] {
        &self.kernel
    }

    pub fn basis_multivector(&self, j: usize) -> Multivector {
        Multivector::from_coords(self.dim, self.degree, &self.basis_sets, &self.kernel[j])
    }

    /// Index sets of the complementary (non-cycle) basis directions.
    pub fn complement_sets(&self) -> &[Vec<usize>] {
        &self.complement_sets
    }

    pub fn ambient_sets(&self) -> &[Vec<usize>] {
        &self.basis_sets
    }

    /// Coordinates of a cycle against the kernel basis; fails when the
    /// element is not actually a cycle.
    pub fn express(&self, p: &Multivector) -> Result<Vec<Rat>> {
        let (kern, rest) = self.decompose(p)?;
        if rest.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotInSpan {
                context: format!("degree-{} element is not a cycle", self.degree),
            });
        }
        Ok(kern)
    }

    /// Splits coordinates along kernel ⊕ complement.
    pub fn decompose(&self, p: &Multivector) -> Result<(Vec<Rat>, Vec<Rat>)> {
        assert_eq!(p.degree(), self.degree);
        let v = p.coords(&self.basis_sets);
        let sol = self.decomp.solve(&v).ok_or_else(|| {
            Error::Internal("kernel/complement decomposition failed on a full basis".into())
        })?;
        let (a, b) = sol.split_at(self.kernel.len());
        Ok((a.to_vec(), b.to_vec()))
    }
}

/// Functional on `Λ^k g`, sparse over increasing index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCochain {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Rat>,
}

impl DualCochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        DualCochain {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_coords(dim: usize, degree: usize, basis_sets: &[Vec<usize>], v: &[Rat]) -> Self {
        assert_eq!(basis_sets.len(), v.len());
        let mut terms = BTreeMap::new();
        for (s, c) in basis_sets.iter().zip(v) {
            if !c.is_zero() {
                terms.insert(s.clone(), c.clone());
            }
        }
        DualCochain { dim, degree, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn set(&mut self, set: Vec<usize>, c: Rat) {
        if c.is_zero() {
            self.terms.remove(&set);
        } else {
            self.terms.insert(set, c);
        }
    }

    pub fn coeff(&self, set: &[usize]) -> Rat {
        self.terms.get(set).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coords(&self, basis_sets: &[Vec<usize>]) -> Vec<Rat> {
        basis_sets.iter().map(|s| self.coeff(s)).collect()
    }

    /// Pairing with a multivector of the same degree.
    pub fn eval(&self, p: &Multivector) -> Rat {
        assert_eq!(self.degree, p.degree());
        let mut acc = Rat::zero();
        for (s, c) in p.terms() {
            let v = self.coeff(s);
            if !v.is_zero() {
                acc += v * c;
            }
        }
        acc
    }

    pub fn sub(&self, other: &DualCochain) -> DualCochain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (s, c) in &other.terms {
            let v = out.coeff(s) - c;
            out.set(s.clone(), v);
        }
        out
    }

    /// Rendering like `-2*e*[1,2,3]` with 1-based indices.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (s, c) in &self.terms {
            let ones: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&format!("{}*e*[{}]", format_rat(c), ones.join(",")));
        }
        out
    }
}

/// The Chevalley–Eilenberg differential `(dξ)(q) = ξ(δ q)`, transpose
/// of the homology differential.
pub fn ce_differential(g: &LieAlgebra, xi: &DualCochain) -> DualCochain {
    let target_sets = subsets(g.dim(), xi.degree() + 1);
    let mut out = DualCochain::zero(g.dim(), xi.degree() + 1);
    for t in &target_sets {
        let image = delta(g, &Multivector::basis(g.dim(), t));
        let v = xi.eval(&image);
        out.set(t.clone(), v);
    }
    out
}

/// Matrix of `d^k : Λ^k g^* → Λ^{k+1} g^*` against lexicographic bases.
pub fn ce_matrix(g: &LieAlgebra, k: usize) -> RatMatrix {
    delta_matrix(g, k + 1).transpose()
}

/// One cohomology space `H^k(g)` with deterministic representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<DualCochain>,
}

/// Computes `H^k(g)` with trivial coefficients.
pub fn ce_cohomology(g: &LieAlgebra, k: usize) -> Result<Cohomology> {
    let basis_sets = subsets(g.dim(), k);
    let closed = ce_matrix(g, k).kernel_basis();
    let exact: Vec<Vec<Rat>> = if k == 0 {
        Vec::new()
    } else {
        let m = ce_matrix(g, k - 1);
        (0..m.cols()).map(|j| m.col(j)).collect()
    };
    let (dim, reps) = quotient_dim(&exact, &closed, basis_sets.len())?;
    let representatives = reps
        .iter()
        .map(|v| DualCochain::from_coords(g.dim(), k, &basis_sets, v))
        .collect();
    Ok(Cohomology {
        degree: k,
        dim,
        representatives,
    })
}

/// Whether the class of a closed cochain vanishes; returns a primitive
/// when it does.
pub fn class_is_zero(g: &LieAlgebra, xi: &DualCochain) -> Result<Option<DualCochain>> {
    let k = xi.degree();
    let closed = ce_differential(g, xi);
    if !closed.is_zero() {
        return Err(Error::Precondition(format!(
            "class test needs a closed cochain, got d(ξ) = {}",
            closed.render()
        )));
    }
    if k == 0 {
        return Ok(if xi.is_zero() {
            Some(DualCochain::zero(g.dim(), 0))
        } else {
            None
        });
    }
    let m = ce_matrix(g, k - 1);
    let target = xi.coords(&subsets(g.dim(), k));
    Ok(m.solve(&target).map(|v| {
        DualCochain::from_coords(g.dim(), k - 1, &subsets(g.dim(), k - 1), &v)
    }))
}

/// Joint kernel of a matrix family that must represent the algebra:
/// checks `[M_i, M_j] = Σ_k c^k_{ij} M_k` first, then intersects the
/// kernels of all `M_i`.
pub fn invariants(g: &LieAlgebra, mats: &[RatMatrix]) -> Result<Vec<Vec<Rat>>> {
    if mats.len() != g.dim() {
        return Err(Error::Dimension {
            context: "invariants: one matrix per basis element".into(),
            expected: g.dim(),
            got: mats.len(),
        });
    }
    let size = mats.first().map_or(0, RatMatrix::rows);
    for (i, m) in mats.iter().enumerate() {
        if m.rows() != size || m.cols() != size {
            return Err(Error::Dimension {
                context: format!("invariants: matrix {i} must be square of size {size}"),
                expected: size,
                got: m.rows().max(m.cols()),
            });
        }
    }
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let mut expected = RatMatrix::zeros(size, size);
            for (k, c) in g.bracket_basis(i, j).iter().enumerate() {
                if !c.is_zero() {
                    expected = expected.add(&mats[k].scale(c));
                }
            }
            let commutator = mats[i].mul(&mats[j]).sub(&mats[j].mul(&mats[i]));
            if commutator != expected {
                return Err(Error::Precondition(format!(
                    "matrices do not represent the algebra: [M_{}, M_{}] differs from the bracket image",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut stacked = RatMatrix::zeros(0, size);
    for m in mats {
        stacked = stacked.vstack(m);
    }
    Ok(stacked.kernel_basis())
}

/// The Cartan 3-cocycle of an invariant symmetric pairing, with its
/// class decided in `H^3(g)`.
#[derive(Clone, Debug)]
pub struct CartanCocycle {
    pub theta: DualCochain,
    /// Primitive exhibiting `[θ] = 0`, when the class vanishes.
    pub primitive: Option<DualCochain>,
}

impl CartanCocycle {
    pub fn class_is_zero(&self) -> bool {
        self.primitive.is_some()
    }
}

/// Builds `θ(x, y, z) = ⟨x, [y, z]⟩` from a pairing matrix, checking
/// symmetry and ad-invariance first (both are needed for θ to be
/// alternating and closed).
pub fn cartan_cocycle(g: &LieAlgebra, pairing: &RatMatrix) -> Result<CartanCocycle> {
    let n = g.dim();
    if pairing.rows() != n || pairing.cols() != n {
        return Err(Error::Dimension {
            context: "pairing matrix".into(),
            expected: n,
            got: pairing.rows().max(pairing.cols()),
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            if pairing.at(i, j) != pairing.at(j, i) {
                return Err(Error::BadPairing {
                    property: "symmetric".into(),
                });
            }
        }
    }
    let pair = |x: &[Rat], y: &[Rat]| {
        let mut acc = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                if !x[i].is_zero() && !y[j].is_zero() {
                    acc += &x[i] * &y[j] * pairing.at(i, j);
                }
            }
        }
        acc
    };
    let basis = |i: usize| {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::from_integer(1.into());
        v
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = pair(&g.bracket(&basis(i), &basis(j)), &basis(k));
                let rhs = pair(&basis(i), &g.bracket(&basis(j), &basis(k)));
                if lhs != rhs {
                    return Err(Error::BadPairing {
                        property: "ad-invariant".into(),
                    });
                }
            }
        }
    }
    let mut theta = DualCochain::zero(n, 3);
    for s in subsets(n, 3) {
        let v = pair(&basis(s[0]), &g.bracket(&basis(s[1]), &basis(s[2])));
        theta.set(s, v);
    }
    let closed = ce_differential(g, &theta);
    if !closed.is_zero() {
        return Err(Error::NotClosed {
            context: "cartan cocycle".into(),
            residual: closed.render(),
        });
    }
    let primitive = class_is_zero(g, &theta)?;
    Ok(CartanCocycle { theta, primitive })
}

/// The rotation algebra `so(3)`: `[e1,e2]=e3`, `[e1,e3]=-e2`,
/// `[e2,e3]=e1`.
pub fn so3() -> LieAlgebra {
    let one = Rat::from_integer(1.into());
    LieAlgebra::from_brackets(
        3,
        &[
            (0, 1, 2, one.clone()),
            (0, 2, 1, -one.clone()),
            (1, 2, 0, one),
        ],
    )
    .expect("so(3) bracket data is well-formed")
}

/// `sl(2, Q)` in the `h, e, f` basis: `[h,e]=2e`, `[h,f]=-2f`,
/// `[e,f]=h`.
pub fn sl2() -> LieAlgebra {
    let one = Rat::from_integer(1.into());
    let two = Rat::from_integer(2.into());
    LieAlgebra::from_brackets(
        3,
        &[
            (0, 1, 1, two.clone()),
            (0, 2, 2, -two),
            (1, 2, 0, one),
        ],
    )
    .expect("sl(2) bracket data is well-formed")
}

/// The 3-dimensional Heisenberg algebra: `[e1,e2]=e3`.
pub fn heisenberg3() -> LieAlgebra {
    let one = Rat::from_integer(1.into());
    LieAlgebra::from_brackets(3, &[(0, 1, 2, one)]).expect("heisenberg bracket data is well-formed")
}

/// The 2-dimensional solvable algebra `[e1,e2]=e2`.
pub fn solvable2() -> LieAlgebra {
    let one = Rat::from_integer(1.into());
    LieAlgebra::from_brackets(2, &[(0, 1, 1, one)]).expect("solvable bracket data is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;

    fn e(dim: usize, i: usize) -> Multivector {
        Multivector::basis(dim, &[i])
    }

    #[test]
    fn so3_brackets_and_jacobi() {
        let g = so3();
        assert_eq!(
            g.bracket_basis(0, 1),
            &[rat_int(0), rat_int(0), rat_int(1)]
        );
        assert_eq!(
            g.bracket_basis(2, 0),
            &[rat_int(0), rat_int(1), rat_int(0)]
        );
        assert!(g.jacobi_check().is_none());
        assert!(sl2().jacobi_check().is_none());
        assert!(heisenberg3().jacobi_check().is_none());
        assert!(solvable2().jacobi_check().is_none());
    }

    #[test]
    fn jacobi_failure_reports_first_triple() {
        // [e1,e2]=e3, [e1,e3]=e1 breaks Jacobi on (e1,e2,e3)
        let g = LieAlgebra::from_brackets(
            3,
            &[(0, 1, 2, rat_int(1)), (0, 2, 0, rat_int(1))],
        )
        .unwrap();
        assert_eq!(g.jacobi_check(), Some((0, 1, 2)));
    }

    #[test]
    fn so3_delta_on_basis_wedges() {
        let g = so3();
        // δ(e1∧e2) = -[e1,e2] = -e3
        let d12 = delta(&g, &e(3, 0).wedge(&e(3, 1)));
        assert_eq!(d12, e(3, 2).scale(&rat_int(-1)));
        let d13 = delta(&g, &e(3, 0).wedge(&e(3, 2)));
        assert_eq!(d13, e(3, 1));
        let d23 = delta(&g, &e(3, 1).wedge(&e(3, 2)));
        assert_eq!(d23, e(3, 0).scale(&rat_int(-1)));
        // δ on Λ³ so(3) vanishes identically
        let top = Multivector::basis(3, &[0, 1, 2]);
        assert!(delta(&g, &top).is_zero());
    }

    #[test]
    fn delta_squares_to_zero_on_so3_and_sl2() {
        for g in [so3(), sl2(), heisenberg3()] {
            for k in 2..=g.dim() {
                for s in subsets(g.dim(), k) {
                    let d = delta(&g, &Multivector::basis(g.dim(), &s));
                    if d.degree() >= 1 {
                        assert!(delta(&g, &d).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn so3_lie_kernels_match_hand_computation() {
        let g = so3();
        let p1 = LieKernel::new(&g, 1).unwrap();
        let p2 = LieKernel::new(&g, 2).unwrap();
        let p3 = LieKernel::new(&g, 3).unwrap();
        assert_eq!(p1.rank(), 3);
        assert_eq!(p2.rank(), 0);
        assert_eq!(p3.rank(), 1);
        assert_eq!(p2.complement_sets().len(), 3);
    }

    #[test]
    fn kernel_express_and_decompose_round_trip() {
        let g = so3();
        let p3 = LieKernel::new(&g, 3).unwrap();
        let top = Multivector::basis(3, &[0, 1, 2]).scale(&rat_int(5));
        let coords = p3.express(&top).unwrap();
        assert_eq!(coords, vec![rat_int(5)]);
        let p2 = LieKernel::new(&g, 2).unwrap();
        let q = Multivector::basis(3, &[0, 1]);
        assert!(p2.express(&q).is_err());
        let (kern, rest) = p2.decompose(&q).unwrap();
        assert!(kern.is_empty());
        assert_eq!(rest.iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn so3_cohomology_dimensions() {
        let g = so3();
        assert_eq!(ce_cohomology(&g, 0).unwrap().dim, 1);
        assert_eq!(ce_cohomology(&g, 1).unwrap().dim, 0);
        assert_eq!(ce_cohomology(&g, 2).unwrap().dim, 0);
        assert_eq!(ce_cohomology(&g, 3).unwrap().dim, 1);
    }

    #[test]
    fn abelian_cohomology_is_full_exterior_algebra() {
        let g = LieAlgebra::abelian(3);
        for k in 0..=3 {
            assert_eq!(ce_cohomology(&g, k).unwrap().dim, subsets(3, k).len());
        }
    }

    #[test]
    fn heisenberg_first_cohomology() {
        // one relation [e1,e2]=e3 kills e3* in degree 1: H^1 = span(e1*, e2*)
        let g = heisenberg3();
        assert_eq!(ce_cohomology(&g, 1).unwrap().dim, 2);
    }

    #[test]
    fn adjoint_action_is_bracket_in_degree_one() {
        let g = so3();
        let image = adjoint_action(&g, 0, &e(3, 1));
        assert_eq!(image, e(3, 2));
        // derivation property lands on the hand value ad_{e1}(e2∧e3) = 0
        let p = e(3, 1).wedge(&e(3, 2));
        let moved = adjoint_action(&g, 0, &p);
        assert!(moved.is_zero());
    }

    #[test]
    fn so3_killing_form_is_minus_two_identity() {
        let g = so3();
        let k = g.killing_form();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { rat_int(-2) } else { rat_int(0) };
                assert_eq!(*k.at(i, j), expected);
            }
        }
    }

    #[test]
    fn so3_cartan_cocycle_value_and_class() {
        let g = so3();
        let cartan = cartan_cocycle(&g, &g.killing_form()).unwrap();
        // θ(e1,e2,e3) = ⟨e1, [e2,e3]⟩ = K(e1, e1) = -2
        assert_eq!(cartan.theta.coeff(&[0, 1, 2]), rat_int(-2));
        assert!(!cartan.class_is_zero());
    }

    #[test]
    fn cartan_cocycle_rejects_non_invariant_pairing() {
        let g = so3();
        let mut bad = RatMatrix::identity(3);
        bad.set(0, 0, rat_int(2));
        assert!(matches!(
            cartan_cocycle(&g, &bad),
            Err(Error::BadPairing { .. })
        ));
    }

    #[test]
    fn invariants_checks_representation_then_intersects_kernels() {
        let g = so3();
        let mats: Vec<RatMatrix> = (0..3).map(|i| g.ad_matrix(i)).collect();
        // adjoint representation of so(3) has no invariants
        assert!(invariants(&g, &mats).unwrap().is_empty());
        let bogus = vec![
            RatMatrix::identity(3),
            RatMatrix::identity(3),
            RatMatrix::identity(3),
        ];
        assert!(invariants(&g, &bogus).is_err());
    }

    #[test]
    fn invariants_of_trivial_representation_is_everything() {
        let g = so3();
        let zeros = vec![RatMatrix::zeros(2, 2); 3];
        assert_eq!(invariants(&g, &zeros).unwrap().len(), 2);
    }

    #[test]
    fn ce_class_test_finds_primitives_for_exact_cochains() {
        let g = heisenberg3();
        // d(e3*) = ±e1*∧e2* is exact by construction
        let mut e3s = DualCochain::zero(3, 1);
        e3s.set(vec![2], rat_int(1));
        let d = ce_differential(&g, &e3s);
        assert!(!d.is_zero());
        let prim = class_is_zero(&g, &d).unwrap();
        assert!(prim.is_some());
        let back = ce_differential(&g, &prim.unwrap());
        assert_eq!(back, d);
    }
}
