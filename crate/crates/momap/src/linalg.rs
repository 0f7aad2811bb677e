//! Dense exact linear algebra over the rationals.
//!
//! Everything downstream reduces to three questions about small dense
//! matrices: what is the kernel, is a system solvable, and how big is a
//! quotient of two spans.  Matrices here are dense `Vec`-backed rationals
//! with Gaussian elimination done exactly; pivoting is deterministic
//! (leftmost nonzero column, topmost nonzero row), so bases and
//! particular solutions are reproducible across runs and platforms.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational scalar.
pub type Rat = BigRational;

/// The rational `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The rational `n / d`; panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q` with optional sign, rejecting zero denominators.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::BadRational(s.to_string()));
    }
    Rat::from_str(t).map_err(|_| Error::BadRational(s.to_string()))
}

/// Renders in the `p/q` form accepted by [`parse_rat`]; integers print
/// without the denominator.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense row-major matrix over [`Rat`].
///
/// Zero-row and zero-column matrices are legal and behave as the maps
/// between the corresponding zero-dimensional spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds from explicit rows, which must all have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(Error::Dimension {
                    context: format!("matrix row {i}"),
                    expected: ncols,
                    got: r.len(),
                });
            }
        }
        Ok(RatMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<Vec<Rat>>, col_len: usize) -> Result<Self> {
        for (j, c) in cols.iter().enumerate() {
            if c.len() != col_len {
                return Err(Error::Dimension {
                    context: format!("matrix column {j}"),
                    expected: col_len,
                    got: c.len(),
                });
            }
        }
        let mut m = RatMatrix::zeros(col_len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = RatMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "mul_vec length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc += self.at(i, j) * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "mul dimension mismatch");
        RatMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                if !self.at(i, k).is_zero() && !other.at(k, j).is_zero() {
                    acc += self.at(i, k) * other.at(k, j);
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Stacks `other` below `self`; column counts must agree unless one
    /// side has no rows.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        if self.rows == 0 {
            return other.clone();
        }
        if other.rows == 0 {
            return self.clone();
        }
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form together with the pivot column indices.
    ///
    /// Elimination scans columns left to right and picks the topmost
    /// unused row with a nonzero entry, so the result is canonical and
    /// the pivot list is strictly increasing.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row >= m.rows {
                break;
            }
            let Some(pivot_row) = (next_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if pivot_row != next_row {
                for j in 0..m.cols {
                    m.data
                        .swap(pivot_row * m.cols + j, next_row * m.cols + j);
                }
            }
            let inv = {
                let p = m.at(next_row, col).clone();
                p.recip()
            };
            for j in col..m.cols {
                let v = m.at(next_row, j) * &inv;
                m.set(next_row, j, v);
            }
            for r in 0..m.rows {
                if r != next_row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for j in col..m.cols {
                        let v = m.at(r, j) - &factor * m.at(next_row, j);
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column, ordered by
    /// ascending free-column index.  Each vector has a `1` in its free
    /// column, so the basis is in reduced column echelon position.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                vec[p] = -r.at(row, free).clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// One exact solution of `self * x = b`, or `None` if inconsistent.
    /// Free variables are set to zero, so the answer is deterministic.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "solve rhs length mismatch");
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.at(row, self.cols).clone();
        }
        Some(x)
    }
}

/// Dimension of `span(ambient) / span(sub)` together with ambient vectors
/// representing a basis of the quotient.
///
/// Fails with [`Error::NotInSpan`] when `sub` is not contained in the
/// span of `ambient`.
pub fn quotient_dim(
    sub: &[Vec<Rat>],
    ambient: &[Vec<Rat>],
    len: usize,
) -> Result<(usize, Vec<Vec<Rat>>)> {
    let sub_m = RatMatrix::from_rows(sub.to_vec())?;
    let amb_m = RatMatrix::from_rows(ambient.to_vec())?;
    if !sub.is_empty() && sub_m.cols() != len {
        return Err(Error::Dimension {
            context: "quotient subspace vectors".into(),
            expected: len,
            got: sub_m.cols(),
        });
    }
    if !ambient.is_empty() && amb_m.cols() != len {
        return Err(Error::Dimension {
            context: "quotient ambient vectors".into(),
            expected: len,
            got: amb_m.cols(),
        });
    }
    let rank_amb = amb_m.rank();
    let rank_sub = sub_m.rank();
    if amb_m.vstack(&sub_m).rank() != rank_amb {
        return Err(Error::NotInSpan {
            context: "quotient subspace not contained in ambient span".into(),
        });
    }
    let mut reps = Vec::new();
    let mut stack = sub_m;
    let mut current_rank = rank_sub;
    for v in ambient {
        let grown = stack.vstack(&RatMatrix::from_rows(vec![v.clone()])?);
        if grown.rank() > current_rank {
            current_rank += 1;
            reps.push(v.clone());
            stack = grown;
        }
    }
    debug_assert_eq!(reps.len(), rank_amb - rank_sub);
    Ok((rank_amb - rank_sub, reps))
}

/// True when `v` lies in the row span of `spanning`.
pub fn in_span(v: &[Rat], spanning: &[Vec<Rat>]) -> bool {
    let m = match RatMatrix::from_rows(spanning.to_vec()) {
        Ok(m) => m,
        Err(_) => return false,
    };
    if m.rows() == 0 {
        return v.iter().all(Zero::is_zero);
    }
    m.transpose().solve(v).is_some()
}

/// Dot product of two equal-length rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot length mismatch");
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// `|r|` as a convenience for size heuristics in tests.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Textbook Gauss-Jordan written independently of `rref` so the two
    /// implementations can cross-check each other; RREF is canonical, so
    /// equality of outputs is a complete test.
    fn oracle_rref(a: &RatMatrix) -> RatMatrix {
        let rows = a.rows();
        let cols = a.cols();
        let mut w: Vec<Vec<Rat>> = (0..rows).map(|i| a.row(i).to_vec()).collect();
        let mut lead = 0;
        for r in 0..rows {
            if lead >= cols {
                break;
            }
            let mut i = r;
            while w[i][lead].is_zero() {
                i += 1;
                if i == rows {
                    i = r;
                    lead += 1;
                    if lead == cols {
                        return RatMatrix::from_rows(w).unwrap();
                    }
                }
            }
            w.swap(i, r);
            let lv = w[r][lead].clone();
            for v in w[r].iter_mut() {
                *v /= &lv;
            }
            for i in 0..rows {
                if i != r {
                    let lv = w[i][lead].clone();
                    if !lv.is_zero() {
                        for j in 0..cols {
                            let t = &w[r][j] * &lv;
                            w[i][j] -= t;
                        }
                    }
                }
            }
            lead += 1;
        }
        RatMatrix::from_rows(w).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RatMatrix {
        RatMatrix::from_fn(rows, cols, |_, _| {
            if rng.gen_bool(0.3) {
                Rat::zero()
            } else {
                rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
            }
        })
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-7", "3/4", "-3/4", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("6/4").unwrap()), "3/2");
        assert_eq!(format_rat(&parse_rat("2/-4").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn kernel_of_rank_one_projector() {
        let a = m(&[&[1, 0], &[0, 0]]);
        let k = a.kernel_basis();
        assert_eq!(k, vec![vec![rat_int(0), rat_int(1)]]);
    }

    #[test]
    fn kernel_of_zero_row_matrix_is_everything() {
        let a = RatMatrix::zeros(0, 3);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn solve_inconsistent_system_returns_none() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert!(a
            .solve(&[rat_int(0), rat_int(1)])
            .is_none());
    }

    #[test]
    fn solve_underdetermined_sets_free_variables_to_zero() {
        let a = m(&[&[1, 1]]);
        let x = a.solve(&[rat_int(5)]).unwrap();
        assert_eq!(x, vec![rat_int(5), rat_int(0)]);
    }

    #[test]
    fn quotient_of_plane_by_line() {
        let e1 = vec![rat_int(1), rat_int(0)];
        let e2 = vec![rat_int(0), rat_int(1)];
        let (d, reps) = quotient_dim(&[e1.clone()], &[e1.clone(), e2.clone()], 2).unwrap();
        assert_eq!(d, 1);
        assert_eq!(reps, vec![e2]);
    }

    #[test]
    fn quotient_rejects_subspace_outside_ambient() {
        let e1 = vec![rat_int(1), rat_int(0)];
        let e2 = vec![rat_int(0), rat_int(1)];
        assert!(matches!(
            quotient_dim(&[e2], &[e1], 2),
            Err(Error::NotInSpan { .. })
        ));
    }

    #[test]
    fn rref_matches_independent_oracle_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let a = random_matrix(&mut rng, rows, cols);
            let (r, pivots) = a.rref();
            assert_eq!(r, oracle_rref(&a));
            assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn rank_nullity_and_kernel_membership_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for _ in 0..200 {
            let rows = rng.gen_range(0..=6);
            let cols = rng.gen_range(1..=6);
            let a = random_matrix(&mut rng, rows, cols);
            let k = a.kernel_basis();
            assert_eq!(a.rank() + k.len(), cols);
            for v in &k {
                assert!(a.mul_vec(v).iter().all(Zero::is_zero));
            }
            let stacked = RatMatrix::from_rows(k.clone()).unwrap();
            if !k.is_empty() {
                assert_eq!(stacked.rank(), k.len());
            }
        }
    }

    #[test]
    fn solve_substitutes_back_on_random_consistent_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..200 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let a = random_matrix(&mut rng, rows, cols);
            let x0: Vec<Rat> = (0..cols)
                .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
                .collect();
            let b = a.mul_vec(&x0);
            let x = a.solve(&b).expect("constructed system must be solvable");
            assert_eq!(a.mul_vec(&x), b);
        }
    }

    #[test]
    fn quotient_dimension_agrees_with_rank_difference_on_random_spans() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..100 {
            let len = rng.gen_range(1..=5);
            let namb = rng.gen_range(0..=5);
            let ambient: Vec<Vec<Rat>> = (0..namb)
                .map(|_| {
                    (0..len)
                        .map(|_| rat(rng.gen_range(-4..=4), 1))
                        .collect()
                })
                .collect();
            let nsub = rng.gen_range(0..=namb);
            let sub: Vec<Vec<Rat>> = (0..nsub)
                .map(|_| {
                    let mut acc = vec![Rat::zero(); len];
                    for v in &ambient {
                        let c = rat(rng.gen_range(-2..=2), 1);
                        for (a, x) in acc.iter_mut().zip(v) {
                            *a += &c * x;
                        }
                    }
                    acc
                })
                .collect();
            let amb_rank = RatMatrix::from_rows(ambient.clone()).unwrap().rank();
            let sub_rank = RatMatrix::from_rows(sub.clone()).unwrap().rank();
            let (d, reps) = quotient_dim(&sub, &ambient, len).unwrap();
            assert_eq!(d, amb_rank - sub_rank);
            assert_eq!(reps.len(), d);
            for r in &reps {
                assert!(in_span(r, &ambient));
            }
        }
    }
}
