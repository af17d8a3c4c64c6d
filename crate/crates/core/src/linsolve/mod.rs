//! Exact sparse linear algebra over ℚ: rank, kernel, solve.

mod elimination;
pub mod market;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::scalar::Scalar;
use elimination::{eliminate, normalize_sign, Echelon, IntRow};

/// Sparse matrix with exact entries, stored row by row with sorted columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSparseMatrix<S> {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<(usize, S)>>,
}

/// Sparse vector as sorted `(index, value)` pairs without zeros.
pub type SparseVector<S> = Vec<(usize, S)>;

impl<S: Scalar> RationalSparseMatrix<S> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        RationalSparseMatrix { n_rows, n_cols, rows: vec![Vec::new(); n_rows] }
    }

    /// Empty matrix with `n_cols` columns; rows are appended with [`push_row`](Self::push_row).
    pub fn with_cols(n_cols: usize) -> Self {
        Self::zeros(0, n_cols)
    }

    /// Appends a row; entries may come in any order and repeated columns are summed.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, S)>) -> Result<(), Error> {
        let row = Self::tidy(entries, self.n_cols)?;
        self.rows.push(row);
        self.n_rows += 1;
        Ok(())
    }

    fn tidy(entries: impl IntoIterator<Item = (usize, S)>, n_cols: usize) -> Result<Vec<(usize, S)>, Error> {
        let mut acc: BTreeMap<usize, S> = BTreeMap::new();
        for (c, v) in entries {
            if c >= n_cols {
                return Err(Error::DimensionMismatch(format!("column {c} out of range for {n_cols} columns")));
            }
            let slot = acc.entry(c).or_insert_with(S::zero);
            *slot = slot.clone() + v;
        }
        Ok(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn from_triplets(n_rows: usize, n_cols: usize, entries: impl IntoIterator<Item = (usize, usize, S)>) -> Result<Self, Error> {
        let mut per_row: Vec<Vec<(usize, S)>> = vec![Vec::new(); n_rows];
        for (r, c, v) in entries {
            if r >= n_rows {
                return Err(Error::DimensionMismatch(format!("row {r} out of range for {n_rows} rows")));
            }
            per_row[r].push((c, v));
        }
        let rows = per_row.into_iter().map(|r| Self::tidy(r, n_cols)).collect::<Result<_, _>>()?;
        Ok(RationalSparseMatrix { n_rows, n_cols, rows })
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Result<Self, Error> {
        let n_cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch("ragged dense rows".into()));
        }
        Self::from_triplets(
            rows.len(),
            n_cols,
            rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, S::one()))).expect("in range")
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, S)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(usize, S)]> + '_ {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.rows[r].binary_search_by_key(&c, |(j, _)| *j).map_or_else(|_| S::zero(), |k| self.rows[r][k].1.clone())
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); self.n_cols];
        for (i, j, v) in self.entries() {
            cols[j].push((i, v.clone()));
        }
        RationalSparseMatrix { n_rows: self.n_cols, n_cols: self.n_rows, rows: cols }
    }

    /// `M·x` for a dense `x`.
    pub fn mul_dense(&self, x: &[S]) -> Result<Vec<S>, Error> {
        if x.len() != self.n_cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", x.len(), self.n_cols)));
        }
        Ok(self.rows.iter().map(|r| r.iter().fold(S::zero(), |acc, (j, v)| acc + v.clone() * x[*j].clone())).collect())
    }

    /// `M·x` for a sparse `x`, as a dense vector.
    pub fn mul_sparse(&self, x: &[(usize, S)]) -> Vec<S> {
        let lookup: BTreeMap<usize, &S> = x.iter().map(|(i, v)| (*i, v)).collect();
        self.rows
            .iter()
            .map(|r| r.iter().filter_map(|(j, v)| lookup.get(j).map(|x| v.clone() * (*x).clone())).fold(S::zero(), |a, b| a + b))
            .collect()
    }

    /// Same entries with `extra` columns appended (zero).
    pub fn widen(&self, extra: usize) -> Self {
        RationalSparseMatrix { n_rows: self.n_rows, n_cols: self.n_cols + extra, rows: self.rows.clone() }
    }

    fn int_rows(&self) -> Vec<IntRow> {
        self.rows.iter().map(|r| to_int_row(r)).collect()
    }
}

/// Clears denominators and divides out the content.
fn to_int_row<S: Scalar>(row: &[(usize, S)]) -> IntRow {
    let big: Vec<(usize, BigRational)> = row.iter().map(|(c, v)| (*c, v.to_big())).collect();
    let lcm = big.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out: IntRow = big.into_iter().map(|(c, v)| (c, v.numer() * (&lcm / v.denom()))).collect();
    let g = out.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in out.iter_mut() {
            *v = &*v / &g;
        }
    }
    out
}

fn echelon<S: Scalar>(m: &RationalSparseMatrix<S>, class: &[u8]) -> Echelon {
    eliminate(&m.int_rows(), m.n_cols, class)
}

/// Exact rank over ℚ.
pub fn rank<S: Scalar>(m: &RationalSparseMatrix<S>) -> usize {
    echelon(m, &vec![0; m.n_cols]).rank()
}

/// `(rank of the columns with class 0, rank of the whole matrix)`.
///
/// Columns marked `true` in `first` are eliminated first, which yields the
/// rank of that column block as a by-product.
pub fn block_ranks<S: Scalar>(m: &RationalSparseMatrix<S>, first: &[bool]) -> Result<(usize, usize), Error> {
    if first.len() != m.n_cols {
        return Err(Error::DimensionMismatch(format!("{} column flags for {} columns", first.len(), m.n_cols)));
    }
    let class: Vec<u8> = first.iter().map(|&f| if f { 0 } else { 1 }).collect();
    let e = echelon(m, &class);
    Ok((e.per_class[0], e.rank()))
}

/// Dimension of the projection of `ker M` onto the columns marked `keep`.
///
/// Equals `#keep − rank(M) + rank(M restricted to the other columns)`.
pub fn projected_kernel_dim<S: Scalar>(m: &RationalSparseMatrix<S>, keep: &[bool]) -> Result<usize, Error> {
    let drop: Vec<bool> = keep.iter().map(|k| !k).collect();
    let (r_drop, r_all) = block_ranks(m, &drop)?;
    let n_keep = keep.iter().filter(|k| **k).count();
    Ok(n_keep + r_drop - r_all)
}

/// Basis of the null space; every vector is checked against `M` before
/// being returned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub n_cols: usize,
    pub vectors: Vec<SparseVector<BigRational>>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Back-substitution through the echelon rows with the given free values.
fn back_substitute(e: &Echelon, free: &BTreeMap<usize, BigRational>) -> BTreeMap<usize, BigRational> {
    let mut x = free.clone();
    for (col, row) in e.pivots.iter().rev() {
        let mut acc = BigRational::zero();
        let mut pivot = BigRational::zero();
        for (c, v) in row {
            if c == col {
                pivot = BigRational::from_integer(v.clone());
            } else if let Some(xc) = x.get(c) {
                acc += xc * BigRational::from_integer(v.clone());
            }
        }
        let value = -acc / pivot;
        if !value.is_zero() {
            x.insert(*col, value);
        }
    }
    x
}

pub fn kernel_basis<S: Scalar>(m: &RationalSparseMatrix<S>) -> KernelBasis {
    let e = echelon(m, &vec![0; m.n_cols]);
    let mut is_pivot = vec![false; m.n_cols];
    for (c, _) in &e.pivots {
        is_pivot[*c] = true;
    }
    let big = to_big_matrix(m);
    let vectors: Vec<_> = (0..m.n_cols)
        .filter(|&c| !is_pivot[c])
        .map(|f| {
            let free = BTreeMap::from([(f, BigRational::one())]);
            let v: SparseVector<BigRational> = back_substitute(&e, &free).into_iter().collect();
            assert!(big.mul_sparse(&v).iter().all(Zero::is_zero), "kernel self-check failed");
            v
        })
        .collect();
    KernelBasis { n_cols: m.n_cols, vectors }
}

fn to_big_matrix<S: Scalar>(m: &RationalSparseMatrix<S>) -> RationalSparseMatrix<BigRational> {
    RationalSparseMatrix {
        n_rows: m.n_rows,
        n_cols: m.n_cols,
        rows: m.rows.iter().map(|r| r.iter().map(|(c, v)| (*c, v.to_big())).collect()).collect(),
    }
}

/// Outcome of [`solve_or_none`], with the ranks that certify it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub solution: Option<Vec<BigRational>>,
    pub rank: usize,
    pub augmented_rank: usize,
}

/// Finds `x` with `M·x = v`, or certifies that none exists by
/// `rank(M) < rank([M|v])`. A returned `x` has been re-multiplied and
/// compared with `v`.
pub fn solve_or_none<S: Scalar>(m: &RationalSparseMatrix<S>, v: &[S]) -> Result<SolveOutcome, Error> {
    if v.len() != m.n_rows {
        return Err(Error::DimensionMismatch(format!("right-hand side of length {} for {} rows", v.len(), m.n_rows)));
    }
    let n = m.n_cols;
    let mut aug = to_big_matrix(m).widen(1);
    for (r, value) in v.iter().enumerate() {
        if !value.is_zero() {
            aug.rows[r].push((n, value.to_big()));
        }
    }
    let mut class = vec![0u8; n + 1];
    class[n] = 1;
    let e = echelon(&aug, &class);
    let rank = e.per_class[0];
    let augmented_rank = e.rank();
    if augmented_rank > rank {
        return Ok(SolveOutcome { solution: None, rank, augmented_rank });
    }
    // [M|v]·(x, -1) = 0 with every free coordinate of x set to zero
    let free = BTreeMap::from([(n, -BigRational::one())]);
    let sol = back_substitute(&e, &free);
    let x: Vec<BigRational> = (0..n).map(|c| sol.get(&c).cloned().unwrap_or_else(BigRational::zero)).collect();
    let check = to_big_matrix(m).mul_dense(&x)?;
    if check.iter().zip(v).any(|(a, b)| *a != b.to_big()) {
        return Err(Error::ResidualNonZero("solve_or_none self-check failed".into()));
    }
    Ok(SolveOutcome { solution: Some(x), rank, augmented_rank })
}

/// Canonical primitive integer basis of the row space (used by tests and
/// reports that need a basis-independent fingerprint).
pub fn row_space_basis<S: Scalar>(m: &RationalSparseMatrix<S>) -> Vec<Vec<(usize, BigInt)>> {
    let e = echelon(m, &vec![0; m.n_cols]);
    e.pivots
        .into_iter()
        .map(|(_, mut r)| {
            normalize_sign(&mut r);
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    fn dense(rows: &[&[Rational]]) -> RationalSparseMatrix<Rational> {
        RationalSparseMatrix::from_dense(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalSparseMatrix::<Rational>::identity(3)), 3);
        assert_eq!(rank(&dense(&[&[q(1, 1), q(2, 1)], &[q(2, 1), q(4, 1)]])), 1);
        assert_eq!(rank(&dense(&[&[q(1, 2), q(1, 3)], &[q(1, 4), q(1, 5)]])), 2);
        assert_eq!(rank(&RationalSparseMatrix::<Rational>::zeros(2, 3)), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&RationalSparseMatrix::<Rational>::zeros(2, 3));
        assert_eq!(k.dim(), 3);
        let k = kernel_basis(&dense(&[&[q(1, 1), q(-1, 1)]]));
        assert_eq!(k.dim(), 1);
        let v = &k.vectors[0];
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].1, v[1].1);
    }

    #[test]
    fn solve_examples() {
        let id = RationalSparseMatrix::<Rational>::identity(3);
        let v = vec![q(1, 2), q(-3, 1), q(0, 1)];
        let out = solve_or_none(&id, &v).unwrap();
        assert_eq!(out.solution.unwrap(), v);
        let m = dense(&[&[q(1, 1)], &[q(2, 1)]]);
        let out = solve_or_none(&m, &[q(1, 1), q(3, 1)]).unwrap();
        assert_eq!((out.solution, out.rank, out.augmented_rank), (None, 1, 2));
        let out = solve_or_none(&m, &[q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(out.solution.unwrap(), vec![q(1, 1)]);
    }

    #[test]
    fn projected_kernel() {
        // x0 + x2 = 0, x1 - x2 = 0: kernel spanned by (-1, 1, 1); projection on {0,1} is 1-dim
        let m = dense(&[&[q(1, 1), q(0, 1), q(1, 1)], &[q(0, 1), q(1, 1), q(-1, 1)]]);
        assert_eq!(projected_kernel_dim(&m, &[true, true, false]).unwrap(), 1);
        // x2 = 0 only: kernel projects onto all of {0,1}
        let m = dense(&[&[q(0, 1), q(0, 1), q(1, 1)]]);
        assert_eq!(projected_kernel_dim(&m, &[true, true, false]).unwrap(), 2);
        // x0 = x2: projection onto {0} is everything
        let m = dense(&[&[q(1, 1), q(0, 1), q(-1, 1)]]);
        assert_eq!(projected_kernel_dim(&m, &[true, false, false]).unwrap(), 1);
    }

    #[test]
    fn out_of_range_entries_are_rejected() {
        assert!(RationalSparseMatrix::<Rational>::from_triplets(1, 1, [(0, 1, q(1, 1))]).is_err());
        let mut m = RationalSparseMatrix::<Rational>::with_cols(2);
        assert!(m.push_row([(2, q(1, 1))]).is_err());
        m.push_row([(1, q(1, 1)), (1, q(-1, 1))]).unwrap();
        assert_eq!(m.nnz(), 0);
    }
}
