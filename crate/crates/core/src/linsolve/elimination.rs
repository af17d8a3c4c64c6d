//! Integer row elimination with gcd content removal.
//!
//! Rows are scaled to primitive integer vectors, and an update
//! `row ← (p/g)·row − (a/g)·pivot` keeps everything integral. The engine runs
//! on `i64` with checked arithmetic first and restarts on `BigInt` if any
//! intermediate overflows.
//!
//! Pivot choice: among the columns of the lowest unfinished class, the one
//! with the fewest active rows (ties: lowest column), then the shortest row
//! in that column (ties: lowest row).

use std::collections::BTreeSet;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) trait Ring: Clone + Debug + Eq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_one(&self) -> bool;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other).filter(|x| *x != i64::MIN)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other).filter(|x| *x != i64::MIN)
    }
    fn gcd(&self, other: &Self) -> Self {
        // i64::MIN is never produced, so gcd cannot overflow
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64().filter(|x| *x != i64::MIN)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) type IntRow = Vec<(usize, BigInt)>;

/// Rows that were chosen as pivots, in elimination order. Each pivot row only
/// involves its pivot column and columns that are pivoted later or never.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    pub pivots: Vec<(usize, IntRow)>,
    /// Number of pivots per column class, in class order.
    pub per_class: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

struct Overflow;

fn primitive<R: Ring>(row: &mut [(usize, R)]) {
    let mut g = R::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

fn value_at<R: Ring>(row: &[(usize, R)], col: usize) -> Option<&R> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `(p/g)·row − (a/g)·pivot` with `p = pivot[col]`, `a = row[col]`; the result
/// no longer contains `col`.
fn combine<R: Ring>(row: &[(usize, R)], pivot: &[(usize, R)], col: usize) -> Result<Vec<(usize, R)>, Overflow> {
    let p = value_at(pivot, col).expect("pivot entry");
    let a = value_at(row, col).expect("row entry");
    let g = p.gcd(a);
    let (p, a) = (p.div_exact(&g), a.div_exact(&g));
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, row[i - 1].1.mul(&p).ok_or(Overflow)?)
        } else if cj < ci {
            j += 1;
            (cj, R::zero().sub(&pivot[j - 1].1.mul(&a).ok_or(Overflow)?).ok_or(Overflow)?)
        } else {
            i += 1;
            j += 1;
            let lhs = row[i - 1].1.mul(&p).ok_or(Overflow)?;
            let rhs = pivot[j - 1].1.mul(&a).ok_or(Overflow)?;
            (ci, lhs.sub(&rhs).ok_or(Overflow)?)
        };
        if c != col && !v.is_zero() {
            out.push((c, v));
        }
    }
    primitive(&mut out);
    Ok(out)
}

fn run<R: Ring>(rows: &[IntRow], n_cols: usize, class: &[u8]) -> Result<Echelon, Overflow> {
    let mut active: Vec<Option<Vec<(usize, R)>>> = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r = Vec::with_capacity(row.len());
        for (c, v) in row {
            r.push((*c, R::from_big(v).ok_or(Overflow)?));
        }
        active.push(if r.is_empty() { None } else { Some(r) });
    }
    let n_classes = class.iter().copied().max().map_or(1, |m| m as usize + 1);
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_cols];
    for (i, r) in active.iter().enumerate() {
        for (c, _) in r.iter().flatten() {
            col_rows[*c].insert(i);
        }
    }
    // (class, count, col) for every column with a non-zero count
    let mut queue: BTreeSet<(u8, usize, usize)> =
        (0..n_cols).filter(|&c| !col_rows[c].is_empty()).map(|c| (class[c], col_rows[c].len(), c)).collect();

    let mut pivots = Vec::new();
    let mut per_class = vec![0; n_classes];
    while let Some(&(cls, _, col)) = queue.iter().next() {
        let row_idx = *col_rows[col]
            .iter()
            .min_by_key(|&&r| (active[r].as_ref().map_or(usize::MAX, |v| v.len()), r))
            .expect("non-empty column");
        let pivot = active[row_idx].take().expect("active pivot row");
        for (c, _) in &pivot {
            queue.remove(&(class[*c], col_rows[*c].len(), *c));
            col_rows[*c].remove(&row_idx);
        }
        let targets: Vec<usize> = col_rows[col].iter().copied().collect();
        for r in targets {
            let old = active[r].take().expect("active row");
            let new = combine(&old, &pivot, col)?;
            let touched: BTreeSet<usize> = old.iter().chain(new.iter()).map(|(c, _)| *c).collect();
            for &c in &touched {
                queue.remove(&(class[c], col_rows[c].len(), c));
            }
            for (c, _) in &old {
                col_rows[*c].remove(&r);
            }
            for (c, _) in &new {
                col_rows[*c].insert(r);
            }
            for &c in &touched {
                if !col_rows[c].is_empty() {
                    queue.insert((class[c], col_rows[c].len(), c));
                }
            }
            active[r] = if new.is_empty() { None } else { Some(new) };
        }
        for (c, _) in &pivot {
            if !col_rows[*c].is_empty() {
                queue.insert((class[*c], col_rows[*c].len(), *c));
            }
        }
        per_class[cls as usize] += 1;
        pivots.push((col, pivot.iter().map(|(c, v)| (*c, v.to_big())).collect()));
    }
    Ok(Echelon { pivots, per_class })
}

/// Eliminates primitive integer rows. Columns with a lower `class` are
/// exhausted before any column of a higher class is used as a pivot.
pub(crate) fn eliminate(rows: &[IntRow], n_cols: usize, class: &[u8]) -> Echelon {
    debug_assert_eq!(class.len(), n_cols);
    match run::<i64>(rows, n_cols, class) {
        Ok(e) => e,
        Err(Overflow) => match run::<BigInt>(rows, n_cols, class) {
            Ok(e) => e,
            Err(Overflow) => unreachable!("BigInt arithmetic does not overflow"),
        },
    }
}

/// Sign-normalized so the first entry is positive (makes outputs canonical).
pub(crate) fn normalize_sign(row: &mut IntRow) {
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -v.clone();
        }
    }
}
