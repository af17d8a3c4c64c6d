//! Matrix Market coordinate dump with exact entries.
//!
//! The field name `rational` is not part of the Matrix Market standard; each
//! entry is written as `row col numerator/denominator` with 1-based indices.

use std::fmt::Write as _;

use super::RationalSparseMatrix;
use crate::error::Error;
use crate::scalar::{format_fraction, parse_fraction, Scalar};

const BANNER: &str = "%%MatrixMarket matrix coordinate rational general";

pub fn to_matrix_market<S: Scalar>(m: &RationalSparseMatrix<S>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{BANNER}");
    let _ = writeln!(out, "{} {} {}", m.n_rows(), m.n_cols(), m.nnz());
    for (i, j, v) in m.entries() {
        let _ = writeln!(out, "{} {} {}", i + 1, j + 1, format_fraction(v));
    }
    out
}

pub fn from_matrix_market<S: Scalar>(text: &str) -> Result<RationalSparseMatrix<S>, Error> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let banner = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    if !banner.eq_ignore_ascii_case(BANNER) {
        return Err(Error::Parse(format!("unsupported banner `{banner}`")));
    }
    let mut lines = lines.filter(|l| !l.starts_with('%'));
    let size = lines.next().ok_or_else(|| Error::Parse("missing size line".into()))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad size `{t}`"))))
        .collect::<Result<_, _>>()?;
    let [n_rows, n_cols, nnz] = dims[..] else {
        return Err(Error::Parse(format!("size line needs three numbers: `{size}`")));
    };
    let mut entries = Vec::with_capacity(nnz);
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [i, j, v] = toks[..] else {
            return Err(Error::Parse(format!("bad entry `{line}`")));
        };
        let index = |t: &str| -> Result<usize, Error> {
            match t.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(Error::Parse(format!("bad index `{t}`"))),
            }
        };
        entries.push((index(i)?, index(j)?, parse_fraction::<S>(v)?));
    }
    if entries.len() != nnz {
        return Err(Error::Parse(format!("expected {nnz} entries, found {}", entries.len())));
    }
    RationalSparseMatrix::from_triplets(n_rows, n_cols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn round_trip() {
        let m = RationalSparseMatrix::from_triplets(
            2,
            3,
            [(0, 0, Rational::from_frac(1, 2)), (1, 2, Rational::from_int(-4))],
        )
        .unwrap();
        let text = to_matrix_market(&m);
        assert_eq!(text, "%%MatrixMarket matrix coordinate rational general\n2 3 2\n1 1 1/2\n2 3 -4/1\n");
        assert_eq!(from_matrix_market::<Rational>(&text).unwrap(), m);
        assert!(from_matrix_market::<Rational>("%%MatrixMarket matrix coordinate real general\n1 1 0\n").is_err());
    }
}
