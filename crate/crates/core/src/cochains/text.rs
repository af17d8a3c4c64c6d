//! Canonical text form of a cochain.
//!
//! ```text
//! # algebra=virasoro module=trivial arity=3 degree=0
//! -2 0 2 -> -16/1
//! -1 0 1 -> -2/1
//! -1 1 t -> 3/2
//! ```
//!
//! One line per stored coefficient, sorted by key. The `t` after the indices
//! marks a central argument slot; a trailing `t` after the value marks the
//! `t`-coordinate of an adjoint Virasoro value. Lines starting with `#` other
//! than the header are comments.

use std::fmt::Write as _;

use super::{CochainKey, CochainShape, Component, HomogeneousCochain};
use crate::error::Error;
use crate::scalar::{format_fraction, parse_fraction, Scalar};

pub fn header(shape: &CochainShape) -> String {
    format!("# algebra={} module={} arity={} degree={}", shape.algebra, shape.module, shape.arity, shape.degree)
}

/// Coefficient lines without the header.
pub fn lines<S: Scalar>(psi: &HomogeneousCochain<S>) -> Vec<String> {
    psi.iter()
        .map(|(key, comp, v)| {
            let mut line = String::new();
            let _ = write!(line, "{key} -> {}", format_fraction(v));
            if comp == Component::Central {
                line.push_str(" t");
            }
            line
        })
        .collect()
}

pub fn to_text<S: Scalar>(psi: &HomogeneousCochain<S>) -> String {
    let mut out = header(psi.shape_ref());
    out.push('\n');
    for line in lines(psi) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn parse_header(line: &str) -> Result<CochainShape, Error> {
    let (mut algebra, mut module, mut arity, mut degree) = (None, None, None, None);
    for field in line.trim_start_matches('#').split_whitespace() {
        let (name, value) = field.split_once('=').ok_or_else(|| Error::Parse(format!("bad header field `{field}`")))?;
        match name {
            "algebra" => algebra = Some(value.parse()?),
            "module" => module = Some(value.parse()?),
            "arity" => arity = Some(value.parse().map_err(|_| Error::Parse(format!("bad arity `{value}`")))?),
            "degree" => degree = Some(value.parse().map_err(|_| Error::Parse(format!("bad degree `{value}`")))?),
            _ => return Err(Error::Parse(format!("unknown header field `{name}`"))),
        }
    }
    match (algebra, module, arity, degree) {
        (Some(a), Some(m), Some(q), Some(d)) => CochainShape::new(a, m, q, d),
        _ => Err(Error::Parse("header needs algebra, module, arity and degree".into())),
    }
}

fn parse_line<S: Scalar>(line: &str) -> Result<(CochainKey, Component, S), Error> {
    let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::Parse(format!("missing `->` in `{line}`")))?;
    let mut witt = Vec::new();
    let mut central = false;
    for tok in lhs.split_whitespace() {
        if tok == "t" {
            if central {
                return Err(Error::Parse(format!("two central slots in `{line}`")));
            }
            central = true;
        } else if central {
            return Err(Error::Parse(format!("central slot must come last in `{line}`")));
        } else {
            witt.push(tok.parse::<i64>().map_err(|_| Error::Parse(format!("bad index `{tok}`")))?);
        }
    }
    let key = CochainKey::new(&witt, central).ok_or_else(|| Error::Parse(format!("indices not strictly ascending in `{line}`")))?;
    let mut rhs = rhs.split_whitespace();
    let value = parse_fraction::<S>(rhs.next().ok_or_else(|| Error::Parse(format!("missing value in `{line}`")))?)?;
    let comp = match rhs.next() {
        None => Component::Main,
        Some("t") => Component::Central,
        Some(other) => return Err(Error::Parse(format!("unexpected `{other}` in `{line}`"))),
    };
    if rhs.next().is_some() {
        return Err(Error::Parse(format!("trailing tokens in `{line}`")));
    }
    Ok((key, comp, value))
}

pub fn from_text<S: Scalar>(text: &str) -> Result<HomogeneousCochain<S>, Error> {
    let mut shape = None;
    let mut psi = None::<HomogeneousCochain<S>>;
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if shape.is_none() && line.contains("algebra=") {
                let s = parse_header(line)?;
                shape = Some(s);
                psi = Some(HomogeneousCochain::zero(s));
            }
            continue;
        }
        let psi = psi.as_mut().ok_or_else(|| Error::Parse("coefficient line before header".into()))?;
        let (key, comp, value) = parse_line::<S>(line)?;
        if !psi.coefficient_is_zero(&key, comp) {
            return Err(Error::Parse(format!("duplicate key `{key}`")));
        }
        psi.set(key, comp, value)?;
    }
    psi.ok_or_else(|| Error::Parse("missing header".into()))
}

impl<S: Scalar> HomogeneousCochain<S> {
    fn coefficient_is_zero(&self, key: &CochainKey, comp: Component) -> bool {
        !self.coeffs.contains_key(&(*key, comp))
    }
}
