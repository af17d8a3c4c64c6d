//! Hand-expanded coefficient conditions for degree-0 trivial-module cochains
//! on the Virasoro algebra, written out term by term:
//!
//! ```text
//! ψ_{i,j,k} = ψ(e_i,e_j,e_k)    c_{i,j} = ψ(e_i,e_j,t)
//! φ_{i,j}   = φ(e_i,e_j)        b_i     = φ(e_i,t)
//! ```
//!
//! These deliberately do not go through [`super::expand_coboundary`]; tests
//! compare the two routes. Setting every `α` to zero gives the Witt versions.

use crate::algebra::virasoro_alpha;
use crate::scalar::Scalar;

fn delta<S: Scalar>(a: i64, b: i64) -> S {
    if a == b {
        S::one()
    } else {
        S::zero()
    }
}

fn alpha<S: Scalar>(n: i64) -> S {
    virasoro_alpha(n, -n)
}

fn int<S: Scalar>(n: i64) -> S {
    S::from_int(n)
}

/// `(δψ)(e_i,e_j,e_k,e_l)` for a 3-cochain given by `psi` and `c`
/// (both alternating, callable in any index order).
pub fn cocycle1<S: Scalar>(
    psi: &dyn Fn(i64, i64, i64) -> S,
    c: &dyn Fn(i64, i64) -> S,
    [i, j, k, l]: [i64; 4],
) -> S {
    int::<S>(j - i) * psi(i + j, k, l) - int::<S>(k - i) * psi(i + k, j, l) + int::<S>(l - i) * psi(i + l, j, k)
        + int::<S>(k - j) * psi(j + k, i, l)
        - int::<S>(l - j) * psi(l + j, i, k)
        + int::<S>(l - k) * psi(l + k, i, j)
        + alpha::<S>(i) * delta::<S>(i, -j) * c(k, l)
        - alpha::<S>(i) * delta::<S>(i, -k) * c(j, l)
        + alpha::<S>(i) * delta::<S>(i, -l) * c(j, k)
        + alpha::<S>(j) * delta::<S>(j, -k) * c(i, l)
        - alpha::<S>(j) * delta::<S>(j, -l) * c(i, k)
        + alpha::<S>(k) * delta::<S>(k, -l) * c(i, j)
}

/// `(δψ)(e_i,e_j,e_k,t)`.
pub fn cocycle2<S: Scalar>(c: &dyn Fn(i64, i64) -> S, [i, j, k]: [i64; 3]) -> S {
    int::<S>(j - i) * c(i + j, k) - int::<S>(k - i) * c(i + k, j) + int::<S>(k - j) * c(j + k, i)
}

/// `(δφ)(e_i,e_j,e_k)` for a 2-cochain given by `phi` and `b`.
pub fn coboundary1<S: Scalar>(phi: &dyn Fn(i64, i64) -> S, b: &dyn Fn(i64) -> S, [i, j, k]: [i64; 3]) -> S {
    int::<S>(j - i) * phi(i + j, k) - int::<S>(k - i) * phi(i + k, j) + int::<S>(k - j) * phi(j + k, i)
        - alpha::<S>(i) * delta::<S>(i, -j) * b(k)
        + alpha::<S>(i) * delta::<S>(i, -k) * b(j)
        - alpha::<S>(j) * delta::<S>(j, -k) * b(i)
}

/// `(δφ)(e_i,e_j,t)`.
pub fn coboundary2<S: Scalar>(b: &dyn Fn(i64) -> S, [i, j]: [i64; 2]) -> S {
    int::<S>(j - i) * b(i + j)
}
