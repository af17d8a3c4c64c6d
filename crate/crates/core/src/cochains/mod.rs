//! Alternating homogeneous cochains and the Chevalley–Eilenberg coboundary
//!
//! ```text
//! (δψ)(x_1..x_{q+1}) = Σ_{i<j} (-1)^{i+j+1} ψ([x_i,x_j], x_1..x̂_i..x̂_j..x_{q+1})
//!                    + Σ_i (-1)^i x_i · ψ(x_1..x̂_i..x_{q+1})
//! ```
//!
//! A q-cochain homogeneous of degree `d` sends a tuple of total degree `s` into
//! the degree `s + d` piece of the module, so it is determined by one rational
//! per canonical key and value [`Component`]. Storage only ever holds keys
//! that satisfy this support law.

pub mod coefficient_form;
mod key;
pub mod text;

use std::collections::BTreeMap;

pub use key::{CochainKey, Component, MAX_SLOTS};

use crate::algebra::{Algebra, Combination, Generator, ModuleElement, ModuleTag};
use crate::error::Error;
use crate::scalar::Scalar;

/// Everything about a cochain except its coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CochainShape {
    pub algebra: Algebra,
    pub module: ModuleTag,
    pub arity: usize,
    pub degree: i64,
}

const MAIN: &[Component] = &[Component::Main];
const BOTH: &[Component] = &[Component::Main, Component::Central];

impl CochainShape {
    pub fn new(algebra: Algebra, module: ModuleTag, arity: usize, degree: i64) -> Result<Self, Error> {
        if arity > MAX_SLOTS {
            return Err(Error::ArityTooLarge(arity));
        }
        Ok(CochainShape { algebra, module, arity, degree })
    }

    /// Shape of `δψ`.
    pub fn raised(&self) -> Result<Self, Error> {
        CochainShape::new(self.algebra, self.module, self.arity + 1, self.degree)
    }

    /// Shape of the cochains whose coboundaries land in this shape.
    pub fn lowered(&self) -> Option<Self> {
        self.arity.checked_sub(1).map(|arity| CochainShape { arity, ..*self })
    }

    /// Value components a key may carry under the degree-`d` support law.
    pub fn components(&self, key: &CochainKey) -> &'static [Component] {
        self.components_at(key.degree())
    }

    /// Components of the module piece reached from arguments of total degree `s`.
    pub fn components_at(&self, s: i64) -> &'static [Component] {
        let target = s + self.degree;
        match self.module {
            ModuleTag::Trivial if target == 0 => MAIN,
            ModuleTag::Trivial => &[],
            ModuleTag::Adjoint if self.algebra.has_center() && target == 0 => BOTH,
            ModuleTag::Adjoint | ModuleTag::ProjectedWitt => MAIN,
        }
    }

    /// Structural validity of a key for this shape (ignores the support law).
    pub fn accepts_key(&self, key: &CochainKey) -> bool {
        key.arity() == self.arity && (!key.has_central_slot() || self.algebra.has_center())
    }

    fn check_args(&self, args: &[Generator]) -> Result<(), Error> {
        if args.len() != self.arity {
            return Err(Error::WrongArity { expected: self.arity, got: args.len() });
        }
        args.iter().try_for_each(|g| self.algebra.check(*g))
    }

    /// Assembles a module element of the piece of degree `s + d`.
    fn element<S: Scalar>(&self, s: i64, main: S, central: S) -> ModuleElement<S> {
        match self.module {
            ModuleTag::Trivial => ModuleElement::Scalar(main),
            ModuleTag::Adjoint | ModuleTag::ProjectedWitt => {
                let mut v = Combination::single(Generator::Witt(s + self.degree), main);
                v.add_term(Generator::Central, central);
                ModuleElement::Vector(v)
            }
        }
    }

    /// Every `(key, component)` coordinate with all `|index| <= window`, in
    /// canonical order (`Central` after `Main` within a key).
    pub fn coordinates(&self, window: u32) -> Vec<(CochainKey, Component)> {
        let mut out = Vec::new();
        let w = i64::from(window);
        let mut push_all = |witt: &[i64], central: bool| {
            let key = CochainKey::new(witt, central).expect("ascending by construction");
            for &c in self.components(&key) {
                out.push((key, c));
            }
        };
        let mut buf = Vec::with_capacity(MAX_SLOTS);
        let central_slots: &[bool] = if self.algebra.has_center() && self.arity > 0 { &[false, true] } else { &[false] };
        // collect (witt, central) pairs first so the final order is canonical
        let mut keys: Vec<(Vec<i64>, bool)> = Vec::new();
        for &central in central_slots {
            let len = self.arity - usize::from(central);
            for_each_ascending(-w, w, len, &mut buf, &mut |witt| keys.push((witt.to_vec(), central)));
        }
        keys.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        for (witt, central) in keys {
            push_all(&witt, central);
        }
        out
    }
}

/// Calls `f` with every strictly ascending tuple of `len` integers in `[lo, hi]`,
/// in lexicographic order.
pub(crate) fn for_each_ascending(lo: i64, hi: i64, len: usize, buf: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if len == 0 {
        f(buf);
        return;
    }
    let start = buf.last().map_or(lo, |&l| l + 1);
    for v in start..=hi {
        if hi - v + 1 < len as i64 {
            break;
        }
        buf.push(v);
        for_each_ascending(lo, hi, len - 1, buf, f);
        buf.pop();
    }
}

/// Read access to a cochain's coefficients on canonical keys.
///
/// Implemented by stored cochains and by closed-form cocycles that compute
/// their coefficients on demand.
pub trait CochainView<S: Scalar> {
    fn shape(&self) -> CochainShape;

    /// Coefficient at a canonical key; zero for keys outside the support.
    fn coefficient(&self, key: &CochainKey, component: Component) -> S;
}

impl<S: Scalar, T: CochainView<S> + ?Sized> CochainView<S> for &T {
    fn shape(&self) -> CochainShape {
        (**self).shape()
    }

    fn coefficient(&self, key: &CochainKey, component: Component) -> S {
        (**self).coefficient(key, component)
    }
}

/// A cochain with finitely many stored non-zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousCochain<S> {
    shape: CochainShape,
    coeffs: BTreeMap<(CochainKey, Component), S>,
}

impl<S: Scalar> HomogeneousCochain<S> {
    pub fn zero(shape: CochainShape) -> Self {
        HomogeneousCochain { shape, coeffs: BTreeMap::new() }
    }

    pub fn shape_ref(&self) -> &CochainShape {
        &self.shape
    }

    /// Sets a canonical coefficient. Zero removes the entry.
    pub fn set(&mut self, key: CochainKey, component: Component, value: S) -> Result<(), Error> {
        if !self.shape.accepts_key(&key) {
            return Err(Error::ShapeMismatch(format!("key ({key}) does not fit arity {} over {}", self.shape.arity, self.shape.algebra)));
        }
        if !self.shape.components(&key).contains(&component) {
            return Err(Error::SupportViolation { key: format!("{key} [{component:?}]"), degree: self.shape.degree });
        }
        if value.is_zero() {
            self.coeffs.remove(&(key, component));
        } else {
            self.coeffs.insert((key, component), value);
        }
        Ok(())
    }

    /// Sets the `Main` value at an arbitrary argument order, applying the
    /// permutation sign.
    pub fn set_value(&mut self, args: &[Generator], value: S) -> Result<(), Error> {
        self.shape.check_args(args)?;
        match CochainKey::canonicalize(args) {
            Some((key, sign)) => self.set(key, Component::Main, if sign < 0 { -value } else { value }),
            None if value.is_zero() => Ok(()),
            None => Err(Error::SupportViolation { key: format!("{args:?} (repeated argument)"), degree: self.shape.degree }),
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CochainKey, Component, &S)> + '_ {
        self.coeffs.iter().map(|((k, c), v)| (k, *c, v))
    }

    fn same_shape(&self, other: &Self) -> Result<(), Error> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", self.shape, other.shape)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for ((k, c), v) in &other.coeffs {
            let sum = out.coeffs.get(&(*k, *c)).cloned().unwrap_or_else(S::zero) + v.clone();
            if sum.is_zero() {
                out.coeffs.remove(&(*k, *c));
            } else {
                out.coeffs.insert((*k, *c), sum);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, r: &S) -> Self {
        if r.is_zero() {
            return Self::zero(self.shape);
        }
        HomogeneousCochain {
            shape: self.shape,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.clone() * r.clone())).collect(),
        }
    }

    /// Copies the coefficients of any view on all keys with `|index| <= window`.
    pub fn materialize<V: CochainView<S>>(view: &V, window: u32) -> Self {
        let shape = view.shape();
        let mut out = Self::zero(shape);
        for (key, comp) in shape.coordinates(window) {
            let v = view.coefficient(&key, comp);
            if !v.is_zero() {
                out.coeffs.insert((key, comp), v);
            }
        }
        out
    }

    /// Drops every coefficient with an index outside `|index| <= window`.
    pub fn restrict(&self, window: u32) -> Self {
        HomogeneousCochain {
            shape: self.shape,
            coeffs: self.coeffs.iter().filter(|((k, _), _)| k.reach() <= i64::from(window)).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Largest `|index|` among stored keys.
    pub fn reach(&self) -> i64 {
        self.coeffs.keys().map(|(k, _)| k.reach()).max().unwrap_or(0)
    }
}

impl<S: Scalar> CochainView<S> for HomogeneousCochain<S> {
    fn shape(&self) -> CochainShape {
        self.shape
    }

    fn coefficient(&self, key: &CochainKey, component: Component) -> S {
        self.coeffs.get(&(*key, component)).cloned().unwrap_or_else(S::zero)
    }
}

/// Value of `ψ(args)`.
pub fn evaluate<S: Scalar, V: CochainView<S> + ?Sized>(psi: &V, args: &[Generator]) -> Result<ModuleElement<S>, Error> {
    let shape = psi.shape();
    shape.check_args(args)?;
    let s: i64 = args.iter().map(|g| g.degree()).sum();
    let Some((key, sign)) = CochainKey::canonicalize(args) else {
        return Ok(shape.element(s, S::zero(), S::zero()));
    };
    let signed = |v: S| if sign < 0 { -v } else { v };
    let mut main = S::zero();
    let mut central = S::zero();
    for &c in shape.components(&key) {
        match c {
            Component::Main => main = signed(psi.coefficient(&key, c)),
            Component::Central => central = signed(psi.coefficient(&key, c)),
        }
    }
    Ok(shape.element(s, main, central))
}

/// Scalar value of a trivial-module cochain.
pub fn evaluate_scalar<S: Scalar, V: CochainView<S> + ?Sized>(psi: &V, args: &[Generator]) -> Result<S, Error> {
    match evaluate(psi, args)? {
        ModuleElement::Scalar(s) => Ok(s),
        ModuleElement::Vector(_) => Err(Error::ModuleMismatch { module: ModuleTag::Trivial }),
    }
}

/// One term of the coboundary expansion: `factor · ψ(key)[input]` contributes
/// to the `output` component of `(δψ)(args)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryTerm<S> {
    pub key: CochainKey,
    pub input: Component,
    pub output: Component,
    pub factor: S,
}

/// Expands `(δψ)(args)` into coefficient terms for a cochain of shape `shape`
/// (`args.len() == shape.arity + 1`, generators already validated).
///
/// This is the single implementation of the coboundary formula; evaluation
/// and matrix assembly both go through it.
pub fn expand_coboundary<S: Scalar>(shape: &CochainShape, args: &[Generator], emit: &mut dyn FnMut(CoboundaryTerm<S>)) {
    let algebra = shape.algebra;
    let n = args.len();
    let mut rest: Vec<Generator> = Vec::with_capacity(n);

    // bracket terms
    for a in 0..n {
        for b in a + 1..n {
            let sign = if (a + b + 1) % 2 == 0 { 1 } else { -1 };
            let (witt, central) = algebra.bracket_parts::<S>(args[a], args[b]);
            let mut push = |head: Generator, c: S| {
                rest.clear();
                rest.push(head);
                rest.extend(args.iter().enumerate().filter(|(k, _)| *k != a && *k != b).map(|(_, g)| *g));
                if let Some((key, s)) = CochainKey::canonicalize(&rest) {
                    let factor = if sign * s > 0 { c } else { -c };
                    for &comp in shape.components(&key) {
                        emit(CoboundaryTerm { key, input: comp, output: comp, factor: factor.clone() });
                    }
                }
            };
            if let Some((k, c)) = witt {
                push(Generator::Witt(k), c);
            }
            if let Some(c) = central {
                push(Generator::Central, c);
            }
        }
    }

    if shape.module == ModuleTag::Trivial {
        return;
    }

    // module-action terms: (-1)^i with 1-based i
    for a in 0..n {
        let Generator::Witt(x) = args[a] else { continue };
        let sign = if a % 2 == 0 { -1 } else { 1 };
        rest.clear();
        rest.extend(args.iter().enumerate().filter(|(k, _)| *k != a).map(|(_, g)| *g));
        let Some((key, s)) = CochainKey::canonicalize(&rest) else { continue };
        let value_degree = key.degree() + shape.degree;
        for &comp in shape.components(&key) {
            if comp == Component::Central {
                // x · t = 0 in every module
                continue;
            }
            let act_algebra = match shape.module {
                ModuleTag::ProjectedWitt => Algebra::Witt,
                _ => algebra,
            };
            let (witt, central) = act_algebra.bracket_parts::<S>(Generator::Witt(x), Generator::Witt(value_degree));
            let oriented = |c: S| if sign * s > 0 { c } else { -c };
            if let Some((_, c)) = witt {
                emit(CoboundaryTerm { key, input: comp, output: Component::Main, factor: oriented(c) });
            }
            if let Some(c) = central {
                emit(CoboundaryTerm { key, input: comp, output: Component::Central, factor: oriented(c) });
            }
        }
    }
}

/// `(δψ)(args)`, evaluated exactly from the coefficients of `psi`.
pub fn coboundary_at<S: Scalar, V: CochainView<S> + ?Sized>(psi: &V, args: &[Generator]) -> Result<ModuleElement<S>, Error> {
    let shape = psi.shape();
    let raised = shape.raised()?;
    raised.check_args(args)?;
    let s: i64 = args.iter().map(|g| g.degree()).sum();
    if CochainKey::canonicalize(args).is_none() {
        return Ok(raised.element(s, S::zero(), S::zero()));
    }
    let mut main = S::zero();
    let mut central = S::zero();
    expand_coboundary::<S>(&shape, args, &mut |t| {
        let v = psi.coefficient(&t.key, t.input);
        if v.is_zero() {
            return;
        }
        let contrib = t.factor * v;
        match t.output {
            Component::Main => main = main.clone() + contrib,
            Component::Central => central = central.clone() + contrib,
        }
    });
    Ok(raised.element(s, main, central))
}

/// `δψ` on every key with `|index| <= window`.
pub fn coboundary<S: Scalar, V: CochainView<S> + ?Sized>(psi: &V, window: u32) -> Result<HomogeneousCochain<S>, Error> {
    let raised = psi.shape().raised()?;
    let mut out = HomogeneousCochain::zero(raised);
    for (key, comp) in raised.coordinates(window) {
        if comp == Component::Central {
            continue; // filled together with Main below
        }
        let value = coboundary_at(psi, &key.generators())?;
        let (main, central) = split_value(&raised, &key, value);
        out.set(key, Component::Main, main)?;
        if raised.components(&key).contains(&Component::Central) {
            out.set(key, Component::Central, central)?;
        }
    }
    Ok(out)
}

/// Splits a value at canonical `key` back into `(main, central)` coordinates.
fn split_value<S: Scalar>(shape: &CochainShape, key: &CochainKey, value: ModuleElement<S>) -> (S, S) {
    match value {
        ModuleElement::Scalar(s) => (s, S::zero()),
        ModuleElement::Vector(v) => (v.coefficient(Generator::Witt(key.degree() + shape.degree)), v.coefficient(Generator::Central)),
    }
}

/// `δ₃ψ` on each tuple.
pub fn cocycle_residuals<S: Scalar, V: CochainView<S> + ?Sized>(
    psi: &V,
    tuples: &[[Generator; 4]],
) -> Result<Vec<ModuleElement<S>>, Error> {
    if psi.shape().arity != 3 {
        return Err(Error::WrongArity { expected: 3, got: psi.shape().arity });
    }
    tuples.iter().map(|t| coboundary_at(psi, t)).collect()
}

/// Keys referenced by `(δψ)(args)` all lie within `|index| <= window`.
pub fn is_admissible(shape: &CochainShape, args: &[Generator], window: u32) -> bool {
    let w = i64::from(window);
    let mut ok = true;
    expand_coboundary::<num_rational::Rational64>(shape, args, &mut |t| ok &= t.key.reach() <= w);
    ok
}

/// Every canonical `(q+1)`-tuple with `|index| <= window` whose coboundary row
/// only references in-window keys and can be non-zero.
pub fn admissible_tuples(shape: &CochainShape, window: u32) -> Vec<CochainKey> {
    let Ok(raised) = shape.raised() else { return Vec::new() };
    let mut out = Vec::new();
    let w = i64::from(window);
    let mut buf = Vec::with_capacity(MAX_SLOTS);
    let central_slots: &[bool] = if shape.algebra.has_center() { &[false, true] } else { &[false] };
    for &central in central_slots {
        let len = raised.arity - usize::from(central);
        for_each_ascending(-w, w, len, &mut buf, &mut |witt| {
            if shape.module == ModuleTag::Trivial && witt.iter().sum::<i64>() + shape.degree != 0 {
                return;
            }
            let key = CochainKey::new(witt, central).expect("ascending");
            if is_admissible(shape, &key.generators(), window) {
                out.push(key);
            }
        });
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_rational::Rational64;
    use Generator::{Central, Witt};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn trivial(alg: Algebra, arity: usize) -> CochainShape {
        CochainShape::new(alg, ModuleTag::Trivial, arity, 0).unwrap()
    }

    #[test]
    fn evaluation_applies_permutation_sign() {
        let mut psi = HomogeneousCochain::zero(trivial(Algebra::Witt, 3));
        psi.set_value(&[Witt(-1), Witt(1), Witt(0)], q(2)).unwrap();
        assert_eq!(evaluate_scalar(&psi, &[Witt(1), Witt(-1), Witt(0)]).unwrap(), q(-2));
        assert_eq!(evaluate_scalar(&psi, &[Witt(-1), Witt(1), Witt(0)]).unwrap(), q(2));
        assert_eq!(evaluate_scalar(&psi, &[Witt(3), Witt(3), Witt(0)]).unwrap(), q(0));
        assert_eq!(evaluate_scalar(&psi, &[Witt(1), Witt(2), Witt(3)]).unwrap(), q(0));
    }

    #[test]
    fn evaluation_errors() {
        let psi = HomogeneousCochain::<Rational>::zero(trivial(Algebra::Witt, 3));
        assert!(matches!(evaluate(&psi, &[Witt(1), Witt(2)]), Err(Error::WrongArity { .. })));
        assert!(matches!(evaluate(&psi, &[Witt(1), Witt(2), Central]), Err(Error::InvalidGenerator { .. })));
    }

    #[test]
    fn support_law_is_enforced_on_insert() {
        let mut psi = HomogeneousCochain::<Rational>::zero(trivial(Algebra::Witt, 3));
        let bad = CochainKey::new(&[1, 2, 3], false).unwrap();
        assert!(matches!(psi.set(bad, Component::Main, q(1)), Err(Error::SupportViolation { .. })));
        let central = CochainKey::new(&[-1, 1], true).unwrap();
        assert!(psi.set(central, Component::Main, q(1)).is_err());
        let mut vir = HomogeneousCochain::<Rational>::zero(trivial(Algebra::Virasoro, 3));
        vir.set(central, Component::Main, q(1)).unwrap();
        assert!(vir.set(central, Component::Central, q(1)).is_err());
    }

    #[test]
    fn central_two_cochain_coboundary() {
        // φ(e_i, t) = b_i with b_0 = 1: (δφ)(e_i, e_j, t) = (j - i) b_{i+j}
        let mut phi = HomogeneousCochain::zero(trivial(Algebra::Virasoro, 2));
        phi.set_value(&[Witt(0), Central], q(1)).unwrap();
        let v = coboundary_at(&phi, &[Witt(1), Witt(-1), Central]).unwrap();
        assert_eq!(v, ModuleElement::Scalar(q(-2)));
        for i in -4..=4 {
            let v = coboundary_at(&phi, &[Witt(i), Witt(-i), Central]).unwrap();
            assert_eq!(v, ModuleElement::Scalar(q(if i == 0 { 0 } else { -2 * i })));
        }
    }

    #[test]
    fn add_scale_prune() {
        let mut psi = HomogeneousCochain::zero(trivial(Algebra::Witt, 2));
        psi.set_value(&[Witt(3), Witt(-3)], q(5)).unwrap();
        let zero = psi.add(&psi.scale(&q(-1))).unwrap();
        assert!(zero.is_zero());
        let same = HomogeneousCochain::zero(psi.shape()).add(&psi).unwrap();
        assert_eq!(same, psi);
        let other = HomogeneousCochain::<Rational>::zero(trivial(Algebra::Witt, 3));
        assert!(matches!(psi.add(&other), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn adjoint_values_live_in_the_forced_piece() {
        let shape = CochainShape::new(Algebra::Virasoro, ModuleTag::Adjoint, 1, 0).unwrap();
        let mut phi = HomogeneousCochain::zero(shape);
        let k0 = CochainKey::new(&[0], false).unwrap();
        phi.set(k0, Component::Main, q(2)).unwrap();
        phi.set(k0, Component::Central, q(3)).unwrap();
        let k1 = CochainKey::new(&[1], false).unwrap();
        assert!(phi.set(k1, Component::Central, q(1)).is_err());
        let v = evaluate(&phi, &[Witt(0)]).unwrap();
        let mut expected = Combination::single(Witt(0), q(2));
        expected.add_term(Central, q(3));
        assert_eq!(v, ModuleElement::Vector(expected));
    }

    #[test]
    fn inner_derivation_is_a_cocycle() {
        // φ(x) = [e_0, x] is δ of a 0-cochain, hence δφ = 0
        let shape = CochainShape::new(Algebra::Witt, ModuleTag::Adjoint, 1, 0).unwrap();
        let mut phi = HomogeneousCochain::zero(shape);
        for n in -6..=6 {
            phi.set(CochainKey::new(&[n], false).unwrap(), Component::Main, q(n)).unwrap();
        }
        let dphi = coboundary(&phi, 3).unwrap();
        assert!(dphi.is_zero(), "{dphi:?}");
    }

    #[test]
    fn zero_cochain_has_zero_coboundary() {
        let zero = HomogeneousCochain::<Rational64>::zero(trivial(Algebra::Virasoro, 3));
        let r = cocycle_residuals(&zero, &[[Witt(-3), Witt(1), Witt(2), Witt(0)]]).unwrap();
        assert!(r[0].is_zero());
    }

    #[test]
    fn single_coefficient_is_not_a_cocycle() {
        let mut psi = HomogeneousCochain::zero(trivial(Algebra::Witt, 3));
        psi.set_value(&[Witt(-2), Witt(2), Witt(0)], q(1)).unwrap();
        let r = cocycle_residuals(&psi, &[[Witt(-3), Witt(1), Witt(2), Witt(0)]]).unwrap();
        // [e_{-3}, e_1] = 4 e_{-2} is the only bracket that reaches the support
        assert_eq!(r[0], ModuleElement::Scalar(q(4)));
    }

    #[test]
    fn coordinates_are_sorted_and_obey_support() {
        let shape = trivial(Algebra::Witt, 3);
        let cols = shape.coordinates(2);
        let keys: Vec<_> = cols.iter().map(|(k, _)| k.witt().to_vec()).collect();
        assert_eq!(keys, vec![vec![-2, 0, 2], vec![-1, 0, 1]]);
        let vir = CochainShape::new(Algebra::Virasoro, ModuleTag::Adjoint, 1, 0).unwrap();
        let cols = vir.coordinates(1);
        assert_eq!(cols.len(), 6); // e_-1, e_0 (main + t), e_1, t (main + t)
        assert!(cols.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn admissibility_checks_bracketed_indices() {
        let shape = trivial(Algebra::Witt, 3);
        assert!(is_admissible(&shape, &[Witt(-2), Witt(-1), Witt(1), Witt(2)], 3));
        // [e_{-2}, e_{-1}] = e_{-3} references key (-3, 1, 2)
        assert!(!is_admissible(&shape, &[Witt(-2), Witt(-1), Witt(1), Witt(2)], 2));
    }
}
