//! The Witt algebra `W` with basis `e_n` and bracket `[e_n, e_m] = (m - n) e_{n+m}`,
//! and its central extension, the Virasoro algebra `V`, with basis `ê_n, t`:
//!
//! ```text
//! [ê_n, ê_m] = (m - n) ê_{n+m} + α(n, m) t,     [ê_n, t] = [t, t] = 0,
//! α(n, m)    = -(n³ - n)/12 · δ_{n+m,0}.
//! ```
//!
//! The central element is a distinguished [`Generator`] so both algebras share
//! one bracket interface.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::Scalar;

/// A basis element. Orders Witt generators by index, the central element last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    Witt(i64),
    Central,
}

impl Generator {
    pub fn degree(self) -> i64 {
        match self {
            Generator::Witt(n) => n,
            Generator::Central => 0,
        }
    }

    pub fn is_central(self) -> bool {
        matches!(self, Generator::Central)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Witt(n) => write!(f, "e_{n}"),
            Generator::Central => write!(f, "t"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Witt,
    Virasoro,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Witt => "witt",
            Algebra::Virasoro => "virasoro",
        })
    }
}

impl std::str::FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "witt" | "W" => Ok(Algebra::Witt),
            "virasoro" | "V" => Ok(Algebra::Virasoro),
            _ => Err(Error::Parse(format!("unknown algebra {s:?}"))),
        }
    }
}

/// Module the cochains take values in.
///
/// `ProjectedWitt` is `W` viewed as a `V`-module through `V -> W`
/// (the central element acts by zero). Over `W` itself it coincides with
/// the adjoint module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleTag {
    Trivial,
    Adjoint,
    ProjectedWitt,
}

impl fmt::Display for ModuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleTag::Trivial => "trivial",
            ModuleTag::Adjoint => "adjoint",
            ModuleTag::ProjectedWitt => "projected-witt",
        })
    }
}

impl std::str::FromStr for ModuleTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "trivial" | "K" => Ok(ModuleTag::Trivial),
            "adjoint" => Ok(ModuleTag::Adjoint),
            "projected-witt" | "witt" => Ok(ModuleTag::ProjectedWitt),
            _ => Err(Error::Parse(format!("unknown module {s:?}"))),
        }
    }
}

/// Sparse linear combination of generators, kept sorted, zeros pruned.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Combination<S> {
    terms: BTreeMap<Generator, S>,
}

impl<S: Scalar> Default for Combination<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Combination<S> {
    pub fn zero() -> Self {
        Combination { terms: BTreeMap::new() }
    }

    pub fn single(g: Generator, c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(g, c);
        out
    }

    pub fn add_term(&mut self, g: Generator, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn coefficient(&self, g: Generator) -> S {
        self.terms.get(&g).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Generator, &S)> + '_ {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn scale(&self, r: &S) -> Self {
        let mut out = Self::zero();
        for (g, c) in self.iter() {
            out.add_term(g, c.clone() * r.clone());
        }
        out
    }
}

impl<S: Scalar> Add for Combination<S> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (g, c) in rhs.terms {
            self.add_term(g, c);
        }
        self
    }
}

impl<S: Scalar> Neg for Combination<S> {
    type Output = Self;

    fn neg(self) -> Self {
        Combination { terms: self.terms.into_iter().map(|(g, c)| (g, -c)).collect() }
    }
}

impl<S: Scalar> fmt::Display for Combination<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (g, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·{g}")?;
        }
        Ok(())
    }
}

/// The Virasoro 2-cocycle `α(n, m) = -(n³ - n)/12 · δ_{n+m,0}`.
pub fn virasoro_alpha<S: Scalar>(n: i64, m: i64) -> S {
    if n + m != 0 {
        return S::zero();
    }
    let n = S::from_int(n);
    (n.clone() * n.clone() * n.clone() - n) / S::from_int(-12)
}

/// Structure constants of a Lie algebra with a distinguished homogeneous basis.
///
/// Only [`Algebra`] is provided; the seam exists so property checks can be run
/// against deliberately broken brackets.
pub trait StructureConstants<S: Scalar> {
    fn contains(&self, g: Generator) -> bool;

    fn bracket(&self, x: Generator, y: Generator) -> Result<Combination<S>, Error>;

    /// Basis elements with `|index| <= window`, central element last.
    fn generators(&self, window: u32) -> Vec<Generator>;
}

impl Algebra {
    pub fn has_center(self) -> bool {
        matches!(self, Algebra::Virasoro)
    }

    pub fn check(self, g: Generator) -> Result<(), Error> {
        if g.is_central() && !self.has_center() {
            Err(Error::InvalidGenerator { algebra: self, generator: g })
        } else {
            Ok(())
        }
    }

    /// Bracket split into its Witt part and its central part, without allocation.
    /// Callers must have validated the generators.
    pub(crate) fn bracket_parts<S: Scalar>(self, x: Generator, y: Generator) -> (Option<(i64, S)>, Option<S>) {
        match (x, y) {
            (Generator::Witt(n), Generator::Witt(m)) => {
                let witt = (m != n).then(|| (n + m, S::from_int(m - n)));
                let central = match self {
                    Algebra::Virasoro if n + m == 0 && (n * n * n - n) != 0 => Some(virasoro_alpha(n, m)),
                    _ => None,
                };
                (witt, central)
            }
            _ => (None, None),
        }
    }

    pub fn bracket<S: Scalar>(self, x: Generator, y: Generator) -> Result<Combination<S>, Error> {
        self.check(x)?;
        self.check(y)?;
        let (witt, central) = self.bracket_parts::<S>(x, y);
        let mut out = Combination::zero();
        if let Some((k, c)) = witt {
            out.add_term(Generator::Witt(k), c);
        }
        if let Some(c) = central {
            out.add_term(Generator::Central, c);
        }
        Ok(out)
    }

    /// Linear extension of the bracket in its first argument.
    pub fn bracket_combination<S: Scalar>(self, x: &Combination<S>, y: Generator) -> Result<Combination<S>, Error> {
        let mut out = Combination::zero();
        for (g, c) in x.iter() {
            out = out + self.bracket::<S>(g, y)?.scale(c);
        }
        Ok(out)
    }

    pub fn generators(self, window: u32) -> Vec<Generator> {
        let w = i64::from(window);
        let mut out: Vec<Generator> = (-w..=w).map(Generator::Witt).collect();
        if self.has_center() {
            out.push(Generator::Central);
        }
        out
    }
}

impl<S: Scalar> StructureConstants<S> for Algebra {
    fn contains(&self, g: Generator) -> bool {
        self.check(g).is_ok()
    }

    fn bracket(&self, x: Generator, y: Generator) -> Result<Combination<S>, Error> {
        Algebra::bracket(*self, x, y)
    }

    fn generators(&self, window: u32) -> Vec<Generator> {
        Algebra::generators(*self, window)
    }
}

/// An element of a module: a scalar for the trivial module, a combination of
/// generators for the adjoint and projected-Witt modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleElement<S> {
    Scalar(S),
    Vector(Combination<S>),
}

impl<S: Scalar> ModuleElement<S> {
    pub fn zero(module: ModuleTag) -> Self {
        match module {
            ModuleTag::Trivial => ModuleElement::Scalar(S::zero()),
            _ => ModuleElement::Vector(Combination::zero()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ModuleElement::Scalar(s) => s.is_zero(),
            ModuleElement::Vector(v) => v.is_zero(),
        }
    }

    pub(crate) fn check(&self, algebra: Algebra, module: ModuleTag) -> Result<(), Error> {
        let ok = match (module, self) {
            (ModuleTag::Trivial, ModuleElement::Scalar(_)) => true,
            (ModuleTag::Adjoint, ModuleElement::Vector(v)) => v.iter().all(|(g, _)| algebra.check(g).is_ok()),
            (ModuleTag::ProjectedWitt, ModuleElement::Vector(v)) => v.iter().all(|(g, _)| !g.is_central()),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ModuleMismatch { module })
        }
    }
}

impl<S: Scalar> Neg for ModuleElement<S> {
    type Output = Self;
    fn neg(self) -> Self {
        match self {
            ModuleElement::Scalar(s) => ModuleElement::Scalar(-s),
            ModuleElement::Vector(v) => ModuleElement::Vector(-v),
        }
    }
}

impl<S: Scalar> fmt::Display for ModuleElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleElement::Scalar(s) => write!(f, "{s}"),
            ModuleElement::Vector(v) => write!(f, "{v}"),
        }
    }
}

/// `x · v` for the chosen module.
pub fn module_action<S: Scalar>(
    algebra: Algebra,
    module: ModuleTag,
    x: Generator,
    v: &ModuleElement<S>,
) -> Result<ModuleElement<S>, Error> {
    algebra.check(x)?;
    v.check(algebra, module)?;
    Ok(match (module, v) {
        (ModuleTag::Trivial, _) => ModuleElement::Scalar(S::zero()),
        (ModuleTag::Adjoint, ModuleElement::Vector(v)) => {
            let mut out = Combination::zero();
            for (g, c) in v.iter() {
                out = out + algebra.bracket::<S>(x, g)?.scale(c);
            }
            ModuleElement::Vector(out)
        }
        (ModuleTag::ProjectedWitt, ModuleElement::Vector(v)) => {
            let mut out = Combination::zero();
            if !x.is_central() {
                for (g, c) in v.iter() {
                    out = out + Algebra::Witt.bracket::<S>(x, g)?.scale(c);
                }
            }
            ModuleElement::Vector(out)
        }
        _ => unreachable!("checked above"),
    })
}

/// One failure of the Jacobi identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation<S> {
    pub triple: [Generator; 3],
    pub value: Combination<S>,
}

/// Evaluates `[[x,y],z] + [[y,z],x] + [[z,x],y]` on every ordered triple of
/// basis elements with `|index| <= window`.
pub fn check_jacobi<S: Scalar, A: StructureConstants<S>>(algebra: &A, window: u32) -> Vec<JacobiViolation<S>> {
    let gens = algebra.generators(window);
    let nested = |x: Generator, y: Generator, z: Generator| -> Combination<S> {
        let inner = algebra.bracket(x, y).unwrap_or_default();
        let mut out = Combination::zero();
        for (g, c) in inner.iter() {
            out = out + algebra.bracket(g, z).unwrap_or_default().scale(c);
        }
        out
    };
    let mut violations = Vec::new();
    for &x in &gens {
        for &y in &gens {
            for &z in &gens {
                let value = nested(x, y, z) + nested(y, z, x) + nested(z, x, y);
                if !value.is_zero() {
                    violations.push(JacobiViolation { triple: [x, y, z], value });
                }
            }
        }
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_rational::Rational64;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    #[test]
    fn witt_brackets() {
        let b = Algebra::Witt.bracket::<Rational>(Generator::Witt(2), Generator::Witt(3)).unwrap();
        assert_eq!(b, Combination::single(Generator::Witt(5), q(1, 1)));
        for m in [-4, 3, 7] {
            let b = Algebra::Witt.bracket::<Rational>(Generator::Witt(0), Generator::Witt(m)).unwrap();
            assert_eq!(b, Combination::single(Generator::Witt(m), q(m, 1)));
        }
    }

    #[test]
    fn virasoro_bracket_has_central_term() {
        let b = Algebra::Virasoro.bracket::<Rational>(Generator::Witt(2), Generator::Witt(-2)).unwrap();
        let mut expected = Combination::single(Generator::Witt(0), q(-4, 1));
        expected.add_term(Generator::Central, q(-1, 2));
        assert_eq!(b, expected);
        assert_eq!(b.len(), 2);
        let z = Algebra::Virasoro.bracket::<Rational>(Generator::Witt(3), Generator::Central).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn central_generator_is_rejected_by_witt() {
        let err = Algebra::Witt.bracket::<Rational>(Generator::Central, Generator::Witt(1)).unwrap_err();
        assert!(matches!(err, Error::InvalidGenerator { .. }));
    }

    #[test]
    fn alpha_values() {
        assert_eq!(virasoro_alpha::<Rational>(1, -1), q(0, 1));
        assert_eq!(virasoro_alpha::<Rational>(2, -2), q(-1, 2));
        assert_eq!(virasoro_alpha::<Rational>(3, -2), q(0, 1));
        assert_eq!(virasoro_alpha::<Rational64>(-3, 3), Rational64::new(2, 1));
        for n in -9..=9 {
            for m in -9..=9 {
                assert_eq!(virasoro_alpha::<Rational>(n, m), -virasoro_alpha::<Rational>(m, n));
                if n + m != 0 || n.abs() <= 1 {
                    assert!(virasoro_alpha::<Rational>(n, m).is_zero());
                }
            }
        }
    }

    #[test]
    fn module_actions() {
        let k = module_action(Algebra::Witt, ModuleTag::Trivial, Generator::Witt(5), &ModuleElement::Scalar(q(3, 1))).unwrap();
        assert!(k.is_zero());
        let v = ModuleElement::Vector(Combination::single(Generator::Witt(7), q(1, 1)));
        let a = module_action(Algebra::Witt, ModuleTag::Adjoint, Generator::Witt(0), &v).unwrap();
        assert_eq!(a, ModuleElement::Vector(Combination::single(Generator::Witt(7), q(7, 1))));
        let t = ModuleElement::Vector(Combination::single(Generator::Central, q(1, 1)));
        let a = module_action(Algebra::Virasoro, ModuleTag::Adjoint, Generator::Witt(2), &t).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn projected_witt_drops_central_terms() {
        let v = ModuleElement::Vector(Combination::single(Generator::Witt(-2), q(1, 1)));
        let a = module_action(Algebra::Virasoro, ModuleTag::ProjectedWitt, Generator::Witt(2), &v).unwrap();
        assert_eq!(a, ModuleElement::Vector(Combination::single(Generator::Witt(0), q(-4, 1))));
        let by_t = module_action(Algebra::Virasoro, ModuleTag::ProjectedWitt, Generator::Central, &v).unwrap();
        assert!(by_t.is_zero());
        let t = ModuleElement::Vector(Combination::single(Generator::Central, q(1, 1)));
        assert!(module_action(Algebra::Virasoro, ModuleTag::ProjectedWitt, Generator::Witt(1), &t).is_err());
    }

    #[test]
    fn mismatched_module_element() {
        let err = module_action(Algebra::Witt, ModuleTag::Adjoint, Generator::Witt(1), &ModuleElement::Scalar(q(1, 1)))
            .unwrap_err();
        assert!(matches!(err, Error::ModuleMismatch { .. }));
    }

    #[test]
    fn jacobi_holds() {
        assert!(check_jacobi::<Rational, _>(&Algebra::Witt, 3).is_empty());
        assert!(check_jacobi::<Rational, _>(&Algebra::Virasoro, 4).is_empty());
    }

    struct Corrupted;

    impl StructureConstants<Rational> for Corrupted {
        fn contains(&self, g: Generator) -> bool {
            !g.is_central()
        }

        fn bracket(&self, x: Generator, y: Generator) -> Result<Combination<Rational>, Error> {
            let mut b = Algebra::Witt.bracket::<Rational>(x, y)?;
            if [(x, y), (y, x)].contains(&(Generator::Witt(1), Generator::Witt(-1))) {
                b = b.scale(&q(3, 1));
            }
            Ok(b)
        }

        fn generators(&self, window: u32) -> Vec<Generator> {
            Algebra::Witt.generators(window)
        }
    }

    #[test]
    fn jacobi_catches_corrupted_constant() {
        assert!(!check_jacobi(&Corrupted, 2).is_empty());
    }
}
