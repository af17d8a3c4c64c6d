//! Constructive reduction of a degree-0 trivial 3-cocycle `ψ` on `W` or `V` to
//! `λΨ + δφ`.
//!
//! Notation: `ψ_{i,j,k} = ψ(e_i,e_j,e_k)`, `c_{i,j} = ψ(e_i,e_j,t)`,
//! `φ_{i,j} = φ(e_i,e_j)`, `b_0 = φ(e_0,t)`. The "level" of a coefficient
//! `ψ_{-i-k,i,k}` is `k`, the entry of smallest absolute value.
//!
//! 1. `λ = ψ(e_{-1},e_1,e_0)/2` and `ψ' = ψ - λΨ`.
//! 2. A 2-cochain `φ` with `b_0 = c'_{-1,1}/2`, `φ_{0,0} = φ_{1,-1} = φ_{2,-2} = 0`
//!    and, for `i >= 2`,
//!    `φ_{i+1,-(i+1)} = -ψ'_{i,-1-i,1}/(1-i) - (2+i)/(1-i)·φ_{i,-i}`
//!    makes `ψ'' = ψ' - δφ` vanish on level one and at `c_{-1,1}`.
//! 3. The cocycle condition then forces `c_{k,-k} = (k+1)k(k-1)/6 · c_{2,-2}`
//!    and the level recursions express every `ψ''` coefficient through the
//!    seeds `ψ_{-2,2,0}` and `c_{2,-2}`.
//! 4. The conditions at `(e_{-4},e_{-3},e_2,e_5)` and `(e_{-3},e_{-2},e_2,e_3)`
//!    force both seeds to zero, so `ψ = λΨ + δφ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Generator, ModuleTag};
use crate::cochains::{
    admissible_tuples, coboundary, coboundary_at, evaluate_scalar, text, CochainKey, CochainShape, CochainView, Component,
    HomogeneousCochain,
};
use crate::error::Error;
use crate::knowncocycles::NamedCocycle;
use crate::scalar::{format_fraction, Scalar};

/// Smallest window on which the final relations can be written down:
/// the first one references `ψ_{7,-4,-3}`.
pub const MIN_RECURSION_WINDOW: u32 = 7;

fn gen(i: i64) -> Generator {
    Generator::Witt(i)
}

fn trivial_shape(algebra: Algebra, arity: usize) -> CochainShape {
    CochainShape { algebra, module: ModuleTag::Trivial, arity, degree: 0 }
}

fn check_input<S: Scalar, V: CochainView<S> + ?Sized>(psi: &V) -> Result<CochainShape, Error> {
    let shape = psi.shape();
    if shape.arity != 3 || shape.module != ModuleTag::Trivial || shape.degree != 0 {
        return Err(Error::ShapeMismatch(format!("expected a degree-0 trivial 3-cochain, got {shape:?}")));
    }
    Ok(shape)
}

/// `λ = ψ(e_{-1},e_1,e_0) / 2`.
pub fn gv_coefficient<S: Scalar, V: CochainView<S> + ?Sized>(psi: &V) -> Result<S, Error> {
    check_input(psi)?;
    Ok(evaluate_scalar(psi, &[gen(-1), gen(1), gen(0)])? / S::from_int(2))
}

/// `ψ - λΨ` on the window (`Ψ̂` on `V`), together with `λ`.
pub fn subtract_gv<S: Scalar>(psi: &HomogeneousCochain<S>, window: u32) -> Result<(S, HomogeneousCochain<S>), Error> {
    let shape = check_input(psi)?;
    let lambda = gv_coefficient(psi)?;
    let gv = NamedCocycle::godbillon_vey_for(shape.algebra).materialize::<S>(window);
    Ok((lambda.clone(), psi.restrict(window).sub(&gv.scale(&lambda))?))
}

/// `ψ_{a,b,c}` read in any index order.
fn psi_at<S: Scalar, V: CochainView<S> + ?Sized>(psi: &V, a: i64, b: i64, c: i64) -> S {
    evaluate_scalar(psi, &[gen(a), gen(b), gen(c)]).unwrap_or_else(|_| S::zero())
}

/// `c_{a,b} = ψ(e_a, e_b, t)`; zero on `W`.
fn c_at<S: Scalar, V: CochainView<S> + ?Sized>(psi: &V, a: i64, b: i64) -> S {
    if !psi.shape().algebra.has_center() {
        return S::zero();
    }
    evaluate_scalar(psi, &[gen(a), gen(b), Generator::Central]).unwrap_or_else(|_| S::zero())
}

/// The 2-cochain `φ` of step 2, on keys with `|index| <= window`.
///
/// `psi_prime` must satisfy `ψ'(e_{-1},e_1,e_0) = 0`.
pub fn build_normalizing_cochain<S: Scalar, V: CochainView<S> + ?Sized>(
    psi_prime: &V,
    window: u32,
) -> Result<HomogeneousCochain<S>, Error> {
    let shape = check_input(psi_prime)?;
    if window < 2 {
        return Err(Error::RecursionGap(format!("window {window} cannot hold the anchors φ_(1,-1), φ_(2,-2)")));
    }
    if !psi_at(psi_prime, -1, 1, 0).is_zero() {
        return Err(Error::RecursionGap("ψ'(e_-1, e_1, e_0) must vanish before normalization".into()));
    }
    let mut phi = HomogeneousCochain::zero(trivial_shape(shape.algebra, 2));
    if shape.algebra.has_center() {
        let b0 = c_at(psi_prime, -1, 1) / S::from_int(2);
        phi.set_value(&[gen(0), Generator::Central], b0)?;
    }
    // φ_{i,-i} for i >= 0, anchored at φ_{2,-2} = 0
    let mut prev = S::zero();
    for i in 2..i64::from(window) {
        let one_minus_i = S::from_int(1 - i);
        let next = -psi_at(psi_prime, i, -1 - i, 1) / one_minus_i.clone() - S::from_int(2 + i) / one_minus_i * prev;
        phi.set_value(&[gen(i + 1), gen(-(i + 1))], next.clone())?;
        prev = next;
    }
    Ok(phi)
}

/// Checks `c_{k,-k} = (k+1)k(k-1)/6 · c_{2,-2}` for `1 <= k <= window` and
/// returns `c_{2,-2}`. On `W` there are no central coefficients; returns 0.
pub fn central_profile_check<S: Scalar, V: CochainView<S> + ?Sized>(psi: &V, window: u32) -> Result<S, Error> {
    check_input(psi)?;
    let c2 = c_at(psi, 2, -2);
    for k in 1..=i64::from(window) {
        let expected = S::from_frac((k + 1) * k * (k - 1), 6) * c2.clone();
        if c_at(psi, k, -k) != expected {
            return Err(Error::ProfileViolation { k });
        }
    }
    Ok(c2)
}

/// `a·ψ_{-2,2,0} + b·c_{2,-2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeedForm<S> {
    pub psi: S,
    pub c: S,
}

impl<S: Scalar> SeedForm<S> {
    pub fn zero() -> Self {
        SeedForm { psi: S::zero(), c: S::zero() }
    }

    pub fn psi_seed() -> Self {
        SeedForm { psi: S::one(), c: S::zero() }
    }

    pub fn c_seed() -> Self {
        SeedForm { psi: S::zero(), c: S::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.psi.is_zero() && self.c.is_zero()
    }

    pub fn at(&self, seeds: &Seeds<S>) -> S {
        self.psi.clone() * seeds.psi_m220.clone() + self.c.clone() * seeds.c2m2.clone()
    }
}

impl<S: Scalar> Add for SeedForm<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        SeedForm { psi: self.psi + o.psi, c: self.c + o.c }
    }
}

impl<S: Scalar> Sub for SeedForm<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        SeedForm { psi: self.psi - o.psi, c: self.c - o.c }
    }
}

impl<S: Scalar> Neg for SeedForm<S> {
    type Output = Self;
    fn neg(self) -> Self {
        SeedForm { psi: -self.psi, c: -self.c }
    }
}

impl<S: Scalar> Mul<S> for SeedForm<S> {
    type Output = Self;
    fn mul(self, r: S) -> Self {
        SeedForm { psi: self.psi * r.clone(), c: self.c * r }
    }
}

impl<S: Scalar> fmt::Display for SeedForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·ψ(-2,2,0) + {}·c(2,-2)", format_fraction(&self.psi), format_fraction(&self.c))
    }
}

/// Numeric values of the two seeds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Seeds<S> {
    pub psi_m220: S,
    pub c2m2: S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RecursionRule {
    LevelZero,
    LevelMinusOne,
    LevelMinusTwo,
    LevelPlusTwo,
    LevelPlusK,
    LevelMinusK,
}

/// One use of a recursion: the cocycle condition at `tuple`, with the
/// level-one terms removed, solved for `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionInstance<S> {
    pub rule: RecursionRule,
    pub tuple: [i64; 4],
    /// `Σ coeff·ψ_key = 0` on canonical keys.
    pub relation: Vec<(CochainKey, S)>,
    pub target: CochainKey,
}

/// All `ψ_{i,j,k}` (canonical keys, `i+j+k = 0`, `|index| <= window`) and
/// `c_{k,-k}` (`1 <= k <= window`) of a normalized cocycle as linear forms
/// in the seeds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable<S> {
    pub window: u32,
    pub psi: BTreeMap<CochainKey, SeedForm<S>>,
    pub c: BTreeMap<i64, SeedForm<S>>,
    pub instances: Vec<RecursionInstance<S>>,
}

/// Level of a zero-sum key: its entry of smallest absolute value.
pub fn level(key: &CochainKey) -> i64 {
    *key.witt().iter().min_by_key(|i| i.abs()).expect("non-empty key")
}

/// Coefficients that vanish after normalization: level one and `ψ_{-1,0,1}`.
fn is_normalized_zero(key: &CochainKey) -> bool {
    level(key) == 1 || key.witt() == [-1, 0, 1]
}

impl<S: Scalar> CoefficientTable<S> {
    /// `ψ_{a,b,c}` in any order, or `None` if not yet determined.
    fn lookup(&self, [a, b, c]: [i64; 3]) -> Option<SeedForm<S>> {
        let Some((key, sign)) = CochainKey::canonicalize(&[gen(a), gen(b), gen(c)]) else {
            return Some(SeedForm::zero());
        };
        if a + b + c != 0 || is_normalized_zero(&key) {
            return Some(SeedForm::zero());
        }
        let v = self.psi.get(&key)?.clone();
        Some(if sign < 0 { -v } else { v })
    }

    /// Applies one relation `Σ coeff·ψ_{idx} = 0`, solving for the `target` term.
    fn apply(&mut self, rule: RecursionRule, tuple: [i64; 4], terms: &[(i64, [i64; 3])], target: usize) -> Result<(), Error> {
        let mut rest = SeedForm::zero();
        let mut relation: BTreeMap<CochainKey, S> = BTreeMap::new();
        for (n, (coeff, idx)) in terms.iter().enumerate() {
            if let Some((key, sign)) = CochainKey::canonicalize(&idx.map(gen)) {
                if !is_normalized_zero(&key) {
                    let e = relation.entry(key).or_insert_with(S::zero);
                    *e = e.clone() + S::from_int(coeff * i64::from(sign));
                }
            }
            if n == target {
                continue;
            }
            let v = self.lookup(*idx).ok_or_else(|| {
                Error::RecursionGap(format!("{rule:?} at {tuple:?} needs ψ{idx:?} before it is known"))
            })?;
            rest = rest + v * S::from_int(*coeff);
        }
        let (coeff, idx) = terms[target];
        let (key, sign) = CochainKey::canonicalize(&idx.map(gen))
            .ok_or_else(|| Error::RecursionGap(format!("{rule:?} at {tuple:?} targets a degenerate key {idx:?}")))?;
        if coeff == 0 {
            return Err(Error::RecursionGap(format!("{rule:?} at {tuple:?} has a zero pivot")));
        }
        // coeff·sign·ψ_key = -rest
        let value = -rest * (S::one() / S::from_int(coeff * i64::from(sign)));
        if let Some(existing) = self.psi.get(&key) {
            if *existing != value {
                return Err(Error::RecursionGap(format!("{rule:?} at {tuple:?} contradicts an earlier value of ψ({key})")));
            }
        }
        self.psi.insert(key, value);
        let relation: Vec<_> = relation.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.instances.push(RecursionInstance { rule, tuple, relation, target: key });
        Ok(())
    }

    /// `ψ_{a,b,c}` as a linear form; zero outside the table's support.
    pub fn psi_form(&self, a: i64, b: i64, c: i64) -> SeedForm<S> {
        self.lookup([a, b, c]).unwrap_or_else(SeedForm::zero)
    }

    /// `c_{a,b}` as a linear form.
    pub fn c_form(&self, a: i64, b: i64) -> SeedForm<S> {
        if a + b != 0 || a == 0 {
            return SeedForm::zero();
        }
        let v = self.c.get(&a.abs()).cloned().unwrap_or_else(SeedForm::zero);
        if a > 0 {
            v
        } else {
            -v
        }
    }

    /// The cochain with these coefficients at the given seed values.
    pub fn at(&self, algebra: Algebra, seeds: &Seeds<S>) -> HomogeneousCochain<S> {
        let mut out = HomogeneousCochain::zero(trivial_shape(algebra, 3));
        for (key, form) in &self.psi {
            out.set(*key, Component::Main, form.at(seeds)).expect("zero-sum key");
        }
        if algebra.has_center() {
            for (k, form) in &self.c {
                out.set_value(&[gen(*k), gen(-*k), Generator::Central], form.at(seeds)).expect("central key");
            }
        }
        out
    }
}

/// Fills every in-window coefficient of a normalized cocycle from the seeds,
/// level by level: 0, -1, -2, +2, then +3, +4, ... and -3, -4, ...
pub fn propagate_recursions<S: Scalar>(window: u32) -> Result<CoefficientTable<S>, Error> {
    if window < MIN_RECURSION_WINDOW {
        return Err(Error::WindowTooSmall { required: MIN_RECURSION_WINDOW, got: window });
    }
    let n = i64::from(window);
    let mut t = CoefficientTable { window, psi: BTreeMap::new(), c: BTreeMap::new(), instances: Vec::new() };
    for k in 1..=n {
        t.c.insert(k, SeedForm::c_seed() * S::from_frac((k + 1) * k * (k - 1), 6));
    }
    // ψ_{-2,2,0}; canonical key (-2, 0, 2) carries the opposite sign
    t.psi.insert(CochainKey::new(&[-2, 0, 2], false).expect("key"), -SeedForm::psi_seed());

    use RecursionRule::*;
    // level 0 at (e_{-i-1}, e_i, e_0, e_1): (2+i)ψ_{-i,i,0} + (i-1)ψ_{1+i,-1-i,0} = 0
    for i in 2..n {
        t.apply(LevelZero, [-i - 1, i, 0, 1], &[(2 + i, [-i, i, 0]), (i - 1, [1 + i, -1 - i, 0])], 1)?;
    }
    // level -1 at (e_{-i}, e_i, e_{-1}, e_1), i <= -2:
    // 2ψ_{0,-i,i} + (1+i)ψ_{1-i,i,-1} + (i-1)ψ_{1+i,-i,-1} = 0
    for i in (-(n - 1)..=-2).rev() {
        t.apply(
            LevelMinusOne,
            [-i, i, -1, 1],
            &[(2, [0, -i, i]), (1 + i, [1 - i, i, -1]), (i - 1, [1 + i, -i, -1])],
            1,
        )?;
    }
    // level -2 at (e_{1-i}, e_i, e_{-2}, e_1), i <= -3:
    // 3ψ_{-1,1-i,i} + iψ_{2-i,i,-2} + (i-1)ψ_{1+i,1-i,-2} = 0
    for i in (-(n - 2)..=-3).rev() {
        t.apply(
            LevelMinusTwo,
            [1 - i, i, -2, 1],
            &[(3, [-1, 1 - i, i]), (i, [2 - i, i, -2]), (i - 1, [1 + i, 1 - i, -2])],
            1,
        )?;
    }
    // level +2 at (e_{-i-1}, e_i, e_2, e_{-1}), i >= 3:
    // iψ_{-2-i,i,2} - (3+i)ψ_{1-i,i,-1} + (1+i)ψ_{-1+i,-1-i,2} - (i-2)ψ_{2+i,-1-i,-1} = 0
    for i in 3..=n - 2 {
        t.apply(
            LevelPlusTwo,
            [-i - 1, i, 2, -1],
            &[(i, [-2 - i, i, 2]), (-(3 + i), [1 - i, i, -1]), (1 + i, [i - 1, -1 - i, 2]), (-(i - 2), [2 + i, -1 - i, -1])],
            0,
        )?;
    }
    // level k+1 at (e_{-i-k-1}, e_i, e_k, e_1), k >= 2, i >= k+2:
    // (i-1)ψ_{1+i,-1-i-k,k} + (2+i+k)ψ_{-i-k,i,k} - (k-1)ψ_{1+k,-1-i-k,i} = 0
    for k in 2..n {
        for i in k + 2..=n - k - 1 {
            t.apply(
                LevelPlusK,
                [-i - k - 1, i, k, 1],
                &[(i - 1, [1 + i, -1 - i - k, k]), (2 + i + k, [-i - k, i, k]), (-(k - 1), [1 + k, -1 - i - k, i])],
                2,
            )?;
        }
    }
    // level k-1 at (e_{1-i-k}, e_i, e_k, e_{-1}), k <= -2, i <= k-2
    for k in (-(n - 1)..=-2).rev() {
        for i in ((-(n + k - 1))..=k - 2).rev() {
            t.apply(
                LevelMinusK,
                [1 - i - k, i, k, -1],
                &[
                    (-(i + 2 * k - 1), [1 - i, i, -1]),
                    (1 + i, [i - 1, 1 - i - k, k]),
                    (2 * i + k - 1, [1 - k, k, -1]),
                    (i + k - 2, [-i - k, i, k]),
                    (-(1 + k), [k - 1, 1 - i - k, i]),
                    (k - i, [i + k, 1 - i - k, -1]),
                ],
                4,
            )?;
        }
    }

    // every in-window coefficient outside level one must now be known
    let shape = trivial_shape(Algebra::Witt, 3);
    for (key, _) in shape.coordinates(window) {
        if !is_normalized_zero(&key) && !t.psi.contains_key(&key) {
            return Err(Error::RecursionGap(format!("ψ({key}) is not reached by any recursion")));
        }
    }
    Ok(t)
}

/// The two final relations as linear forms in the seeds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedRelations<S> {
    /// `(δψ)(e_{-4},e_{-3},e_2,e_5)`.
    pub coc1: SeedForm<S>,
    /// `(δψ)(e_{-3},e_{-2},e_2,e_3)` including the central terms.
    pub coc2: SeedForm<S>,
    /// `coc1 = 0` alone forces `ψ_{-2,2,0} = 0` (enough for `W`).
    pub witt_forced_zero: bool,
    /// `coc1 = coc2 = 0` force both seeds to zero.
    pub virasoro_forced_zero: bool,
}

pub const COC1_TUPLE: [i64; 4] = [-4, -3, 2, 5];
pub const COC2_TUPLE: [i64; 4] = [-3, -2, 2, 3];

/// Substitutes the table into the two final cocycle conditions, evaluated
/// with the generic coboundary on `V`.
pub fn verify_final_relations<S: Scalar>(table: &CoefficientTable<S>) -> Result<SeedRelations<S>, Error> {
    if table.window < MIN_RECURSION_WINDOW {
        return Err(Error::WindowTooSmall { required: MIN_RECURSION_WINDOW, got: table.window });
    }
    let basis = [
        Seeds { psi_m220: S::one(), c2m2: S::zero() },
        Seeds { psi_m220: S::zero(), c2m2: S::one() },
    ];
    let mut forms = [SeedForm::zero(), SeedForm::zero()];
    for (slot, seeds) in basis.iter().enumerate() {
        let psi = table.at(Algebra::Virasoro, seeds);
        for (f, tuple) in forms.iter_mut().zip([COC1_TUPLE, COC2_TUPLE]) {
            let v = match coboundary_at(&psi, &tuple.map(gen))? {
                crate::algebra::ModuleElement::Scalar(v) => v,
                crate::algebra::ModuleElement::Vector(_) => unreachable!("trivial module"),
            };
            if slot == 0 {
                f.psi = v;
            } else {
                f.c = v;
            }
        }
    }
    let [coc1, coc2] = forms;
    let witt_forced_zero = !coc1.psi.is_zero() && coc1.c.is_zero();
    let det = coc1.psi.clone() * coc2.c.clone() - coc1.c.clone() * coc2.psi.clone();
    let virasoro_forced_zero = !det.is_zero();
    Ok(SeedRelations { coc1, coc2, witt_forced_zero, virasoro_forced_zero })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult<S> {
    pub lambda: S,
    pub phi: HomogeneousCochain<S>,
    pub residual_norm_zero: bool,
    pub window: u32,
}

#[derive(Serialize)]
pub struct DecompositionJson {
    pub lambda: String,
    pub phi: Vec<String>,
    pub residual_zero: bool,
    pub phi_header: String,
    pub window: u32,
}

impl<S: Scalar> DecompositionResult<S> {
    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            lambda: format_fraction(&self.lambda),
            phi: text::lines(&self.phi),
            residual_zero: self.residual_norm_zero,
            phi_header: text::header(self.phi.shape_ref()),
            window: self.window,
        }
    }
}

/// Tuples with `|index| <= window` whose cocycle condition only involves
/// in-window coefficients; `ψ` must vanish on all of them under `δ`.
fn check_cocycle<S: Scalar>(psi: &HomogeneousCochain<S>, window: u32) -> Result<(), Error> {
    let shape = psi.shape();
    for key in admissible_tuples(&shape, window) {
        let r = coboundary_at(psi, &key.generators())?;
        if !r.is_zero() {
            return Err(Error::NotACocycle(format!("δψ({key}) = {r}")));
        }
    }
    Ok(())
}

/// Writes a degree-0 trivial 3-cocycle on the window as `λΨ + δφ`.
pub fn decompose<S: Scalar>(psi: &HomogeneousCochain<S>, window: u32) -> Result<DecompositionResult<S>, Error> {
    let shape = check_input(psi)?;
    if window < MIN_RECURSION_WINDOW {
        return Err(Error::WindowTooSmall { required: MIN_RECURSION_WINDOW, got: window });
    }
    let psi = psi.restrict(window);
    check_cocycle(&psi, window)?;

    let (lambda, psi_prime) = subtract_gv(&psi, window)?;
    let phi = build_normalizing_cochain(&psi_prime, window)?;
    let normalized = psi_prime.sub(&coboundary(&phi, window)?)?;

    for (key, _) in shape.coordinates(window) {
        if level(&key) == 1 && !normalized.coefficient(&key, Component::Main).is_zero() {
            return Err(Error::ResidualNonZero(format!("level-one coefficient ψ({key}) survived normalization")));
        }
    }
    let c2 = central_profile_check(&normalized, window).map_err(|e| match e {
        Error::ProfileViolation { k } => Error::NotACocycle(format!("central coefficients break the profile at k = {k}")),
        other => other,
    })?;
    let seeds = Seeds { psi_m220: psi_at(&normalized, -2, 2, 0), c2m2: c2 };

    let table = propagate_recursions::<S>(window)?;
    let predicted = table.at(shape.algebra, &seeds);
    if predicted != normalized {
        return Err(Error::NotACocycle("normalized coefficients disagree with the recursions".into()));
    }
    let relations = verify_final_relations(&table)?;
    let forced = match shape.algebra {
        Algebra::Witt => relations.witt_forced_zero,
        Algebra::Virasoro => relations.virasoro_forced_zero,
    };
    if !forced {
        return Err(Error::ResidualNonZero("final relations do not force the seeds to zero".into()));
    }
    let mut seed_values = vec![relations.coc1.at(&seeds)];
    if shape.algebra.has_center() {
        seed_values.push(relations.coc2.at(&seeds));
    }
    if seed_values.iter().any(|v| !v.is_zero()) {
        return Err(Error::NotACocycle("seeds violate the final relations".into()));
    }

    // with both seeds zero the recursions give ψ'' = 0; check the certificate directly
    let gv = NamedCocycle::godbillon_vey_for(shape.algebra).materialize::<S>(window);
    let residual = psi.sub(&gv.scale(&lambda))?.sub(&coboundary(&phi, window)?)?;
    if !residual.is_zero() {
        return Err(Error::ResidualNonZero(format!("{} window coefficients remain", residual.len())));
    }
    Ok(DecompositionResult { lambda, phi, residual_norm_zero: true, window })
}

/// A known decomposition `ψ = λΨ + δφ₀` for round-trip testing.
#[derive(Clone, Debug)]
pub struct CohomologousSample<S> {
    pub lambda: S,
    pub phi0: HomogeneousCochain<S>,
    pub psi: HomogeneousCochain<S>,
}

fn small_fraction<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    S::from_frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

/// Random `λ` and degree-0 trivial 2-cochain `φ₀` with keys in
/// `|index| <= source` (including `φ₀(e_0,t)` on `V`); `ψ` is restricted to
/// `window`.
pub fn sample_cohomologous<S: Scalar, R: Rng + ?Sized>(
    algebra: Algebra,
    window: u32,
    source: u32,
    rng: &mut R,
) -> Result<CohomologousSample<S>, Error> {
    let lambda = small_fraction::<S, R>(rng);
    let mut phi0 = HomogeneousCochain::zero(trivial_shape(algebra, 2));
    for j in 1..=i64::from(source) {
        phi0.set_value(&[gen(j), gen(-j)], small_fraction::<S, R>(rng))?;
    }
    if algebra.has_center() {
        phi0.set_value(&[gen(0), Generator::Central], small_fraction::<S, R>(rng))?;
    }
    let gv = NamedCocycle::godbillon_vey_for(algebra).materialize::<S>(window);
    let psi = gv.scale(&lambda).add(&coboundary(&phi0, window)?)?;
    Ok(CohomologousSample { lambda, phi0, psi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    #[test]
    fn level_is_smallest_absolute_entry() {
        assert_eq!(level(&CochainKey::new(&[-3, 1, 2], false).unwrap()), 1);
        assert_eq!(level(&CochainKey::new(&[-7, 2, 5], false).unwrap()), 2);
        assert_eq!(level(&CochainKey::new(&[-2, 0, 2], false).unwrap()), 0);
    }

    #[test]
    fn central_profile() {
        let t = propagate_recursions::<Rational>(7).unwrap();
        assert_eq!(t.c_form(2, -2), SeedForm::c_seed());
        assert_eq!(t.c_form(3, -3), SeedForm::c_seed() * q(4, 1));
        assert!(t.c_form(1, -1).is_zero());
        assert_eq!(t.c_form(-3, 3), -(SeedForm::c_seed() * q(4, 1)));
    }

    #[test]
    fn small_window_is_rejected() {
        assert_eq!(propagate_recursions::<Rational>(6).unwrap_err(), Error::WindowTooSmall { required: 7, got: 6 });
    }

    #[test]
    fn zero_input_gives_zero_phi() {
        let zero = HomogeneousCochain::<Rational>::zero(trivial_shape(Algebra::Virasoro, 3));
        assert!(build_normalizing_cochain(&zero, 6).unwrap().is_zero());
    }

    #[test]
    fn b0_from_central_coefficient() {
        let mut psi = HomogeneousCochain::<Rational>::zero(trivial_shape(Algebra::Virasoro, 3));
        psi.set_value(&[gen(-1), gen(1), Generator::Central], q(4, 1)).unwrap();
        let phi = build_normalizing_cochain(&psi, 4).unwrap();
        assert_eq!(evaluate_scalar(&phi, &[gen(0), Generator::Central]).unwrap(), q(2, 1));
    }

    #[test]
    fn final_relations() {
        let t = propagate_recursions::<Rational>(7).unwrap();
        let r = verify_final_relations(&t).unwrap();
        assert_eq!(r.coc1, SeedForm { psi: q(66, 5), c: q(0, 1) });
        assert_eq!(r.coc2, SeedForm { psi: q(20, 3), c: q(-4, 1) });
        assert!(r.witt_forced_zero && r.virasoro_forced_zero);
    }

    #[test]
    fn decomposes_godbillon_vey() {
        for a in [Algebra::Witt, Algebra::Virasoro] {
            let psi = NamedCocycle::godbillon_vey_for(a).materialize::<Rational>(8).scale(&q(3, 1));
            let d = decompose(&psi, 8).unwrap();
            assert_eq!(d.lambda, q(3, 1));
            assert!(d.phi.is_zero());
        }
    }
}
