use cocycle_core::algebra::{Algebra, Generator, ModuleTag};
use cocycle_core::cochains::coefficient_form::{cocycle1, cocycle2, coboundary1, coboundary2};
use cocycle_core::cochains::text::{from_text, to_text};
use cocycle_core::cochains::{coboundary, coboundary_at, evaluate, evaluate_scalar, CochainShape, CochainView, Component};
use cocycle_core::scalar::Scalar;
use cocycle_core::{Cochain, Rational};
use proptest::prelude::*;

const MODULES: [(Algebra, ModuleTag); 5] = [
    (Algebra::Witt, ModuleTag::Trivial),
    (Algebra::Witt, ModuleTag::Adjoint),
    (Algebra::Virasoro, ModuleTag::Trivial),
    (Algebra::Virasoro, ModuleTag::Adjoint),
    (Algebra::Virasoro, ModuleTag::ProjectedWitt),
];

/// A random cochain: each coordinate on window 3 is kept with probability
/// about one half and given a small rational value.
fn arb_cochain(arity: usize) -> impl Strategy<Value = Cochain> {
    (0..MODULES.len(), -2i64..=2).prop_flat_map(move |(m, d)| {
        let (algebra, module) = MODULES[m];
        let shape = CochainShape::new(algebra, module, arity, d).unwrap();
        let coords = shape.coordinates(3);
        proptest::collection::vec((any::<bool>(), -5i64..=5, 1i64..=3), coords.len()).prop_map(move |vals| {
            let mut c = Cochain::zero(shape);
            for ((key, comp), (keep, n, den)) in coords.iter().zip(vals) {
                if keep {
                    c.set(*key, *comp, Rational::from_frac(n, den)).unwrap();
                }
            }
            c
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn delta_squared_vanishes_arity_one(psi in arb_cochain(1)) {
        // δψ is needed on every key that (δδψ) on window 3 can reach
        let d1 = coboundary(&psi, 6).unwrap();
        prop_assert!(coboundary(&d1, 3).unwrap().is_zero());
    }

    #[test]
    fn delta_squared_vanishes_arity_two(psi in arb_cochain(2)) {
        let d1 = coboundary(&psi, 6).unwrap();
        prop_assert!(coboundary(&d1, 3).unwrap().is_zero());
    }

    #[test]
    fn alternation(psi in arb_cochain(2), i in -4i64..=4, j in -4i64..=4, central in any::<bool>()) {
        let a = Generator::Witt(i);
        let b = if central && psi.shape_ref().algebra.has_center() { Generator::Central } else { Generator::Witt(j) };
        let ab = evaluate(&psi, &[a, b]).unwrap();
        let ba = evaluate(&psi, &[b, a]).unwrap();
        prop_assert_eq!(ab.clone(), -ba);
        if a == b {
            prop_assert!(ab.is_zero());
        }
    }

    #[test]
    fn coboundary_is_alternating(psi in arb_cochain(1), i in -3i64..=3, j in -3i64..=3) {
        let x = coboundary_at(&psi, &[Generator::Witt(i), Generator::Witt(j)]).unwrap();
        let y = coboundary_at(&psi, &[Generator::Witt(j), Generator::Witt(i)]).unwrap();
        prop_assert_eq!(x, -y);
    }

    #[test]
    fn text_round_trip(psi in arb_cochain(2)) {
        let text = to_text(&psi);
        prop_assert_eq!(from_text::<Rational>(&text).unwrap(), psi);
    }
}

fn trivial(algebra: Algebra, arity: usize) -> CochainShape {
    CochainShape::new(algebra, ModuleTag::Trivial, arity, 0).unwrap()
}

/// The generic coboundary and the term-by-term coefficient expansions agree
/// on degree-0 trivial-module cochains of `V`.
#[test]
fn coefficient_form_matches_generic_coboundary() {
    let mut psi = Cochain::zero(trivial(Algebra::Virasoro, 3));
    let mut phi = Cochain::zero(trivial(Algebra::Virasoro, 2));
    let mut n = 0i64;
    for (key, _) in trivial(Algebra::Virasoro, 3).coordinates(6) {
        n += 1;
        psi.set(key, Component::Main, Rational::from_frac(n % 11 - 5, 1 + n % 3)).unwrap();
    }
    for (key, _) in trivial(Algebra::Virasoro, 2).coordinates(8) {
        n += 1;
        phi.set(key, Component::Main, Rational::from_frac(n % 7 - 3, 1 + n % 4)).unwrap();
    }
    let w = |i: i64| Generator::Witt(i);
    let t = Generator::Central;
    let psi_f = |i, j, k| evaluate_scalar(&psi, &[w(i), w(j), w(k)]).unwrap_or_else(|_| Rational::from_int(0));
    let c_f = |i, j| evaluate_scalar(&psi, &[w(i), w(j), t]).unwrap();
    let phi_f = |i, j| evaluate_scalar(&phi, &[w(i), w(j)]).unwrap_or_else(|_| Rational::from_int(0));
    let b_f = |i| evaluate_scalar(&phi, &[w(i), t]).unwrap();

    let scalar = |e: cocycle_core::ModuleElement<Rational>| match e {
        cocycle_core::ModuleElement::Scalar(s) => s,
        cocycle_core::ModuleElement::Vector(_) => unreachable!(),
    };
    for i in -3..=3 {
        for j in -3..=3 {
            for k in -3..=3 {
                let got = scalar(coboundary_at(&phi, &[w(i), w(j), w(k)]).unwrap());
                assert_eq!(got, coboundary1(&phi_f, &b_f, [i, j, k]), "δφ({i},{j},{k})");
                let got = scalar(coboundary_at(&psi, &[w(i), w(j), w(k), t]).unwrap());
                assert_eq!(got, cocycle2(&c_f, [i, j, k]), "δψ({i},{j},{k},t)");
                for l in -3..=3 {
                    let got = scalar(coboundary_at(&psi, &[w(i), w(j), w(k), w(l)]).unwrap());
                    assert_eq!(got, cocycle1(&psi_f, &c_f, [i, j, k, l]), "δψ({i},{j},{k},{l})");
                }
            }
            let got = scalar(coboundary_at(&phi, &[w(i), w(j), t]).unwrap());
            assert_eq!(got, coboundary2(&b_f, [i, j]));
        }
    }
}

#[test]
fn views_are_cochains() {
    let psi = cocycle_core::knowncocycles::NamedCocycle::GodbillonVey;
    assert_eq!(CochainView::<Rational>::shape(&psi), trivial(Algebra::Witt, 3));
}
