use proptest::prelude::*;

use colorlie::cochain::{cochain_tuple_basis, delta_ce, is_graded_rigid, occurring_degrees, skew_normalize, Cochain};
use colorlie::definition::{definition_of, parse_definition_str, render_definition_json};
use colorlie::deformation::{deformation_jacobi_defects, equivalence_transform, DeformedBracket};
use colorlie::enveloping::{EnvelopingAlgebra, PbwMonomial, UElement};
use colorlie::fixtures;
use colorlie::hochschild::{delta_h, AssociativeAlgebraView, FiniteAlgebra, HochschildCochain};
use colorlie::lincomb::LinComb;
use colorlie::poisson::{jacobi_defect, leibniz_defect, star_components, symmetrize, symmetrize_inverse, SymElement};
use colorlie::representation::{ModuleSpec, ModuleVector};
use colorlie::{ColorLieAlgebra, Scalar};

fn fixture(k: usize) -> (&'static str, ColorLieAlgebra) {
    let all = fixtures::all();
    all[k % all.len()].clone()
}

fn scalar_in(m: u32) -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 1i64..=3), 1..=3).prop_map(move |terms| {
        terms.iter().enumerate().fold(Scalar::zero(), |acc, (k, &(n, d))| {
            &acc + &(&Scalar::from_ratio(n, d) * &Scalar::root_of_unity(m, k as i64))
        })
    })
}

fn field_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop::sample::select(vec![1u32, 3, 4, 5, 6, 8]).prop_flat_map(|m| (scalar_in(m), scalar_in(m), scalar_in(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms((a, b, c) in field_triple()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn bicharacter_is_antisymmetric_and_multiplicative(k in 0usize..6, g in prop::collection::vec(-5i64..5, 2), h in prop::collection::vec(-5i64..5, 2), h2 in prop::collection::vec(-5i64..5, 2)) {
        let (_, alg) = fixture(k);
        let grp = alg.group();
        let n = grp.generator_count();
        let el = |v: &[i64]| grp.element(&v[..n]).unwrap();
        let (g, h, h2) = (el(&g), el(&h), el(&h2));
        let b = alg.bicharacter();
        prop_assert!((&b.eval(&g, &h).unwrap() * &b.eval(&h, &g).unwrap()).is_one());
        let hh = grp.compose(&h, &h2).unwrap();
        prop_assert_eq!(b.eval(&g, &hh).unwrap(), &b.eval(&g, &h).unwrap() * &b.eval(&g, &h2).unwrap());
    }

    #[test]
    fn skew_normalize_respects_adjacent_swaps(k in 0usize..6, raw in prop::collection::vec(0usize..4, 2..=4), pos in 0usize..3) {
        let (_, alg) = fixture(k);
        let t: Vec<usize> = raw.iter().map(|i| i % alg.dim()).collect();
        let p = pos % (t.len() - 1);
        let mut s = t.clone();
        s.swap(p, p + 1);
        match (skew_normalize(&alg, &t), skew_normalize(&alg, &s)) {
            (Some((r1, c1)), Some((r2, c2))) => {
                prop_assert_eq!(r1, r2);
                // f(.., b, a, ..) = -ε(b, a) f(.., a, b, ..)
                prop_assert_eq!(c2, -(alg.eps(s[p], s[p + 1]) * &c1));
            }
            (None, None) => {}
            (a, b) => prop_assert!(false, "vanishing differs: {:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn ce_differential_squares_to_zero(k in 0usize..6, adjoint in any::<bool>(), n in 0usize..=2, pick in any::<prop::sample::Index>(), coeffs in prop::collection::vec(-3i64..=3, 64)) {
        let (_, alg) = fixture(k);
        let module = if adjoint { ModuleSpec::Adjoint } else { ModuleSpec::Trivial };
        let degrees = occurring_degrees(&alg, &module, n);
        prop_assume!(!degrees.is_empty());
        let g = pick.get(&degrees);
        let basis = cochain_tuple_basis(&alg, n, g, &module);
        let coords: Vec<Scalar> = basis.iter().zip(coeffs.iter().cycle()).map(|(_, &c)| Scalar::from_integer(c)).collect();
        let f = Cochain::from_coordinates(n, g.clone(), &basis, &coords);
        let df = delta_ce(&alg, &module, &f).unwrap();
        prop_assert!(delta_ce(&alg, &module, &df).unwrap().is_zero());
    }

    #[test]
    fn pbw_product_is_concatenation(k in 0usize..6, w1 in prop::collection::vec(0usize..4, 0..=3), w2 in prop::collection::vec(0usize..4, 0..=3)) {
        let (_, alg) = fixture(k);
        let env = EnvelopingAlgebra::new(&alg);
        let w1: Vec<usize> = w1.iter().map(|i| i % alg.dim()).collect();
        let w2: Vec<usize> = w2.iter().map(|i| i % alg.dim()).collect();
        let joined = env.pbw_normal_form(&[w1.clone(), w2.clone()].concat(), Scalar::one()).unwrap();
        let a = env.pbw_normal_form(&w1, Scalar::one()).unwrap();
        let b = env.pbw_normal_form(&w2, Scalar::one()).unwrap();
        prop_assert_eq!(env.multiply(&a, &b), joined.clone());
        prop_assert!(joined.keys().all(|m| m.is_admissible(&alg)));
    }

    #[test]
    fn poisson_jacobi_and_leibniz(k in 0usize..6, ws in prop::collection::vec(prop::collection::vec(0usize..4, 1..=2), 3)) {
        let (_, alg) = fixture(k);
        let env = EnvelopingAlgebra::new(&alg);
        let mono = |w: &Vec<usize>| {
            let mut idx: Vec<usize> = w.iter().map(|i| i % alg.dim()).collect();
            idx.sort();
            PbwMonomial::from_indices(idx)
        };
        let ms: Vec<PbwMonomial> = ws.iter().map(mono).collect();
        prop_assume!(ms.iter().all(|m| m.is_admissible(&alg)));
        let e: Vec<SymElement> = ms.iter().map(|m| SymElement::basis(m.clone())).collect();
        prop_assert!(jacobi_defect(&env, &e[0], &e[1], &e[2]).unwrap().is_zero());
        prop_assert!(leibniz_defect(&env, &e[0], &e[1], &e[2]).unwrap().is_zero());
    }

    #[test]
    fn symmetrization_round_trip(k in 0usize..6, terms in prop::collection::vec((prop::collection::vec(0usize..4, 0..=3), -3i64..=3), 1..=3)) {
        let (_, alg) = fixture(k);
        let env = EnvelopingAlgebra::new(&alg);
        let mut s = SymElement::zero();
        for (w, c) in &terms {
            let mut idx: Vec<usize> = w.iter().map(|i| i % alg.dim()).collect();
            idx.sort();
            let m = PbwMonomial::from_indices(idx);
            if m.is_admissible(&alg) {
                s.add_term(m, Scalar::from_integer(*c));
            }
        }
        let u: UElement = symmetrize(&env, &s);
        prop_assert_eq!(LinComb::sum(symmetrize_inverse(&env, &u).iter()), s);
    }

    #[test]
    fn star_has_no_constant_top_term(k in 0usize..6, w1 in prop::collection::vec(0usize..4, 1..=3), w2 in prop::collection::vec(0usize..4, 1..=3)) {
        let (_, alg) = fixture(k);
        let env = EnvelopingAlgebra::new(&alg);
        let mono = |w: &Vec<usize>| {
            let mut idx: Vec<usize> = w.iter().map(|i| i % alg.dim()).collect();
            idx.sort();
            PbwMonomial::from_indices(idx)
        };
        let (a, b) = (mono(&w1), mono(&w2));
        prop_assume!(a.is_admissible(&alg) && b.is_admissible(&alg));
        let top = a.len() + b.len();
        let comps = star_components(&env, &SymElement::basis(a), &SymElement::basis(b));
        prop_assert!(comps.get(top).map_or(true, LinComb::is_zero));
    }

    #[test]
    fn hochschild_differential_squares_to_zero(values in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 64), arity in 1usize..=2) {
        let alg = FiniteAlgebra::upper_triangular_2x2();
        let f = HochschildCochain::from_fn(&alg, arity, |t| {
            let row = &values[t.iter().fold(0, |acc, &i| acc * alg.dim() + i) % values.len()];
            row.iter().enumerate().take(alg.dim()).map(|(i, &c)| (i, Scalar::from_integer(c))).collect()
        });
        prop_assert!(delta_h(&alg, &delta_h(&alg, &f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn transported_deformations_stay_valid(coeffs in prop::collection::vec(-2i64..=2, 9)) {
        let h3 = fixtures::h3();
        let witness = is_graded_rigid(&h3).witnesses[0].clone();
        let mu = DeformedBracket::new(&h3, vec![witness], 2).unwrap();
        let mut f1 = Cochain::zero(1, h3.group().identity());
        for i in 0..3 {
            let v: ModuleVector = (0..3).map(|j| (j, Scalar::from_integer(coeffs[3 * i + j]))).collect();
            f1.set(&h3, &[i], v).unwrap();
        }
        let moved = equivalence_transform(&h3, &mu, &[f1]).unwrap();
        prop_assert!(deformation_jacobi_defects(&h3, &moved).unwrap().is_empty());
    }
}

#[test]
fn definitions_round_trip_for_every_fixture() {
    for (name, alg) in fixtures::all() {
        let text = render_definition_json(&definition_of(&alg));
        let back = parse_definition_str(&text, true).unwrap();
        assert_eq!(render_definition_json(&back), text, "{name}");
    }
}

#[test]
fn finite_views_are_associative() {
    for alg in [FiniteAlgebra::upper_triangular_2x2(), FiniteAlgebra::matrices(2)] {
        assert!(alg.verify_associativity().is_valid());
        assert!(!alg.argument_tuples(2).is_empty());
    }
}
