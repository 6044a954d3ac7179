use std::collections::BTreeMap;

use ishuffle_core::conditions::corollary_constant;
use ishuffle_core::generators::{base_identities, verify_base_identity, verify_certificate_cached};
use ishuffle_core::poly::coeff;
use ishuffle_core::{
    corollary_check, ideal_certificate, ideal_certificate_for, ideal_membership, ideal_wheel_check,
    range4, reduce2, reduce3, residue_class, shuffle_word, verify_certificate,
    verify_ideal_certificate, verify_lemma, wheel_check, GeneratorWord, IdealGenerators,
    LaurentPoly, LemmaRelation, ModuleCertificate, ModuleReducer, ShuffleElement, Variable,
    WordCache,
};
use proptest::prelude::*;

fn w(v: &[i32]) -> GeneratorWord {
    GeneratorWord::new(v.to_vec())
}

fn z(i: u32) -> LaurentPoly {
    LaurentPoly::z(i)
}

#[test]
fn lemma_holds_on_small_words() {
    for word in [&[0, 1][..], &[2, -1], &[0, 0, 1], &[1, -1, 2], &[0, 1, 0, 2]] {
        for n in [-1, 1, 2] {
            assert!(verify_lemma(&w(word), n, LemmaRelation::ProductPower).unwrap());
            assert!(verify_lemma(&w(word), n, LemmaRelation::PowerSum).unwrap());
        }
    }
}

#[test]
fn lemma_is_not_vacuous() {
    // p_1 · [0, 0] is [1, 0] + [0, 1], not 2 [1, 0]
    let mut cache = WordCache::new();
    let lhs = cache.expand(&w(&[0, 0])).unwrap().poly() * &(&z(1) + &z(2));
    let wrong = cache.expand(&w(&[1, 0])).unwrap().poly().scale(&coeff(2));
    assert_ne!(lhs, wrong);
}

#[test]
fn base_identities_and_swaps_hold() {
    let mut cache = WordCache::new();
    for id in base_identities() {
        assert!(verify_base_identity(&id, &mut cache).unwrap(), "{}", id.lhs);
        assert!(verify_base_identity(&id.swapped(), &mut cache).unwrap(), "{}", id.lhs);
    }
}

#[test]
fn reductions_land_in_the_bases() {
    let mut r = ModuleReducer::new();
    let b2 = ishuffle_core::basis2();
    let b3 = ishuffle_core::basis3();
    for d in [[3, -2], [0, 5], [-1, -1]] {
        let c = r.reduce2(&w(&d)).unwrap();
        assert!(c.combination.iter().all(|(_, v)| b2.contains(v)));
    }
    for d in [[4, 0, -1], [0, 3, 3], [2, 2, 2]] {
        let c = r.reduce3(&w(&d)).unwrap();
        assert!(c.combination.iter().all(|(_, v)| b3.contains(v)));
        assert!(c.combination.windows(2).all(|p| p[0].1 < p[1].1));
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let mut c = reduce2(&w(&[2, 0])).unwrap();
    assert!(verify_certificate(&c).unwrap());
    c.combination[0].0 = &c.combination[0].0 + &LaurentPoly::one();
    assert!(!verify_certificate(&c).unwrap());

    // non-symmetric cofactor
    let bad = ModuleCertificate {
        target: w(&[1, 0]),
        combination: vec![(z(1), w(&[0, 0]))],
    };
    assert!(!verify_certificate(&bad).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reduce2_certificates_verify(a in -4i32..=4, b in -4i32..=4) {
        prop_assert!(verify_certificate(&reduce2(&w(&[a, b])).unwrap()).unwrap());
    }

    #[test]
    fn reduce3_certificates_verify(a in -2i32..=4, b in -2i32..=4, c in -2i32..=4) {
        let cert = reduce3(&w(&[a, b, c])).unwrap();
        let mut cache = WordCache::new();
        prop_assert!(verify_certificate_cached(&cert, &mut cache).unwrap());
        for (cof, _) in &cert.combination {
            prop_assert!(cof.is_symmetric(3));
        }
    }

    #[test]
    fn range_and_residue_are_shift_invariant(d in prop::array::uniform4(-5i32..=5), n in -4i32..=4) {
        let word = w(&d);
        let shifted = word.shifted(n);
        prop_assert_eq!(range4(&word).unwrap(), range4(&shifted).unwrap());
        prop_assert_eq!(residue_class(&word).unwrap(), residue_class(&shifted).unwrap());
        let mut rev = d;
        rev.reverse();
        prop_assert_eq!(range4(&word).unwrap(), range4(&w(&rev)).unwrap());
        prop_assert!(range4(&word).unwrap() >= 0);
    }

    #[test]
    fn wheel_formulations_agree(
        coefs in prop::collection::vec(-3i64..=3, 4),
        words in prop::collection::vec(prop::array::uniform3(-1i32..=2), 4),
        perturb in 0i64..=2,
    ) {
        let mut p = LaurentPoly::zero();
        for (c, d) in coefs.iter().zip(&words) {
            p += shuffle_word(&w(d)).unwrap().into_poly().scale(&coeff(*c));
        }
        // z1 z2 z3 is symmetric but does not vanish on the wheel
        let e3 = &(&z(1) * &z(2)) * &z(3);
        p += e3.scale(&coeff(perturb));
        let el = ShuffleElement::new(3, p).unwrap();
        let a = wheel_check(&el);
        prop_assert_eq!(a, ideal_wheel_check(&el).unwrap());
        prop_assert_eq!(a, perturb == 0);
    }

    #[test]
    fn arity_two_corollary_matches_ideal_cofactor(a in -1i32..=2, b in -1i32..=2) {
        let word = w(&[a, b]);
        let cert = ideal_certificate(&word).unwrap();
        prop_assert!(verify_ideal_certificate(&cert).unwrap());
        let mut s = BTreeMap::new();
        s.insert(Variable::Z(2), -z(1));
        let expected = &cert.a.substitute(&s).unwrap() * &z(1).pow(2);
        let got = corollary_check(&shuffle_word(&word).unwrap()).unwrap();
        prop_assert_eq!(got, Some(expected));
    }
}

#[test]
fn ideal_membership_rejects_non_members() {
    let g = IdealGenerators::new();
    assert!(ideal_membership(&LaurentPoly::one()).unwrap().is_none());
    assert!(ideal_membership(&z(1)).unwrap().is_none());
    assert!(ideal_membership(&(&g.g1 + &z(2))).unwrap().is_none());
    // g2 / c is not a member even though c g2 / c = g2 is
    assert!(ideal_membership(&(&z(1) + &z(2))).unwrap().is_none());
    let e = ShuffleElement::new(2, &z(1) + &z(2)).unwrap();
    assert!(ideal_certificate_for(&e).is_err());
}

#[test]
fn ideal_membership_of_combinations() {
    let g = IdealGenerators::new();
    let a = &(&z(1) * &z(2).powi(-1).unwrap()) + &LaurentPoly::q1();
    let b = &z(3) - &z(1).pow(2);
    let p = &(&a * &g.g1) + &(&b * &g.g2);
    let (ra, rb) = ideal_membership(&p).unwrap().expect("member");
    assert_eq!(&(&ra * &g.g1) + &(&rb * &g.g2), p);
}

#[test]
fn corollary_needs_the_full_constant() {
    let e = ShuffleElement::new(2, &(&z(1) * &z(2)) + &LaurentPoly::one()).unwrap();
    assert_eq!(corollary_check(&e).unwrap(), None);
    let scaled = ShuffleElement::new(2, &corollary_constant() * &(&z(1).pow(2) + &z(2).pow(2))).unwrap();
    assert_eq!(corollary_check(&scaled).unwrap(), Some(z(1).pow(2).scale(&coeff(2))));
}
