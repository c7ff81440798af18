//! Families whose stated root-number laws or fiber data disagree with what the
//! curves actually have. Each test pins the computed behaviour and checks that
//! the corrected closed form reproduces it.

use num_rational::BigRational;
use twistfam_core::algebra::{is_prime, PrimeField};
use twistfam_core::families::{epsilon_law_check, family_lfunctions, verify_profile, FamilyId, FamilySpec, VerifyOptions};
use twistfam_core::lfunction::{check_functional_equation, LFunctionOptions};
use twistfam_core::places::Place;
use twistfam_core::reduction::{discriminant_places, Kodaira};

fn primes() -> Vec<u64> {
    (5..=47).filter(|&p| is_prime(p)).collect()
}

fn q(a: i64) -> BigRational {
    BigRational::from_integer(a.into())
}

/// `(members, law agrees with computed eps, computed eps = +1)`.
fn law_agreement(spec: &FamilySpec) -> (usize, usize, usize) {
    let (mut total, mut agree, mut plus) = (0, 0, 0);
    for p in primes().into_iter().filter(|&p| spec.exclusion(p).is_none()) {
        let field = PrimeField::new(p).unwrap();
        for (w, m) in spec.w_set(p).unwrap() {
            let rep = epsilon_law_check(spec, p, w).unwrap();
            total += 1;
            agree += usize::from(spec.epsilon_law_value(field, m) == Some(rep.computed));
            plus += usize::from(rep.computed == 1);
        }
    }
    (total, agree, plus)
}

#[test]
fn even_6mod8_root_number_is_the_character_of_minus_one() {
    for n in 0..=1 {
        let spec = FamilySpec::build(FamilyId::Even6Mod8, n).unwrap();
        for p in primes().into_iter().filter(|&p| spec.exclusion(p).is_none()) {
            let minus_one = PrimeField::new(p).unwrap().legendre(p - 1);
            for (w, _) in spec.w_set(p).unwrap() {
                assert_eq!(epsilon_law_check(&spec, p, w).unwrap().computed, minus_one, "n={n} p={p} w={w}");
            }
        }
        // There are 4n + 2 places of type I0*, so the character of -1 appears 4n + 2 times.
        let mut corrected = spec.clone();
        corrected.epsilon_law.as_mut().unwrap().factors.last_mut().unwrap().exp += 1;
        let (total, agree, _) = law_agreement(&corrected);
        assert!(total > 0);
        assert_eq!(agree, total);
        let (_, literal_agree, _) = law_agreement(&spec);
        assert!(literal_agree < total);
    }
}

#[test]
fn even_6mod8_functional_equation_confirms_the_sign() {
    let spec = FamilySpec::build(FamilyId::Even6Mod8, 0).unwrap();
    let ls = family_lfunctions(&spec, 7, &[1], &LFunctionOptions::default()).unwrap();
    assert!(!ls.is_empty());
    for l in ls {
        assert_eq!(l.invariants.epsilon, -1);
        assert!(check_functional_equation(&l.result.poly, -1).pass);
        assert!(!check_functional_equation(&l.result.poly, 1).pass);
    }
}

#[test]
fn case1_2ns_multiplicative_fiber_is_at_two() {
    let spec = FamilySpec::build(FamilyId::Case1TwoNonsquare, 2).unwrap();
    let inst = spec.instantiate(11, spec.w_set(11).unwrap()[0].0).unwrap();
    let field = inst.curve.field();
    let local = discriminant_places(&inst.curve).unwrap();
    let kod_at = |a: u64| local.iter().find(|d| d.place == Place::at(field, a)).map(|d| d.kodaira);
    assert_eq!(kod_at(2), Some(Kodaira::I(2)));
    assert_eq!(kod_at(1), Some(Kodaira::III));

    let mut corrected = spec.clone();
    let factor = &mut corrected.epsilon_law.as_mut().unwrap().factors[2];
    factor.linear = Some((q(2), q(-1)));
    factor.f_at = Some(q(2));
    let (total, agree, plus) = law_agreement(&corrected);
    assert_eq!(agree, total);
    // The root number genuinely takes both signs, so no law can make it constant.
    assert!(plus > 0 && plus < total);
}

#[test]
fn case4_7ns_parity_is_reversed() {
    for n in [2u32, 3] {
        let spec = FamilySpec::build(FamilyId::Case4SevenNonsquare, n).unwrap();
        let r = verify_profile(&spec, &primes(), &VerifyOptions::default());
        let want = if n % 2 == 0 { Kodaira::IVStar } else { Kodaira::II };
        let at_inf: Vec<Kodaira> =
            r.cells.iter().flat_map(|c| c.places.iter().filter(|p| p.place == "inf").map(|p| p.kodaira)).collect();
        assert!(!at_inf.is_empty());
        assert!(at_inf.iter().all(|&k| k == want), "n={n}");
        let gamma = if n % 2 == 0 { 42u32 } else { 14 };
        assert!(r.cells.iter().all(|c| c.invariants.as_ref().unwrap().gamma == gamma.into()));

        let other = FamilySpec::build(FamilyId::Case4SevenNonsquare, n + 1).unwrap();
        let mut swapped = spec.with_h(other.h.clone());
        let mut law = other.epsilon_law.clone().unwrap();
        *law.factors.last_mut().unwrap() = spec.epsilon_law.as_ref().unwrap().factors.last().unwrap().clone();
        swapped.epsilon_law = Some(law);
        let (total, agree, plus) = law_agreement(&swapped);
        assert!(total > 0);
        assert_eq!(agree, total);
        assert_eq!(plus, total);
    }
}
