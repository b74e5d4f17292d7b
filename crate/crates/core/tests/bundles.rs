use cayley_core::bundles::{
    characteristic_number, make_string_bundle, milnor_sn, s_n_closed_form, BordismCombination, CompleteIntersection,
    P1Convention,
};
use cayley_core::{CayleyBundleSpec, Partition, PushforwardCache};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn string_bundles_have_no_defect(m in 0u32..20, mp in 0u32..20, n_f in 4u64..12) {
        let (m, mp) = (2 * m, 2 * mp);
        let spec = make_string_bundle(m, mp, n_f).unwrap();
        prop_assert!(spec.is_string());
        prop_assert!(spec.v.degrees.iter().chain(&spec.v_prime.degrees).all(|&d| d == 2 || d == 3));
    }

    #[test]
    fn engine_matches_closed_form(k in 2u32..8, extra in 0u32..6, n_f in 4u64..7) {
        let n = k + 2 + extra;
        let (m, mp) = (2 * k - 4, 2 * n - 2 * k - 4);
        let spec = make_string_bundle(m, mp, n_f).unwrap();
        let cache = PushforwardCache::global();
        let engine = characteristic_number(cache, &spec, &Partition::single(n)).unwrap();
        prop_assert_eq!(engine, s_n_closed_form(&spec, n).unwrap());
    }
}

#[test]
fn too_small_twist_is_rejected() {
    assert!(make_string_bundle(0, 0, 3).is_err());
    assert!(make_string_bundle(2, 2, 3).is_ok());
}

#[test]
fn combinations_are_linear() {
    let cache = PushforwardCache::new();
    let a = make_string_bundle(2, 4, 4).unwrap();
    let b = make_string_bundle(4, 2, 4).unwrap();
    let part = Partition::single(7);
    let sa = characteristic_number(&cache, &a, &part).unwrap();
    let sb = characteristic_number(&cache, &b, &part).unwrap();
    let combo = BordismCombination::new(vec![(BigInt::from(3), a.clone()), (BigInt::from(-2), b.clone())]).unwrap();
    assert_eq!(combo.characteristic_number(&cache, &part).unwrap(), 3 * &sa - 2 * &sb);
    // swapping the factors is the symmetry x1 <-> x2
    assert_eq!(sa, characteristic_number(&cache, &a.swapped(), &part).unwrap());
    let mixed = BordismCombination::new(vec![(BigInt::from(1), a), (BigInt::from(1), make_string_bundle(2, 2, 4).unwrap())]);
    assert!(mixed.is_err());
}

#[test]
fn milnor_hypersurfaces() {
    assert_eq!(milnor_sn(2, 2).unwrap(), BigInt::from(-10));
    assert!(milnor_sn(1, 2).is_err());
    assert!(milnor_sn(4, 2).is_err());
}

#[test]
fn p1_conventions_differ_only_in_the_fiber_term() {
    let spec = CayleyBundleSpec::new(2, CompleteIntersection::new(0, vec![]), CompleteIntersection::new(0, vec![]));
    let (lin, _) = spec.string_defect_with(P1Convention::Linear);
    let (quad, _) = spec.string_defect_with(P1Convention::Quadratic);
    assert_eq!(lin, BigInt::from(9));
    assert_eq!(quad, BigInt::from(17));
    assert!(!(lin - quad).is_zero());
}
