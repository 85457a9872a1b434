mod common;

use common::{all_words, sized, stabilizer};
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use proptest::prelude::*;
use qed_core::enumerators::{
    binomial_moments, check_enum_properties, macwilliams, min_distance, stabilizer_enumerators_via, Direction,
    DualRoute,
};
use qed_core::parse_code;
use qed_core::pue::{pue_composite, pue_nonstabilizer, pue_stabilizer, pue_via_moments};

fn signed(v: &[BigUint]) -> Vec<BigInt> {
    v.iter().cloned().map(BigInt::from).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn routes_agree_and_properties_hold(c in sized(6, stabilizer)) {
        let a = stabilizer_enumerators_via(&c, DualRoute::Enumerate).unwrap();
        let b = stabilizer_enumerators_via(&c, DualRoute::MacWilliams).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(check_enum_properties(&a).all_passed());
        let d = min_distance(&a).unwrap();
        prop_assert!(d >= 1 && d <= c.n() + 1);
    }

    #[test]
    fn macwilliams_round_trip(c in sized(6, stabilizer)) {
        let pair = stabilizer_enumerators_via(&c, DualRoute::Enumerate).unwrap();
        let b = signed(pair.b());
        let k = pair.dimension();
        let fwd = macwilliams(&b, pair.n(), k, Direction::PrimalToDual).unwrap();
        prop_assert_eq!(&fwd, &signed(pair.bperp()));
        prop_assert_eq!(macwilliams(&fwd, pair.n(), k, Direction::DualToPrimal).unwrap(), b);
    }

    #[test]
    fn weight_counts_by_exhaustion(c in sized(5, stabilizer)) {
        let pair = stabilizer_enumerators_via(&c, DualRoute::MacWilliams).unwrap();
        let n = c.n();
        let mut b = vec![0u32; n + 1];
        let mut bp = vec![0u32; n + 1];
        for w in all_words(n) {
            if c.contains(&w) {
                b[w.weight()] += 1;
            }
            if c.is_orthogonal_to(&w).unwrap() {
                bp[w.weight()] += 1;
            }
        }
        let big = |v: Vec<u32>| v.into_iter().map(BigUint::from).collect::<Vec<_>>();
        prop_assert_eq!(pair.b(), &big(b)[..]);
        prop_assert_eq!(pair.bperp(), &big(bp)[..]);
    }

    #[test]
    fn functionals_agree(c in sized(6, stabilizer), p in 0.0f64..=0.75) {
        let pair = stabilizer_enumerators_via(&c, DualRoute::Auto).unwrap();
        let s = pue_stabilizer(&pair, p).unwrap();
        let m = pue_via_moments(&pair, p).unwrap();
        prop_assert!((0.0..=1.0).contains(&s));
        prop_assert!((s - m).abs() <= 1e-12 * s.abs().max(1e-300) || (s - m).abs() < 1e-15);
        prop_assert_eq!(pue_composite(&pair, p).unwrap(), s);
        let k = 2f64.powi(c.k().unwrap() as i32);
        let ns = pue_nonstabilizer(&pair, p).unwrap();
        if s > 0.0 {
            prop_assert!((ns / s - k / (k + 1.0)).abs() <= 1e-15);
        }
    }

    #[test]
    fn moments_identity(c in sized(6, stabilizer)) {
        let pair = stabilizer_enumerators_via(&c, DualRoute::Auto).unwrap();
        let n = pair.n();
        for dist in [pair.b(), pair.bperp()] {
            let m = binomial_moments(dist);
            prop_assert!(m[0].is_one());
            prop_assert_eq!(&m[n], &dist.iter().sum::<BigUint>());
            for x in 2..=(n as i64 + 2) {
                let x = BigInt::from(x);
                let y = BigInt::one();
                let lhs: BigInt = dist.iter().enumerate()
                    .map(|(i, b)| BigInt::from(b.clone()) * x.pow((n - i) as u32)).sum();
                let xm = &x - &y;
                let rhs: BigInt = m.iter().enumerate()
                    .map(|(w, b)| BigInt::from(b.clone()) * xm.pow((n - w) as u32)).sum();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn known_values() {
    let five = parse_code("XZZXI\nIXZZX\nXIXZZ\nZXIXZ").unwrap();
    let pair = stabilizer_enumerators_via(&five, DualRoute::Enumerate).unwrap();
    let s = |v: &[BigUint]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    assert_eq!(s(pair.b()), "1,0,0,0,15,0");
    assert_eq!(s(pair.bperp()), "1,0,0,30,15,18");
    assert_eq!(min_distance(&pair).unwrap(), 3);
    let trivial = parse_code("n=1 k=1").unwrap();
    let pair = stabilizer_enumerators_via(&trivial, DualRoute::Enumerate).unwrap();
    assert_eq!((s(pair.b()), s(pair.bperp())), ("1,0".into(), "1,3".into()));
    assert_eq!(min_distance(&pair).unwrap(), 1);
}

#[test]
fn synthetic_violation_is_flagged() {
    use qed_core::EnumeratorPair;
    let big = |v: &[u32]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
    let bad = EnumeratorPair::new(2, BigUint::one(), big(&[1, 0, 4]), big(&[1, 0, 3])).unwrap();
    assert!(!check_enum_properties(&bad).all_passed());
    let empty = EnumeratorPair::new(0, BigUint::one(), big(&[1]), big(&[1])).unwrap();
    assert!(check_enum_properties(&empty).all_passed());
}
