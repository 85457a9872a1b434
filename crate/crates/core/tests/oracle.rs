mod common;

use common::{all_words, sized, stabilizer};
use num_complex::Complex;
use proptest::prelude::*;
use qed_core::enumerators::stabilizer_enumerators;
use qed_core::oracle::{
    classify_error, classify_error_dense, close_group, enumerators_bruteforce, pauli_matrix, pue_composite_exact,
    pue_nonstab_mc, stabilizer_projector, DenseOperator, ErrorClass,
};
use qed_core::pue::{pue_nonstabilizer, pue_stabilizer};
use qed_core::{catalog, parse_code, Gf4Vector, RunPlan};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_enumerators_match(c in sized(4, stabilizer)) {
        let (_, p) = stabilizer_projector(&c).unwrap();
        let k = 1usize << c.k().unwrap();
        prop_assert_eq!(enumerators_bruteforce(&p, k).unwrap(), stabilizer_enumerators(&c).unwrap());
    }

    #[test]
    fn classification_agrees_exhaustively(c in sized(4, stabilizer)) {
        let (_, p) = stabilizer_projector(&c).unwrap();
        for e in all_words(c.n()) {
            prop_assert_eq!(classify_error(&c, &e).unwrap(), classify_error_dense(&p, &e).unwrap());
        }
    }

    #[test]
    fn group_elements_fix_the_code(c in sized(4, stabilizer)) {
        let (group, p) = stabilizer_projector(&c).unwrap();
        prop_assert_eq!(group.elements().len(), 1usize << c.rank());
        for s in group.elements() {
            let e = pauli_matrix(&s.word).unwrap().scale(Complex::new(s.sign(), 0.0));
            prop_assert!(e.mul(&p).distance(&p) < 1e-10);
        }
    }

    #[test]
    fn composite_matches_closed_form(c in sized(3, stabilizer), prob in 0.0f64..=0.75) {
        let (_, p) = stabilizer_projector(&c).unwrap();
        let k = 1usize << c.k().unwrap();
        let pair = stabilizer_enumerators(&c).unwrap();
        let exact = pue_composite_exact(&p, k, prob).unwrap();
        prop_assert!((exact - pue_stabilizer(&pair, prob).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn catalog_projectors() {
    for entry in catalog::ENTRIES.iter().filter(|e| e.name != "steane713") {
        let code = entry.code().unwrap();
        let (_, p) = stabilizer_projector(&code).unwrap();
        let k = 1u64 << code.k().unwrap();
        assert!((p.trace().re - k as f64).abs() < 1e-10, "{}", entry.name);
        assert!(p.mul(&p).distance(&p) < 1e-10);
        assert!(p.is_hermitian(1e-10));
    }
    let steane = catalog::load("steane713").unwrap().unwrap();
    assert!(stabilizer_projector(&steane).is_err());
}

#[test]
fn adjoined_code_halves_the_trace() {
    let c = parse_code("XXXX\nZZZZ").unwrap();
    let ce = c.adjoin_error(&"XXII".parse().unwrap()).unwrap();
    let (_, p) = stabilizer_projector(&ce).unwrap();
    assert!((p.trace().re - 2.0).abs() < 1e-10);
}

#[test]
fn c422_classes() {
    let c = parse_code("XXXX\nZZZZ").unwrap();
    let (_, p) = stabilizer_projector(&c).unwrap();
    let e: Gf4Vector = "XIII".parse().unwrap();
    let pep = p.mul(&pauli_matrix(&e).unwrap()).mul(&p);
    assert!(pep.frobenius_norm() < 1e-12);
    assert_eq!(classify_error(&c, &e).unwrap(), ErrorClass::Detected);
    let e: Gf4Vector = "XXII".parse().unwrap();
    let ep = pauli_matrix(&e).unwrap().mul(&p);
    let leak = &(&DenseOperator::identity(16) - &p).mul(&ep);
    assert!(leak.frobenius_norm() < 1e-12);
    assert_eq!(classify_error(&c, &e).unwrap(), ErrorClass::Undetectable);
}

#[test]
fn closure_with_three_generators_matches_dense_products() {
    let gens: Vec<Gf4Vector> = ["XXXX", "ZZZZ", "XXII"].iter().map(|s| s.parse().unwrap()).collect();
    let g = close_group(4, &gens).unwrap();
    assert_eq!(g.elements().len(), 8);
    let signed = |e: &qed_core::oracle::SignedPauli| pauli_matrix(&e.word).unwrap().scale(Complex::new(e.sign(), 0.0));
    for a in g.elements() {
        for b in g.elements() {
            let c = g.find(&(&a.word ^ &b.word)).unwrap();
            assert!(signed(a).mul(&signed(b)).distance(&signed(c)) < 1e-12);
        }
    }
    let anti: Vec<Gf4Vector> = ["XXXX", "ZZII"].iter().map(|s| s.parse().unwrap()).collect();
    assert!(close_group(4, &anti).is_ok());
    let anti: Vec<Gf4Vector> = ["XXXX", "ZIII"].iter().map(|s| s.parse().unwrap()).collect();
    assert!(close_group(4, &anti).is_err());
}

#[test]
fn monte_carlo_bands_hold_for_most_seeds() {
    let c = parse_code("XXXX\nZZZZ").unwrap();
    let (_, p) = stabilizer_projector(&c).unwrap();
    let target = pue_nonstabilizer(&stabilizer_enumerators(&c).unwrap(), 0.2).unwrap();
    let inside = (0..20u64)
        .filter(|&seed| {
            let r = pue_nonstab_mc(&p, 4, 0.2, &RunPlan::new(1000, seed)).unwrap();
            (r.estimate - target).abs() <= 4.0 * r.stderr
        })
        .count();
    assert!(inside >= 19, "{inside}/20");
}

#[test]
fn sampled_errors_above_exact_range() {
    let c = catalog::load("five13").unwrap().unwrap();
    let (_, p) = stabilizer_projector(&c).unwrap();
    let target = pue_nonstabilizer(&stabilizer_enumerators(&c).unwrap(), 0.3).unwrap();
    let r = pue_nonstab_mc(&p, 2, 0.3, &RunPlan::new(40_000, 8)).unwrap();
    assert!((r.estimate - target).abs() <= 4.0 * r.stderr, "{r:?} vs {target}");
}
