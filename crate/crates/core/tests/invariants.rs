//! Cross-module invariants through the public API, over F_13.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twisted_core::families::witness::run_catalog;
use twisted_core::families::{classify_type, iso_decide, FamilyId, IsoDecision};
use twisted_core::freealg::parse_presentation;
use twisted_core::groebner::hilbert_function;
use twisted_core::sklyanin::{degenerate_class, is_type_ec, sklyanin_translation_check, DegenerateClass, SklyaninParams};
use twisted_core::FieldSpec;

const P: i64 = 13;

fn f13() -> FieldSpec {
    FieldSpec::fp(P as u64).unwrap()
}

fn tgh(g: i64, h: i64) -> FamilyId {
    FamilyId::parse("Tgh", &format!("g={g},h={h}"), &f13()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn elliptic_tgh_is_regular_of_type_ec(g in 0..P, h in 1..P) {
        prop_assume!((g * g + 4 * h) % P != 0);
        let p = tgh(g, h).make(&f13()).unwrap();
        prop_assert_eq!(hilbert_function(&p, 4).unwrap(), vec![1, 3, 6, 10, 15]);
        prop_assert_eq!(classify_type(&p).unwrap().name(), "EC");
    }

    #[test]
    fn presentation_json_round_trip(g in 0..P, h in 0..P) {
        let p = tgh(g, h).make(&f13()).unwrap();
        let q = parse_presentation(&p.to_json().to_string()).unwrap();
        prop_assert_eq!(p.relation_space(), q.relation_space());
    }

    #[test]
    fn iso_decide_is_reflexive(a in 2..P) {
        let pa = FamilyId::parse("Pa", &format!("a={a}"), &f13()).unwrap();
        if pa.validate(&f13()).is_ok() {
            let d = iso_decide(&pa, &pa, &f13()).unwrap();
            prop_assert!(matches!(d, IsoDecision::Isomorphic(_)), "{}", d.verdict());
        }
    }

    #[test]
    fn sklyanin_sigma_is_a_translation(a in 0..P, b in 0..P, c in 0..P) {
        prop_assume!(a != 0 || b != 0 || c != 0);
        let s = SklyaninParams::from_ints(&f13(), [a, b, c]).unwrap();
        prop_assume!(degenerate_class(&s) == DegenerateClass::NonDegenerate);
        prop_assume!(is_type_ec(&s).unwrap());
        prop_assert!(sklyanin_translation_check(&s).unwrap().ok());
    }

    #[test]
    fn witness_catalog_verifies(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, case) in run_catalog(&f13(), &mut rng) {
            // a family may have no admissible sample over F_13; a built witness must verify
            if let Ok(w) = case {
                prop_assert!(w.verify(), "{} with {}", name, w.params);
            }
        }
    }
}
