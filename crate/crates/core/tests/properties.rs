//! Property tests over random inputs.

use fskew::cartier::{is_nilpotent, random_module, simple_factors, CartierJson, PointSet};
use fskew::cli::parse_skew_expr;
use fskew::fields::{FiniteField, PolyRing, RatFunc, Ring};
use fskew::ore::SkewField;
use fskew::skew::SkewRing;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn round_trip<R: Ring>(sr: &SkewRing<R>, seed: u64, max_deg: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let a = sr.random(&mut rng, max_deg);
        let text = sr.format(&a);
        let back = parse_skew_expr(sr, &text).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(back, a, "{text}");
        assert_eq!(sr.format(&back), text);
    }
}

#[test]
fn print_parse_round_trip() {
    round_trip(&SkewRing::new(FiniteField::gf(2, 1).unwrap()), 1, 6);
    round_trip(&SkewRing::new(FiniteField::gf(2, 2).unwrap()), 2, 5);
    round_trip(&SkewRing::new(FiniteField::gf(3, 2).unwrap()), 3, 5);
    round_trip(&SkewRing::new(FiniteField::gf(5, 3).unwrap()), 4, 4);
    round_trip(&SkewRing::new(PolyRing::new(FiniteField::gf(2, 1).unwrap())), 5, 4);
    round_trip(&SkewRing::new(PolyRing::new(FiniteField::gf(3, 2).unwrap())), 6, 3);
    round_trip(&SkewRing::new(RatFunc::new(FiniteField::gf(2, 1).unwrap())), 7, 3);
    round_trip(&SkewRing::new(RatFunc::new(FiniteField::gf(3, 1).unwrap())), 8, 3);
}

fn f9() -> SkewRing<FiniteField> {
    SkewRing::new(FiniteField::gf(3, 2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parser_is_total(s in "[0-9xtwF+*/^() -]{0,24}") {
        let sr = SkewRing::new(PolyRing::new(FiniteField::gf(2, 2).unwrap()));
        let _ = parse_skew_expr(&sr, &s);
    }

    #[test]
    fn degrees_add(seed in any::<u64>()) {
        let sr = f9();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sr.random(&mut rng, 5);
        let b = sr.random(&mut rng, 5);
        let ab = sr.mul(&a, &b);
        match (a.degree().finite(), b.degree().finite()) {
            (Some(x), Some(y)) => prop_assert_eq!(ab.degree().finite(), Some(x + y)),
            _ => prop_assert!(ab.is_zero()),
        }
    }

    #[test]
    fn left_division_multiplies_back(seed in any::<u64>()) {
        let sr = f9();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sr.random(&mut rng, 6);
        let b = sr.random_of_degree(&mut rng, 2);
        let (q, r) = sr.div_left(&a, &b).unwrap();
        prop_assert_eq!(sr.add(&sr.mul(&b, &q), &r), a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn lclm_degree_formula(seed in any::<u64>()) {
        let sr = SkewRing::new(FiniteField::gf(2, 2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sr.random_of_degree(&mut rng, 3);
        let b = sr.random_of_degree(&mut rng, 2);
        let g = sr.gcrd_lclm(&a, &b).unwrap();
        let deg = |x: &fskew::skew::SkewPoly<_>| x.degree().finite().unwrap();
        prop_assert_eq!(deg(&g.lclm) + deg(&g.gcrd), deg(&a) + deg(&b));
        prop_assert!(sr.is_monic(&g.gcrd));
        let (_, ra) = sr.div_right(&a, &g.gcrd).unwrap();
        let (_, rb) = sr.div_right(&b, &g.gcrd).unwrap();
        prop_assert!(ra.is_zero() && rb.is_zero());
    }

    #[test]
    fn skew_field_inverse(seed in any::<u64>()) {
        let d = SkewField::new(FiniteField::gf(2, 2).unwrap()).unwrap();
        let sr = d.ring().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = d.frac(sr.random_of_degree(&mut rng, 2), sr.random_of_degree(&mut rng, 1)).unwrap();
        let y = d.frac(sr.random(&mut rng, 2), sr.random_of_degree(&mut rng, 2)).unwrap();
        prop_assert!(d.is_one(&d.d_mul(&x, &d.d_inv(&x).unwrap()).unwrap()));
        prop_assert!(d.is_one(&d.d_mul(&d.d_inv(&x).unwrap(), &x).unwrap()));
        let lhs = d.d_mul(&d.d_add(&x, &y).unwrap(), &x).unwrap();
        let rhs = d.d_add(&d.d_mul(&x, &x).unwrap(), &d.d_mul(&y, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartier_json_round_trip(seed in any::<u64>(), n in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = PointSet { p: 2, base_exp: 1, degrees: vec![1, 2] };
        let m = random_module(&pts, &[n, 1], &mut rng).unwrap();
        let j = CartierJson::from_module(&m).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back = serde_json::from_str::<CartierJson>(&text).unwrap().to_module().unwrap();
        prop_assert_eq!(simple_factors(&back).unwrap(), simple_factors(&m).unwrap());
        prop_assert_eq!(is_nilpotent(&back), is_nilpotent(&m));
    }
}
