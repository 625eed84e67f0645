//! Randomised algebraic properties.

use proptest::prelude::*;
use qsign::analytic::Enclosure;
use qsign::circle::{farey_arcs, ComplexHP};
use qsign::modular::dedekind_sum;
use qsign::qseries::{expand_product, ProductSpec, PsiFactor, QSeries};
use qsign::{Integer, Rational};
use rug::Float;

fn factor() -> impl Strategy<Value = PsiFactor> {
    (2u64..=12)
        .prop_flat_map(|m| (1..m, Just(m), prop_oneof![-4i64..=-1, 1i64..=4]))
        .prop_map(|(r, m, delta)| PsiFactor { r, m, delta })
}

fn spec() -> impl Strategy<Value = ProductSpec> {
    prop::collection::vec(factor(), 1..4).prop_map(|f| ProductSpec::new(f).unwrap())
}

fn coprime(d: i64, c: i64) -> bool {
    Integer::from(d).gcd(&Integer::from(c)) == 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_times_inverse_is_one(tail in prop::collection::vec(-50i64..50, 0..40)) {
        let mut c = vec![1i64];
        c.extend(tail);
        let s = QSeries::from_i64s(&c).unwrap();
        prop_assert!(s.mul(&s.inverse().unwrap()).unwrap().is_one());
    }

    #[test]
    fn product_times_negated_is_one(s in spec(), n in 0usize..150) {
        let p = expand_product(&s, n).mul(&expand_product(&s.negated(), n)).unwrap();
        prop_assert!(p.is_one());
    }

    #[test]
    fn spec_json_round_trip(s in spec()) {
        prop_assert_eq!(ProductSpec::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn dedekind_reciprocity_and_symmetry(c in 1i64..1_000_000, d in -1_000_000i64..1_000_000) {
        prop_assume!(d != 0 && coprime(d, c));
        let s = dedekind_sum(d, c).unwrap();
        prop_assert_eq!(dedekind_sum(d + c, c).unwrap(), s.clone());
        prop_assert_eq!(dedekind_sum(-d, c).unwrap(), Rational::from(-&s));
        if d > 0 {
            let rhs = (Rational::from((d, c)) + Rational::from((c, d)) + Rational::from((1, c * d))) / 12
                - Rational::from((1, 4));
            prop_assert_eq!(Rational::from(&s + &dedekind_sum(c, d).unwrap()), rhs);
        }
    }

    #[test]
    fn enclosure_ops_contain_exact(a in -1e6f64..1e6, b in -1e6f64..1e6) {
        prop_assume!(b.abs() > 1e-6);
        let (ea, eb) = (Enclosure::from_f64(a, 53), Enclosure::from_f64(b, 53));
        let (ra, rb) = (Rational::from_f64(a).unwrap(), Rational::from_f64(b).unwrap());
        let exact = |q: Rational| Enclosure::from_rational(&q, 2048);
        prop_assert!((&ea + &eb).encloses(&exact(Rational::from(&ra + &rb))));
        prop_assert!((&ea - &eb).encloses(&exact(Rational::from(&ra - &rb))));
        prop_assert!((&ea * &eb).encloses(&exact(Rational::from(&ra * &rb))));
        prop_assert!((&ea / &eb).encloses(&exact(Rational::from(&ra / &rb))));
    }

    #[test]
    fn enclosure_exp_contains_high_precision(x in -50f64..50.0) {
        let fine = Float::with_val(512, x).exp();
        prop_assert!(Enclosure::from_f64(x, 53).exp().contains(&fine));
    }

    #[test]
    fn complex_division_round_trips(a in -5f64..5.0, b in -5f64..5.0, c in -5f64..5.0, d in -5f64..5.0) {
        prop_assume!(c.hypot(d) > 1e-3);
        let x = ComplexHP::from_f64(a, b, 192);
        let y = ComplexHP::from_f64(c, d, 192);
        let back = (&x * &y).div(&y).unwrap();
        prop_assert!(back.re().contains_f64(a) && back.im().contains_f64(b));
    }

    #[test]
    fn farey_arcs_tile_the_circle(n in 1i64..60) {
        let arcs = farey_arcs(n).unwrap();
        let total = arcs.iter().fold(Rational::new(), |acc, a| acc + a.length());
        prop_assert_eq!(total, Rational::from(1));
        for w in arcs.windows(2) {
            let right = w[0].center() + w[0].theta_right.clone();
            let left = w[1].center() - w[1].theta_left.clone();
            prop_assert_eq!(right, left);
        }
    }
}
