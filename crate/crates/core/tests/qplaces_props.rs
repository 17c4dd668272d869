use adelic::qplaces::{log_abs_exact, product_formula_value, weil_height_breakdown, weil_height_exact, PlaceQ, Prime};
use adelic::{LogRat, Rat};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (-5000i64..=5000, 1i64..=5000)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn rat() -> impl Strategy<Value = Rat> {
    (-500i64..=500, 1i64..=500).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn tuple() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(rat(), 1..5).prop_filter("not all zero", |v| v.iter().any(|x| !x.is_zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_formula_is_exact(q in nonzero_rat()) {
        prop_assert_eq!(product_formula_value(&q).unwrap(), Rat::one());
    }

    #[test]
    fn scaling_invariance(a in tuple(), c in nonzero_rat()) {
        let scaled: Vec<Rat> = a.iter().map(|x| x * &c).collect();
        prop_assert_eq!(weil_height_exact(&scaled).unwrap(), weil_height_exact(&a).unwrap());
    }

    #[test]
    fn permutation_and_appending(a in tuple(), extra in rat(), k in 0usize..5) {
        let h = weil_height_exact(&a).unwrap();
        let mut b = a.clone();
        b.rotate_left(k % a.len());
        prop_assert_eq!(weil_height_exact(&b).unwrap(), h.clone());
        b.push(extra);
        prop_assert!(weil_height_exact(&b).unwrap().argument() >= h.argument());
    }

    #[test]
    fn closed_form_matches_place_sum(a in tuple()) {
        let by_place: LogRat = weil_height_breakdown(&a).unwrap().into_iter().map(|(_, t)| t).sum();
        prop_assert_eq!(weil_height_exact(&a).unwrap(), by_place);
    }

    #[test]
    fn finite_log_abs_is_additive(x in nonzero_rat(), y in nonzero_rat(), p in prop::sample::select(vec![2u32, 3, 5, 7, 101])) {
        let place = PlaceQ::Finite(Prime::new(p).unwrap());
        let lhs = log_abs_exact(&(&x * &y), &place).unwrap();
        let rhs = log_abs_exact(&x, &place).unwrap().add(&log_abs_exact(&y, &place).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
