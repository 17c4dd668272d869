use adelic::polyring::{
    check_deg_identity, factor_univariate, gauss_norm_log, gauss_norm_log_exact, is_irreducible_univariate,
    parse_poly, parse_poly_any, MultiPoly, RatFunc, Weights,
};
use adelic::qplaces::Prime;
use adelic::Rat;
use proptest::prelude::*;

fn univariate(var: &'static str, max_deg: usize, bound: i64) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(move |c| {
        let coeffs: Vec<Rat> = c.into_iter().map(|x| Rat::from_integer(x.into())).collect();
        MultiPoly::from_univariate(var, &coeffs)
    })
}

fn rational() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn multivariate() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..3), rational()), 1..6).prop_map(|terms| {
        MultiPoly::new(
            vec!["x".into(), "y".into(), "z".into()],
            terms.into_iter().map(|((a, b, c), q)| (vec![a, b, c], q)),
        )
    })
}

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u32, 3, 5, 7, 11, 13, 97]).prop_map(|p| Prime::new(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_round_trip(fs in prop::collection::vec(univariate("x", 4, 9), 1..5)) {
        let f = fs.iter().fold(MultiPoly::one(), |acc, g| &acc * g);
        prop_assume!(!f.is_zero());
        let fac = factor_univariate(&f).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        for (i, (g, m)) in fac.factors.iter().enumerate() {
            prop_assert!(*m >= 1);
            prop_assert!(g.is_canonical());
            prop_assert!(is_irreducible_univariate(g).unwrap());
            for (h, _) in &fac.factors[i + 1..] {
                prop_assert!(g != h);
            }
        }
        let nontrivial = fs.iter().filter(|g| !g.is_constant()).count();
        let total: u32 = fac.factors.iter().map(|(_, m)| *m).sum();
        prop_assert!(total as usize >= nontrivial);
    }

    #[test]
    fn gauss_multiplicativity(f in multivariate(), g in multivariate(), p in prime()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = &f * &g;
        prop_assert_eq!(
            gauss_norm_log_exact(&fg, &p).unwrap(),
            gauss_norm_log_exact(&f, &p).unwrap().add(&gauss_norm_log_exact(&g, &p).unwrap())
        );
        let w = Weights::from([("x".to_string(), 1.7), ("y".to_string(), 0.4)]);
        let lhs = gauss_norm_log(&fg, &p, Some(&w)).unwrap();
        let rhs = gauss_norm_log(&f, &p, Some(&w)).unwrap() + gauss_norm_log(&g, &p, Some(&w)).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1.0));
    }

    #[test]
    fn gauss_ultrametric(f in multivariate(), g in multivariate(), p in prime()) {
        let s = &f + &g;
        prop_assume!(!f.is_zero() && !g.is_zero() && !s.is_zero());
        let a = gauss_norm_log_exact(&f, &p).unwrap();
        let b = gauss_norm_log_exact(&g, &p).unwrap();
        let c = gauss_norm_log_exact(&s, &p).unwrap();
        prop_assert!(c.argument() <= a.argument().max(b.argument()));
    }

    #[test]
    fn text_and_json_round_trip(f in multivariate()) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f.clone());
        let js = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(parse_poly_any(&js).unwrap(), f);
    }

    #[test]
    fn deg_identity(n in univariate("t", 5, 20), d in univariate("t", 5, 20)) {
        prop_assume!(!n.is_zero() && !d.is_zero());
        let g = RatFunc::new(n, d).unwrap();
        prop_assert!(check_deg_identity(&g).unwrap());
    }
}

#[test]
fn constants_have_no_factors() {
    for s in ["1", "-5", "3/7"] {
        assert!(factor_univariate(&parse_poly(s).unwrap()).unwrap().factors.is_empty());
    }
}

#[test]
fn factors_degree_thirty_products() {
    let f = parse_poly("x^10 - 3x^7 + x^2 + 5").unwrap();
    let g = parse_poly("7x^9 + 2x^4 - x + 1").unwrap();
    let h = parse_poly("x^11 + x^10 - 4").unwrap();
    let prod = &(&f * &g) * &h;
    let fac = factor_univariate(&prod).unwrap();
    assert_eq!(fac.expand(), prod);
    for (q, _) in &fac.factors {
        assert!(is_irreducible_univariate(q).unwrap());
    }
}
