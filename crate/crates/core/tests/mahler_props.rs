use std::f64::consts::TAU;

use adelic::mahler::{mahler_jensen, torus_log_integral, torus_logmax_integral, QuadratureConfig};
use adelic::polyring::{parse_poly, MultiPoly};
use adelic::Rat;
use num_complex::Complex64;
use proptest::prelude::*;

fn univariate(min_deg: usize, max_deg: usize, bound: i64) -> impl Strategy<Value = MultiPoly> {
    (prop::collection::vec(-bound..=bound, min_deg..=max_deg), 1..=bound).prop_map(|(mut c, lead)| {
        c.push(lead);
        let coeffs: Vec<Rat> = c.into_iter().map(|x| Rat::from_integer(x.into())).collect();
        MultiPoly::from_univariate("x", &coeffs)
    })
}

fn cyclotomic(k: u32) -> MultiPoly {
    let mut f = &parse_poly(&format!("x^{k}")).unwrap() - &MultiPoly::one();
    for d in (1..k).filter(|d| k % d == 0) {
        f = f.div_exact(&cyclotomic(d)).unwrap();
    }
    f
}

#[test]
fn cyclotomic_measures_vanish() {
    for k in 1..=12 {
        let m = mahler_jensen(&cyclotomic(k)).unwrap();
        assert!(m.value.abs() <= 1e-9, "k={k}: {m:?}");
    }
}

#[test]
fn two_variable_reference_against_trapezoid() {
    // Midpoint grid of 4096² points for ln|1 + e(s) + e(t)|.
    let n = 4096;
    let h = 1.0 / n as f64;
    let roots: Vec<Complex64> = (0..n).map(|i| Complex64::from_polar(1.0, TAU * (i as f64 + 0.5) * h)).collect();
    let mut total = 0.0;
    for a in &roots {
        let row: f64 = roots.iter().map(|b| (1.0 + a + b).norm().ln()).sum();
        total += row;
    }
    let oracle = total * h * h;
    let q = torus_log_integral(&parse_poly("1 + x + y").unwrap(), &QuadratureConfig::default()).unwrap();
    assert!((oracle - 0.3230659472).abs() < 1e-6, "{oracle}");
    assert!((q.value - oracle).abs() < 1e-6, "{q:?} vs {oracle}");
}

#[test]
fn logmax_of_cyclic_shift_is_n_independent() {
    let cfg = QuadratureConfig::default();
    let v: Vec<f64> = (1..=3)
        .map(|n| torus_logmax_integral(&[MultiPoly::one(), parse_poly(&format!("T^{n} - 1")).unwrap()], &cfg).unwrap().value)
        .collect();
    for x in &v {
        assert!((x - v[0]).abs() <= 1e-6);
        assert!(*x <= 2f64.ln() + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jensen_lower_bound(f in univariate(1, 10, 30)) {
        let lead = f.leading_coeff().unwrap();
        let m = mahler_jensen(&f).unwrap();
        prop_assert!(m.value >= adelic::arith::ln_abs_rat(lead) - 1e-9);
    }

    #[test]
    fn jensen_additivity(f in univariate(1, 8, 12), g in univariate(1, 8, 12)) {
        let fg = &f * &g;
        let d = mahler_jensen(&fg).unwrap().value - mahler_jensen(&f).unwrap().value - mahler_jensen(&g).unwrap().value;
        prop_assert!(d.abs() <= 1e-9, "{}", d);
    }

    #[test]
    fn quadrature_matches_jensen(f in univariate(1, 10, 10)) {
        let q = torus_log_integral(&f, &QuadratureConfig::default()).unwrap();
        let j = mahler_jensen(&f).unwrap();
        prop_assert!((q.value - j.value).abs() <= q.abs_error_bound.max(1e-6), "{:?} {:?}", q, j);
    }
}
