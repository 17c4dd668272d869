use adelic::qplaces::{log_abs_exact, PlaceQ, Prime};
use adelic::resultant::{
    eps_norm_log_p_exact, global_consistency_p1, local_height_p1_nonarch_exact, sphere_mc_log_integral, sylvester_res,
    BinaryForm, MCConfig,
};
use num_traits::Zero;
use proptest::prelude::*;

fn form(max_deg: usize) -> impl Strategy<Value = BinaryForm> {
    (prop::collection::vec(-9i64..=9, 0..=max_deg), 1i64..=9).prop_map(|(mut c, lead)| {
        c.insert(0, lead);
        BinaryForm::from_ints(&c)
    })
}

fn linear_pair() -> impl Strategy<Value = (BinaryForm, BinaryForm)> {
    prop::array::uniform4(-100i64..=100)
        .prop_map(|c| (BinaryForm::from_ints(&c[..2]), BinaryForm::from_ints(&c[2..])))
        .prop_filter("proper intersection", |(a, b)| !sylvester_res(a, b).unwrap().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn resultant_is_multiplicative(f1 in form(3), f2 in form(3), g in form(3)) {
        prop_assume!(f1.degree() + g.degree() > 0 && f2.degree() + g.degree() > 0);
        let lhs = sylvester_res(&f1.mul(&f2), &g).unwrap();
        prop_assert_eq!(lhs, sylvester_res(&f1, &g).unwrap() * sylvester_res(&f2, &g).unwrap());
    }

    #[test]
    fn nonarch_local_equality((s0, s1) in linear_pair(), p in prop::sample::select(vec![2u32, 3, 5, 7, 11])) {
        let p = Prime::new(p).unwrap();
        let delta = sylvester_res(&s0, &s1).unwrap();
        let h = local_height_p1_nonarch_exact(&s0, &s1, &p).unwrap();
        prop_assert_eq!(&h, &eps_norm_log_p_exact(&s0, &s1, &p).unwrap());
        prop_assert_eq!(h, log_abs_exact(&delta, &PlaceQ::Finite(p)).unwrap().neg());
    }

    #[test]
    fn global_sum_is_half((s0, s1) in linear_pair()) {
        prop_assert!((global_consistency_p1(&s0, &s1).unwrap().value - 0.5).abs() <= 1e-9);
    }
}

#[test]
fn doubling_samples_stays_within_band() {
    let (x0, x1) = (BinaryForm::from_ints(&[1, 0]), BinaryForm::from_ints(&[0, 1]));
    let a = sphere_mc_log_integral(&x0, &x1, &MCConfig { seed: 11, samples: 100_000 }).unwrap();
    let b = sphere_mc_log_integral(&x0, &x1, &MCConfig { seed: 11, samples: 200_000 }).unwrap();
    assert!((a.value - b.value).abs() <= 3.0 * a.stderr.max(b.stderr));
}

#[test]
fn estimate_is_independent_of_thread_count() {
    let (s0, s1) = (BinaryForm::from_ints(&[2, 1]), BinaryForm::from_ints(&[-1, 3]));
    let cfg = MCConfig { seed: 99, samples: 100_000 };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| sphere_mc_log_integral(&s0, &s1, &cfg).unwrap())
    };
    let (one, four) = (run(1), run(4));
    assert_eq!(one.value.to_bits(), four.value.to_bits());
    assert_eq!(one.stderr.to_bits(), four.stderr.to_bits());
}
