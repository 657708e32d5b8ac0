use mahler_core::lucaspair::{eval_number_series, LucasPairParams, NumberSeriesSpec};
use mahler_core::numerics::{AlgebraicInput, BigComplex, PrecisionContext};
use mahler_core::periodic::PeriodicSeq;
use mahler_core::series::{eval_at, eval_series, partial_sum, Coeffs, SeriesSpec};
use proptest::prelude::*;

fn ctx(bits: u32) -> PrecisionContext {
    PrecisionContext::new(bits).unwrap()
}

fn dyadic(re: i64, im: i64, bits: u32) -> BigComplex {
    // (re + i im) / 2^20
    let re = AlgebraicInput::parse(&format!("{re}/1048576")).unwrap().embed_bits(bits);
    let im = AlgebraicInput::parse(&format!("{im}/1048576")).unwrap().embed_bits(bits);
    BigComplex::from_re_im(&re, &im)
}

fn pole_strategy() -> impl Strategy<Value = AlgebraicInput> {
    prop_oneof![Just("2"), Just("-3"), Just("5/4"), Just("3 + 2*i")].prop_map(|s| AlgebraicInput::parse(s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tilde_is_full_minus_partial(re in -600_000i64..600_000, im in -600_000i64..600_000, kind in 0usize..3, r in 2u64..4, m in 1u64..6, pole in pole_strategy(), v in prop::collection::vec(-3i64..=3, 1..4)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let c = ctx(160);
        let z = dyadic(re, im, 160);
        let coeffs = Coeffs::Periodic(PeriodicSeq::from_ints(&v).unwrap());
        let spec = match kind {
            0 => SeriesSpec::gamma(r, 1, coeffs),
            1 => SeriesSpec::phi(r, pole, coeffs),
            _ => SeriesSpec::lambda(r, pole, coeffs),
        };
        let full = eval_series(&spec, &z, &c).unwrap().value;
        let head = partial_sum(&spec, &z, m, &c).unwrap();
        let tail = eval_series(&spec.clone().starting_at(m), &z, &c).unwrap().value;
        prop_assert!(full.sub(&head).overlaps(&tail));
    }

    #[test]
    fn constant_periodic_is_scaled_geometric_one(re in -600_000i64..600_000, cnum in -7i64..=7, r in 2u64..4) {
        prop_assume!(cnum != 0);
        let c = ctx(160);
        let z = dyadic(re, 0, 160);
        let pole = AlgebraicInput::int(2);
        let periodic = SeriesSpec::phi(r, pole.clone(), Coeffs::Periodic(PeriodicSeq::from_ints(&[cnum]).unwrap()));
        let plain = SeriesSpec::phi(r, pole, Coeffs::Geometric(AlgebraicInput::int(1)));
        let a = eval_series(&periodic, &z, &c).unwrap().value;
        let b = eval_series(&plain, &z, &c).unwrap().value.mul_int(&cnum.into());
        prop_assert!(a.overlaps(&b));
    }

    #[test]
    fn q_family_is_gamma_at_inverse_power(k in 1u64..4, r in 2u64..4, mu_off in 0u64..3, v in prop::collection::vec(-3i64..=3, 1..4)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let mu = 1 + mu_off % (r - 1);
        let c = ctx(192);
        let params = LucasPairParams::fibonacci();
        let b = PeriodicSeq::from_ints(&v).unwrap();
        let number = eval_number_series(&params, &NumberSeriesSpec::q_family(k, r, mu, b.clone()), &c).unwrap();
        let g1 = params.gamma1.to_exact().unwrap();
        let z = AlgebraicInput::from_exact(&g1.pow(-(k as i64)).unwrap());
        let function = eval_at(&SeriesSpec::gamma(r, mu, Coeffs::Periodic(b)), &z, &c).unwrap();
        prop_assert!(number.result.value.overlaps(&function.value));
    }
}
