use mahler_core::classify::power_membership;
use mahler_core::lattice::{default_lovasz, find_integer_relation_with, lll_reduce, LatticeBasis};
use mahler_core::lucaspair::{transform_consts, transform_identity_holds, verify_bridge, LucasPairParams, NumberSeriesSpec};
use mahler_core::numerics::{AlgebraicInput, BigComplex, PrecisionContext};
use mahler_core::periodic::{dft_decompose, dft_reconstruct, PeriodicSeq};
use mahler_core::suites::lemma3_table_suite;
use num_bigint::BigInt;
use proptest::prelude::*;

fn ctx(bits: u32) -> PrecisionContext {
    PrecisionContext::new(bits).unwrap()
}

fn preset(i: usize) -> LucasPairParams {
    [LucasPairParams::fibonacci(), LucasPairParams::lucas(), LucasPairParams::fibonacci_lucas()][i].clone()
}

fn seq() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..5).prop_filter("not all zero", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn interleave_composes(v in seq(), j in 1usize..4, k in 1usize..4) {
        let b = PeriodicSeq::from_ints(&v).unwrap();
        prop_assert_eq!(b.interleave(j).unwrap().interleave(k).unwrap(), b.interleave(j * k).unwrap());
    }

    #[test]
    fn dft_round_trip(v in seq(), mult in 1usize..3) {
        let b = PeriodicSeq::from_ints(&v).unwrap();
        let n = b.period() * mult;
        let c = ctx(128);
        let back = dft_reconstruct(&dft_decompose(&b, n, &c).unwrap(), &c).unwrap();
        for (h, x) in back.iter().enumerate() {
            prop_assert!(x.overlaps(&b.term(h as u64).embed_bits(128)), "h = {}", h);
            prop_assert!(x.err_log2() < -100.0);
        }
    }

    #[test]
    fn powers_are_members(num in 2i64..9, den in 1i64..9, n in -40i64..40) {
        prop_assume!(num != den);
        let q = AlgebraicInput::parse(&format!("{num}/{den}")).unwrap();
        let x = AlgebraicInput::from_exact(&q.to_exact().unwrap().pow(n).unwrap());
        let m = power_membership(&x, &q, &ctx(128)).unwrap();
        prop_assert!(m.member);
        prop_assert_eq!(m.exponent, Some(n));
        prop_assert!(!m.numeric);
    }

    #[test]
    fn shifted_power_is_not_member(n in -20i64..20) {
        let q = AlgebraicInput::parse("3/2").unwrap();
        let shifted = q.to_exact().unwrap().pow(n).unwrap().mul(&AlgebraicInput::parse("5/4").unwrap().to_exact().unwrap()).unwrap();
        let m = power_membership(&AlgebraicInput::from_exact(&shifted), &q, &ctx(128)).unwrap();
        prop_assert!(!m.member);
    }

    #[test]
    fn independent_constants_equal_exact_for_positive_h(p in 0usize..3, k in 1u64..5, r in 2u64..5, ell in -3i64..4, h in 1u64..4) {
        let params = preset(p);
        let indep = transform_consts(&params, k, r, ell, None).unwrap();
        let exact = transform_consts(&params, k, r, ell, Some(h)).unwrap();
        prop_assert_eq!(&indep.big_e, &exact.big_e);
        prop_assert_eq!(&indep.e, &exact.e);
        prop_assert_eq!(&indep.big_f, &exact.big_f);
        prop_assert_eq!(&indep.f, &exact.f);
        prop_assert!(transform_identity_holds(&params, k, r, ell, h).unwrap());
    }

    #[test]
    fn bridge_tails_agree(p in 0usize..2, k in 1u64..3, r in 2u64..4, fam in 0usize..3, ell in -1i64..2, h0 in 1u64..3, v in seq()) {
        let params = preset(p);
        let b = PeriodicSeq::from_ints(&v).unwrap();
        let spec = match fam {
            0 => NumberSeriesSpec::q_family(k, r, 1 + (ell.rem_euclid(r as i64 - 1)) as u64, b),
            1 => NumberSeriesSpec::r_family(k, r, ell, b),
            _ => NumberSeriesSpec::s_family(k, r, ell, b),
        }
        .starting_at(h0);
        let res = verify_bridge(&params, &spec, 0, &ctx(192)).unwrap();
        prop_assert!(res.contains_zero());
        prop_assert!(res.err_log2() < -150.0);
    }

    #[test]
    fn lll_is_deterministic(rows in prop::collection::vec(prop::collection::vec(-50i64..=50, 4), 4)) {
        let Ok(basis) = LatticeBasis::from_i64(&rows) else { return Ok(()) };
        let a = lll_reduce(&basis, &default_lovasz());
        let b = lll_reduce(&basis, &default_lovasz());
        match (a, b) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(&a, &b);
                prop_assert_eq!(lll_reduce(&a, &default_lovasz()).unwrap(), a);
            }
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }
}

#[test]
fn lemma3_table_matches_remark2() {
    let rep = lemma3_table_suite(256, 7).unwrap();
    assert!(rep.all_pass(), "{:?}", rep.failures());
}

#[test]
fn spurious_relation_is_dropped_at_double_precision() {
    // x2 = x1/2 + 2^-180: a relation at 256 bits that fails once recomputed at 512
    let eval = |c: &PrecisionContext| {
        let bits = c.bits();
        let one = BigComplex::one(bits);
        let tiny = BigComplex::one(bits).mul_pow2(-180);
        Ok(vec![one.clone(), one.mul_pow2(-1).add(&tiny)])
    };
    let c = ctx(256);
    let rep = find_integer_relation_with(&eval, 100, &c).unwrap();
    assert!(!rep.found);
    assert!(rep.coefficients.is_none());
    assert_eq!(rep.verified_bits, 512);

    let honest = |c: &PrecisionContext| {
        let one = BigComplex::one(c.bits());
        Ok(vec![one.clone(), one.mul_pow2(-1)])
    };
    let rep = find_integer_relation_with(&honest, 100, &c).unwrap();
    assert!(rep.found);
    assert_eq!(rep.coefficients, Some(vec![BigInt::from(1), BigInt::from(-2)]));
}
