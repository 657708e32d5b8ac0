//! One pass/fail line per acceptance criterion.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use mahler_core::classify::classify_thm2;
use mahler_core::lattice::{
    independence_smoke_with, lll_reduce, default_lovasz, minimal_polynomial_with, IntPoly, LatticeBasis,
};
use mahler_core::lucaspair::{
    eval_number_series, fib, lucas, remark6_pair, remark6_residual, remark6_shift, LucasPairParams, NumberSeriesSpec,
};
use mahler_core::numerics::{AlgebraicInput, BigComplex, PrecisionContext};
use mahler_core::periodic::{rank_exact, PeriodicSeq};
use mahler_core::radix::decompose;
use mahler_core::suites;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240601;

struct Ledger {
    lines: Vec<(u32, bool, String)>,
}

impl Ledger {
    fn record(&mut self, id: u32, ok: bool, detail: String) {
        println!("criterion {id}: {} - {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((id, ok, detail));
    }
}

fn ctx(bits: u32) -> PrecisionContext {
    PrecisionContext::new(bits).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn criterion1() -> (bool, String) {
    let ((ok, detail), dt) = timed(|| {
        let f = LucasPairParams::fibonacci();
        let spec = NumberSeriesSpec::r_family(1, 2, 0, PeriodicSeq::ones());
        let c = ctx(256);
        let v = eval_number_series(&f, &spec, &c).unwrap().result.value;
        let oracle = AlgebraicInput::parse("7/2 - 1/2*sqrt(5)").unwrap().embed_bits(256);
        let matches = v.overlaps(&oracle);
        let eval = |c: &PrecisionContext| Ok(eval_number_series(&f, &spec, c)?.result.value);
        let poly = minimal_polynomial_with(&eval, 4, 1_000_000, &c).unwrap();
        let expect = IntPoly::from_i64(&[11, -7, 1]);
        let res = v.mul(&v).sub(&v.mul_int(&BigInt::from(7))).add(&BigComplex::from_int(&BigInt::from(11), 256));
        let res_log2 = res.log2_abs_upper();
        let ok = matches && poly.as_ref() == Some(&expect) && res_log2 <= -200.0;
        (ok, format!("value {} overlaps oracle: {matches}; minpoly {:?}; residual 2^{res_log2:.1}", v.re_decimal(20), poly.map(|p| p.to_string())))
    });
    (ok && dt < Duration::from_secs(5), format!("{detail}; {dt:.2?} (limit 5 s)"))
}

fn suite_line(rep: &suites::SuiteReport) -> String {
    let worst = rep.items.iter().map(|i| i.err_log2).fold(f64::NEG_INFINITY, f64::max);
    let fails: Vec<String> = rep.failures().iter().take(3).map(|i| format!("{} ({})", i.name, i.note)).collect();
    format!("{}/{} items pass, worst radius 2^{worst:.1}{}", rep.passed, rep.total, if fails.is_empty() { String::new() } else { format!(", failures: {fails:?}") })
}

fn criterion2() -> (bool, String) {
    let (rep, dt) = timed(|| suites::remark2_suite(256, SEED, 20).unwrap());
    let ok = rep.all_pass() && rep.total == 6 && rep.items.iter().all(|i| i.err_log2 <= -200.0);
    (ok && dt < Duration::from_secs(10), format!("{}; {dt:.2?} (limit 10 s)", suite_line(&rep)))
}

fn criterion3() -> (bool, String) {
    let (rep, dt) = timed(|| suites::feq_suite(192, SEED, 50).unwrap());
    (rep.all_pass() && rep.total == 150 && dt < Duration::from_secs(30), format!("{}; {dt:.2?} (limit 30 s)", suite_line(&rep)))
}

fn criterion4() -> (bool, String) {
    let (rep, dt) = timed(|| suites::transforms_suite(8, 3, &[2, 3, 4], 3).unwrap());
    let notes = rep.expected_notes.len();
    // delta = -1, so the h = 0 forms differ exactly when k is odd and r even: k in {1,3}, r in {2,4}, 7 values of l
    let ok = rep.all_pass() && rep.total == 63 && notes == 2 * 2 * 7;
    (ok, format!("{}; {notes} h=0 discrepancies reported as expected-note; {dt:.2?}", suite_line(&rep)))
}

fn criterion5() -> (bool, String) {
    let (rep, dt) = timed(|| suites::bridge_suite(256, &[1, 2], &[2, 3], &[-1, 0, 1], 1).unwrap());
    (rep.all_pass(), format!("{}; {dt:.2?}", suite_line(&rep)))
}

fn criterion6() -> (bool, String) {
    let c = ctx(256);
    let fl = LucasPairParams::fibonacci_lucas();
    let ones = PeriodicSeq::ones();
    let r1 = classify_thm2(&fl, &ones, &ones, 64, &c).unwrap();
    let ok1 = r1.removals == ["F_{0,2}"] && r1.cases.len() == 1 && r1.cases[0].case_id == "1" && r1.cases[0].witnesses["ell0"] == "0";
    let b12 = PeriodicSeq::from_ints(&[1, 2]).unwrap();
    let r2 = classify_thm2(&fl, &b12, &ones, 64, &c).unwrap();
    let ok2 = r2.generic && r2.removals.is_empty();
    let p = LucasPairParams {
        gamma1: AlgebraicInput::int(2),
        gamma2: AlgebraicInput::parse("1/2").unwrap(),
        g1: AlgebraicInput::int(1),
        g2: AlgebraicInput::parse("1/2 + 1/2*sqrt(3)*i").unwrap(),
        h1: AlgebraicInput::int(1),
        h2: AlgebraicInput::parse("1/2 - 1/2*sqrt(3)*i").unwrap(),
    };
    let r3 = classify_thm2(&p, &b12, &b12, 16, &c).unwrap();
    let ok3 = r3.cases.len() == 1
        && r3.cases[0].case_id == "3"
        && r3.cases[0].witnesses["ell0"] == "0"
        && r3.cases[0].witnesses["theta"] == "exp(2*pi*i/3)";
    (
        ok1 && ok2 && ok3,
        format!("b=(1): removals {:?}; b=(1,2): generic={}; constructed: cases {:?}", r1.removals, r2.generic, r3.cases),
    )
}

fn remark6_params() -> LucasPairParams {
    LucasPairParams {
        gamma1: AlgebraicInput::int(2),
        gamma2: AlgebraicInput::parse("1/2").unwrap(),
        g1: AlgebraicInput::int(1),
        g2: AlgebraicInput::int(1),
        h1: AlgebraicInput::int(1),
        h2: AlgebraicInput::int(4),
    }
}

fn criterion7() -> (bool, String) {
    let c = ctx(256);
    let p = remark6_params();
    let l1 = remark6_shift(&p, &c).unwrap();
    let mut ok = l1 == Some(1);
    let mut parts = vec![format!("l1 = {l1:?}")];
    for (k, r, ell) in [(1, 2, 0), (2, 3, 1), (1, 3, -1)] {
        let res = remark6_residual(&p, k, r, ell, 1, &c).unwrap();
        let good = res.contains_zero() && res.err_log2() <= -200.0;
        ok &= good;
        parts.push(format!("(k,r,l)=({k},{r},{ell}) radius 2^{:.1} contains 0: {}", res.err_log2(), res.contains_zero()));
    }
    let names = ["A".to_string(), "B".to_string()];
    let eval = |c: &PrecisionContext| {
        let (a, b) = remark6_pair(&p, 1, 2, 0, 1, c)?;
        Ok(vec![a, b])
    };
    let rep = independence_smoke_with(&names, &eval, 1, 1 << 20, &c).unwrap();
    let coeffs = rep.coefficients.clone().unwrap_or_default();
    let rel = coeffs == [BigInt::zero(), BigInt::one(), -BigInt::one()];
    ok &= rep.found && rel;
    parts.push(format!("smoke over {:?}: found={} coefficients {:?}", rep.basis, rep.found, coeffs));
    (ok, parts.join("; "))
}

fn criterion8() -> (bool, String) {
    let (out, dt) = timed(|| {
        let c = ctx(512);
        let h = 1u64 << 20;
        let names = ["G12", "G13", "G23"].map(String::from);
        let r1 = independence_smoke_with(&names, &suites::corollary_values, 2, h, &c).unwrap();
        let f = LucasPairParams::fibonacci();
        let l = LucasPairParams::lucas();
        let specs = [
            (&f, NumberSeriesSpec::q_family(1, 2, 1, PeriodicSeq::ones())),
            (&f, NumberSeriesSpec::r_family(1, 2, 1, PeriodicSeq::from_ints(&[1, 2]).unwrap())),
            (&l, NumberSeriesSpec::s_family(1, 2, 0, PeriodicSeq::ones())),
        ];
        let eval = |c: &PrecisionContext| -> mahler_core::Result<Vec<BigComplex>> {
            specs.iter().map(|(p, s)| Ok(eval_number_series(p, s, c)?.result.value)).collect()
        };
        let names = ["q12", "F12", "L02"].map(String::from);
        let r2 = independence_smoke_with(&names, &eval, 2, h, &c).unwrap();
        (r1, r2)
    });
    let (r1, r2) = out;
    let h = 1u64 << 20;
    let ok = !r1.found && r1.certified_height == h && !r2.found && r2.certified_height == h;
    (
        ok && dt < Duration::from_secs(120),
        format!(
            "Gamma set: found={} certified={}; q/F/L set: found={} certified={}; {} monomials each; {dt:.2?} (limit 120 s)",
            r1.found, r1.certified_height, r2.found, r2.certified_height, r1.basis.len()
        ),
    )
}

/// Smallest base for every perfect power up to `n`, by sieving powers.
fn radix_oracle(n: u64) -> Vec<(u64, u32)> {
    let mut best: Vec<(u64, u32)> = (0..=n).map(|m| (m, 1)).collect();
    let mut d = 2u64;
    while d * d <= n {
        let mut p = d * d;
        let mut j = 2;
        while p <= n {
            if best[p as usize].1 == 1 {
                best[p as usize] = (d, j);
            }
            p *= d;
            j += 1;
        }
        d += 1;
    }
    best
}

fn fib_iterative(n: i64) -> (BigInt, BigInt) {
    // (F_n, L_n) by stepping the recurrence forward or backward from (F_0, F_1), (L_0, L_1)
    let (mut f0, mut f1) = (BigInt::zero(), BigInt::one());
    let (mut l0, mut l1) = (BigInt::from(2), BigInt::one());
    if n >= 0 {
        for _ in 0..n {
            let f2 = &f0 + &f1;
            f0 = std::mem::replace(&mut f1, f2);
            let l2 = &l0 + &l1;
            l0 = std::mem::replace(&mut l1, l2);
        }
    } else {
        for _ in 0..-n {
            // y_{m-1} = y_{m+1} - y_m
            let fm = &f1 - &f0;
            f1 = std::mem::replace(&mut f0, fm);
            let lm = &l1 - &l0;
            l1 = std::mem::replace(&mut l0, lm);
        }
    }
    (f0, l0)
}

type Q = BigRational;

fn gram_schmidt(rows: &[Vec<BigInt>]) -> (Vec<Q>, Vec<Vec<Q>>) {
    let n = rows.len();
    let v: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|x| Q::from(x.clone())).collect()).collect();
    let dot = |a: &[Q], b: &[Q]| a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y);
    let mut bstar: Vec<Vec<Q>> = Vec::new();
    let mut norms = Vec::new();
    let mut mu = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        let mut w = v[i].clone();
        for j in 0..i {
            mu[i][j] = dot(&v[i], &bstar[j]) / &norms[j];
            for (wk, bk) in w.iter_mut().zip(&bstar[j]) {
                *wk -= &mu[i][j] * bk;
            }
        }
        norms.push(dot(&w, &w));
        bstar.push(w);
    }
    (norms, mu)
}

fn gram_det(rows: &[Vec<BigInt>]) -> Q {
    gram_schmidt(rows).0.iter().fold(Q::one(), |p, x| p * x)
}

/// Exact shortest squared length by enumeration over the reduced basis.
fn shortest_sq(rows: &[Vec<BigInt>]) -> f64 {
    let (norms, mu) = gram_schmidt(rows);
    let n = rows.len();
    let bn: Vec<f64> = norms.iter().map(|x| x.to_f64().unwrap()).collect();
    let m: Vec<Vec<f64>> = mu.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect()).collect();
    let mut best = bn[0] * (1.0 + 1e-9);
    let mut coef = vec![0i64; n];
    fn rec(i: usize, partial: f64, coef: &mut Vec<i64>, bn: &[f64], m: &[Vec<f64>], best: &mut f64) {
        let n = bn.len();
        let c: f64 = (i + 1..n).map(|j| coef[j] as f64 * m[j][i]).sum();
        let radius = ((*best - partial) / bn[i]).max(0.0).sqrt();
        let lo = (-c - radius).ceil() as i64;
        let hi = (-c + radius).floor() as i64;
        for x in lo..=hi {
            coef[i] = x;
            let t = x as f64 + c;
            let p = partial + t * t * bn[i];
            if p > *best {
                continue;
            }
            if i == 0 {
                if coef.iter().any(|&v| v != 0) && p > 0.5 {
                    *best = best.min(p);
                }
            } else {
                rec(i - 1, p, coef, bn, m, best);
            }
        }
        coef[i] = 0;
    }
    rec(n - 1, 0.0, &mut coef, &bn, &m, &mut best);
    best
}

fn lll_checks(rows: &[Vec<BigInt>]) -> Result<(), String> {
    let basis = LatticeBasis::new(rows.to_vec()).unwrap();
    let red = lll_reduce(&basis, &default_lovasz()).map_err(|e| e.to_string())?;
    let n = rows.len();
    let (norms, mu) = gram_schmidt(&red.rows);
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let delta = default_lovasz();
    for i in 0..n {
        for j in 0..i {
            if mu[i][j].abs() > half {
                return Err(format!("mu[{i}][{j}] = {}", mu[i][j]));
            }
        }
        if i > 0 && norms[i] < (&delta - &mu[i][i - 1] * &mu[i][i - 1]) * &norms[i - 1] {
            return Err(format!("Lovasz fails at {i}"));
        }
    }
    if gram_det(&red.rows) != gram_det(rows) {
        return Err("Gram determinant changed".into());
    }
    let b1: f64 = red.rows[0].iter().map(|x| x.to_f64().unwrap().powi(2)).sum();
    let lam1 = shortest_sq(&red.rows);
    if b1 > 2f64.powi(n as i32 - 1) * lam1 * (1.0 + 1e-9) {
        return Err(format!("|b1|^2 = {b1} vs lambda1^2 = {lam1}"));
    }
    Ok(())
}

fn criterion9() -> (bool, String) {
    let mut parts = Vec::new();
    let mut ok = true;

    let oracle = radix_oracle(1_000_000);
    let bad = (2..=1_000_000u64).find(|&n| {
        let d = decompose(n).unwrap();
        (d.d, d.j) != oracle[n as usize]
    });
    ok &= bad.is_none();
    parts.push(format!("radix on [2, 10^6]: {}", bad.map_or("exact".into(), |n| format!("mismatch at {n}"))));

    let bad = (-2000..=2000i64).find(|&n| {
        let (f, l) = fib_iterative(n);
        fib(n) != f || lucas(n) != l
    });
    ok &= bad.is_none();
    parts.push(format!("fib/lucas |n| <= 2000: {}", bad.map_or("exact".into(), |n| format!("mismatch at {n}"))));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut rank_fail = None;
    let mut rank_checks = 0;
    for p in 1..=5usize {
        for trial in 0..3 {
            let mut v: Vec<i64> = (0..p).map(|_| rng.gen_range(-2..=2)).collect();
            if v.iter().all(|&x| x == 0) {
                v[0] = 1;
            }
            if p >= 2 && trial == 0 && v.iter().all(|&x| x == v[0]) {
                v[1] = v[0] + 1;
            }
            let b = PeriodicSeq::from_ints(&v).unwrap();
            for s in 1..=5usize {
                let fact: usize = (1..=s).product();
                let terms = 2 * fact * p;
                let fam: Vec<PeriodicSeq> = (1..=s).map(|j| b.interleave(j).unwrap()).collect();
                if rank_exact(&fam, terms).unwrap() != s {
                    rank_fail.get_or_insert(format!("a) b={v:?} s={s}"));
                }
                let mut with_one = vec![PeriodicSeq::ones()];
                with_one.extend(fam);
                let expect = if b.is_constant() { s } else { s + 1 };
                if rank_exact(&with_one, terms).unwrap() != expect {
                    rank_fail.get_or_insert(format!("b) b={v:?} s={s}"));
                }
                rank_checks += 2;
            }
        }
    }
    ok &= rank_fail.is_none();
    parts.push(format!("rank properties a)/b): {rank_checks} checks, {}", rank_fail.unwrap_or("all hold".into())));

    let mut lll_fail = None;
    let mut done = 0;
    while done < 50 {
        let n = rng.gen_range(3..=6usize);
        let rows: Vec<Vec<BigInt>> = (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-100..=100))).collect()).collect();
        if gram_det(&rows).is_zero() {
            continue;
        }
        if let Err(e) = lll_checks(&rows) {
            lll_fail.get_or_insert(e);
        }
        done += 1;
    }
    ok &= lll_fail.is_none();
    parts.push(format!("LLL invariants on 50 random lattices: {}", lll_fail.unwrap_or("all hold".into())));
    (ok, parts.join("; "))
}

fn main() {
    let mut ledger = Ledger { lines: vec![] };
    let criteria: BTreeMap<u32, fn() -> (bool, String)> = [
        (1, criterion1 as fn() -> (bool, String)),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
    ]
    .into_iter()
    .collect();
    for (id, f) in criteria {
        let (ok, detail) = f();
        ledger.record(id, ok, detail);
    }
    let failed: Vec<u32> = ledger.lines.iter().filter(|l| !l.1).map(|l| l.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", ledger.lines.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
