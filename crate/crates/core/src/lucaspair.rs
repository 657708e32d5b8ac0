//! Binary recurrences `R_n = g1 γ1^n + g2 γ2^n`, `S_n = h1 γ1^n + h2 γ2^n`,
//! their reciprocal series, and the constants linking them to the
//! function-side series at `z = γ1^{-k}`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{AlgebraicInput, BigComplex, ExactComplex, PrecisionContext, Scalar};
use crate::periodic::PeriodicSeq;
use crate::series::{self, Coeffs, EvalResult, SeriesSpec};

/// `(F_n, F_{n+1})` for `n >= 0` by fast doubling.
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * ((&b << 1usize) - &a);
    let d = &a * &a + &b * &b;
    if n.is_multiple_of(2) {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

pub fn fib(n: i64) -> BigInt {
    let f = fib_pair(n.unsigned_abs()).0;
    if n < 0 && n % 2 == 0 {
        -f
    } else {
        f
    }
}

pub fn lucas(n: i64) -> BigInt {
    let m = n.unsigned_abs();
    let (f, f1) = fib_pair(m);
    let l = (f1 << 1usize) - f;
    if n < 0 && m % 2 == 1 {
        -l
    } else {
        l
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LucasPairParams {
    pub gamma1: AlgebraicInput,
    pub gamma2: AlgebraicInput,
    pub g1: AlgebraicInput,
    pub g2: AlgebraicInput,
    pub h1: AlgebraicInput,
    pub h2: AlgebraicInput,
}

/// Which recurrence of the pair a series is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Q,
    R,
    S,
}

impl Family {
    /// `Q`/`R`/`S`, with `F` and `L` accepted as the Fibonacci and Lucas names.
    pub fn parse(s: &str) -> Result<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "Q" => Ok(Family::Q),
            "R" | "F" => Ok(Family::R),
            "S" | "L" => Ok(Family::S),
            other => Err(Error::InvalidInput(format!("unknown family {other:?}"))),
        }
    }
}

fn q(s: &str) -> AlgebraicInput {
    AlgebraicInput::parse(s).expect("preset literal")
}

const NUMERIC_BITS: u32 = 256;

impl LucasPairParams {
    pub fn fibonacci() -> Self {
        LucasPairParams {
            gamma1: q("1/2 + 1/2*sqrt(5)"),
            gamma2: q("1/2 - 1/2*sqrt(5)"),
            g1: q("1/5*sqrt(5)"),
            g2: q("-1/5*sqrt(5)"),
            h1: q("1/5*sqrt(5)"),
            h2: q("-1/5*sqrt(5)"),
        }
    }

    pub fn lucas() -> Self {
        LucasPairParams {
            g1: q("1"),
            g2: q("1"),
            h1: q("1"),
            h2: q("1"),
            ..Self::fibonacci()
        }
    }

    /// `R_n = F_n`, `S_n = L_n`.
    pub fn fibonacci_lucas() -> Self {
        LucasPairParams { h1: q("1"), h2: q("1"), ..Self::fibonacci() }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "fibonacci" => Ok(Self::fibonacci()),
            "lucas" => Ok(Self::lucas()),
            "fibonacci-lucas" => Ok(Self::fibonacci_lucas()),
            other => Err(Error::InvalidInput(format!("unknown preset {other:?}"))),
        }
    }

    pub fn scalar(&self, x: &AlgebraicInput) -> Scalar {
        Scalar::from_input(x, NUMERIC_BITS)
    }

    /// Checks the standing hypotheses and returns `δ = γ1 γ2`.
    pub fn validate(&self) -> Result<i32> {
        for (name, v) in [
            ("gamma1", &self.gamma1),
            ("gamma2", &self.gamma2),
            ("g1", &self.g1),
            ("g2", &self.g2),
            ("h1", &self.h1),
            ("h2", &self.h2),
        ] {
            if v.is_zero() {
                return Err(Error::InvalidInput(format!("{name} must be non-zero")));
            }
        }
        let g1 = self.scalar(&self.gamma1);
        let lower = match &g1 {
            Scalar::Exact(e) => {
                if e.cmp_abs(&ExactComplex::one())? != std::cmp::Ordering::Greater {
                    return Err(Error::InvalidInput("|gamma1| must exceed 1".into()));
                }
                None
            }
            Scalar::Approx(c) => Some(c.log2_abs_lower()),
        };
        if let Some(l) = lower {
            if l <= 0.0 {
                return Err(Error::InvalidInput("|gamma1| must exceed 1".into()));
            }
        }
        let prod = g1.mul(&self.scalar(&self.gamma2), NUMERIC_BITS)?;
        match prod {
            Scalar::Exact(p) => {
                if p.is_one() {
                    Ok(1)
                } else if p.neg().is_one() {
                    Ok(-1)
                } else {
                    Err(Error::InvalidInput(format!("gamma1*gamma2 = {p} is not ±1")))
                }
            }
            Scalar::Approx(c) => {
                let one = BigComplex::one(c.bits());
                let tol = -(NUMERIC_BITS as f64) / 2.0;
                if c.distance_log2_upper(&one) < tol {
                    Ok(1)
                } else if c.distance_log2_upper(&one.neg()) < tol {
                    Ok(-1)
                } else {
                    Err(Error::InvalidInput("gamma1*gamma2 is not ±1".into()))
                }
            }
        }
    }

    pub fn delta(&self) -> Result<i32> {
        self.validate()
    }

    /// `Ω = g1 h2 / (g2 h1)`.
    pub fn omega(&self) -> Result<Scalar> {
        let b = NUMERIC_BITS;
        let num = self.scalar(&self.g1).mul(&self.scalar(&self.h2), b)?;
        let den = self.scalar(&self.g2).mul(&self.scalar(&self.h1), b)?;
        num.div(&den, b)
    }

    /// `γ1/γ2`.
    pub fn ratio(&self) -> Result<Scalar> {
        self.scalar(&self.gamma1).div(&self.scalar(&self.gamma2), NUMERIC_BITS)
    }

    fn coefficients(&self, family: Family) -> (&AlgebraicInput, &AlgebraicInput) {
        match family {
            Family::S => (&self.h1, &self.h2),
            _ => (&self.g1, &self.g2),
        }
    }

    fn exact_all(&self) -> Result<[ExactComplex; 6]> {
        Ok([
            self.gamma1.to_exact()?,
            self.gamma2.to_exact()?,
            self.g1.to_exact()?,
            self.g2.to_exact()?,
            self.h1.to_exact()?,
            self.h2.to_exact()?,
        ])
    }
}

fn exact_term(c1: &ExactComplex, g1: &ExactComplex, c2: &ExactComplex, g2: &ExactComplex, n: i64) -> Result<ExactComplex> {
    c1.mul(&g1.pow(n)?)?.add(&c2.mul(&g2.pow(n)?)?)
}

/// Exact `R_n`.
pub fn rn(params: &LucasPairParams, n: i64) -> Result<AlgebraicInput> {
    let [y1, y2, g1, g2, _, _] = params.exact_all()?;
    Ok(AlgebraicInput::from_exact(&exact_term(&g1, &y1, &g2, &y2, n)?))
}

/// Exact `S_n`.
pub fn sn(params: &LucasPairParams, n: i64) -> Result<AlgebraicInput> {
    let [y1, y2, _, _, h1, h2] = params.exact_all()?;
    Ok(AlgebraicInput::from_exact(&exact_term(&h1, &y1, &h2, &y2, n)?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumberSeriesSpec {
    pub family: Family,
    pub k: u64,
    pub r: u64,
    #[serde(default)]
    pub ell: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
    pub coeffs: PeriodicSeq,
    #[serde(default)]
    pub start_index: u64,
}

impl NumberSeriesSpec {
    pub fn r_family(k: u64, r: u64, ell: i64, coeffs: PeriodicSeq) -> Self {
        NumberSeriesSpec { family: Family::R, k, r, ell, mu: None, coeffs, start_index: 0 }
    }

    pub fn s_family(k: u64, r: u64, ell: i64, coeffs: PeriodicSeq) -> Self {
        NumberSeriesSpec { family: Family::S, k, r, ell, mu: None, coeffs, start_index: 0 }
    }

    pub fn q_family(k: u64, r: u64, mu: u64, coeffs: PeriodicSeq) -> Self {
        NumberSeriesSpec { family: Family::Q, k, r, ell: 0, mu: Some(mu), coeffs, start_index: 0 }
    }

    pub fn starting_at(mut self, h0: u64) -> Self {
        self.start_index = h0;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k < 1 || self.r < 2 {
            return Err(Error::InvalidInput("need k >= 1 and r >= 2".into()));
        }
        if self.family == Family::Q {
            let mu = self.mu.ok_or_else(|| Error::InvalidInput("family Q needs mu".into()))?;
            if mu < 1 || mu >= self.r {
                return Err(Error::InvalidInput(format!("mu = {mu} outside 1..{}", self.r - 1)));
            }
        }
        if self.coeffs.is_zero() {
            return Err(Error::InvalidInput("coefficients are all zero".into()));
        }
        Ok(())
    }

    /// `k r^h + ℓ`, or `None` past i64 range.
    fn index(&self, h: u64) -> Option<i64> {
        let p = (self.r as i64).checked_pow(u32::try_from(h).ok()?)?;
        (self.k as i64).checked_mul(p)?.checked_add(self.ell)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumberEvalResult {
    pub result: EvalResult,
    pub skipped_terms: Vec<u64>,
}

fn log2_up(x: &AlgebraicInput) -> f64 {
    x.embed_bits(96).log2_abs_upper()
}

fn log2_lo(x: &AlgebraicInput) -> f64 {
    x.embed_bits(96).log2_abs_lower()
}

/// Smallest `H` past which the tail is below `2^-target` and every
/// denominator is dominated by its leading term.
fn number_depth(params: &LucasPairParams, spec: &NumberSeriesSpec, target: u32) -> Result<(u64, f64)> {
    let lg = log2_lo(&params.gamma1);
    let lg2 = log2_up(&params.gamma2);
    let lc = spec.coeffs.values().iter().map(log2_up).fold(f64::NEG_INFINITY, f64::max);
    let (c1, c2) = params.coefficients(spec.family);
    let (l1, l2) = (log2_lo(c1), log2_up(c2));
    let kf = spec.k as f64;
    let rf = spec.r as f64;
    let mu = spec.mu.unwrap_or(1) as f64;
    let mut h = spec.start_index;
    loop {
        if h > spec.start_index + 200 {
            return Err(Error::DomainError("no truncation depth found".into()));
        }
        let n1 = kf * rf.powf((h + 1) as f64);
        let ok = match spec.family {
            Family::Q => {
                let ratio_ok = mu * n1 * (rf - 1.0) * lg >= 1.0;
                let bound = lc - mu * n1 * lg;
                (ratio_ok && bound + 1.0 <= -(target as f64)).then_some(bound + 1.0)
            }
            _ => {
                let n = n1 + spec.ell as f64;
                let dominated = n >= 0.0 && l2 + n * lg2 - l1 - n * lg <= -1.0;
                let ratio_ok = n1 * (rf - 1.0) * lg >= 1.0;
                let bound = lc + 1.0 - l1 - n * lg;
                (dominated && ratio_ok && bound + 1.0 <= -(target as f64)).then_some(bound + 1.0)
            }
        };
        if let Some(b) = ok {
            return Ok((h, b));
        }
        h += 1;
    }
}

/// `Q_{μ,r}`, `R_{ℓ,r}` or `S_{ℓ,r}` (primed sum from `start_index`).
pub fn eval_number_series(
    params: &LucasPairParams,
    spec: &NumberSeriesSpec,
    ctx: &PrecisionContext,
) -> Result<NumberEvalResult> {
    params.validate()?;
    spec.validate()?;
    let p = ctx.bits();
    let (hmax, tail) = number_depth(params, spec, p + 2)?;
    let max_index = spec
        .index(hmax)
        .ok_or_else(|| Error::DomainError("recurrence index overflow".into()))?
        .unsigned_abs()
        .max(1);
    let w = p + 64 + 2 * (64 - max_index.leading_zeros());
    let y1 = params.gamma1.embed_bits(w);
    let y2 = params.gamma2.embed_bits(w);
    let (c1_in, c2_in) = params.coefficients(spec.family);
    let (c1, c2) = (c1_in.embed_bits(w), c2_in.embed_bits(w));
    let exact = params.exact_all().ok();
    let coeff = |h: u64| spec.coeffs.term(h).embed_bits(w);

    let mut acc = BigComplex::zero(w);
    let mut skipped = Vec::new();
    let mut used = 0u64;
    // x1 = γ1^{k r^h}, x2 = γ2^{k r^h}
    let mut x1 = y1.pow(spec.k);
    let mut x2 = y2.pow(spec.k);
    let (t1, t2) = match spec.ell.signum() {
        0 => (BigComplex::one(w), BigComplex::one(w)),
        _ => (y1.powi(spec.ell)?, y2.powi(spec.ell)?),
    };
    for h in 0..=hmax {
        if h >= spec.start_index {
            let term = match spec.family {
                Family::Q => {
                    let m = spec.mu.unwrap();
                    Some(coeff(h).mul(&x1.pow(m).inv()?))
                }
                _ => {
                    let n = spec.index(h).ok_or_else(|| Error::DomainError("index overflow".into()))?;
                    if n < 0 {
                        None
                    } else {
                        // Exact zero test while the index is small enough to matter.
                        let exact_zero = match (&exact, n < 4096) {
                            (Some([e1, e2, g1, g2, h1, h2]), true) => {
                                let (a, b) = if spec.family == Family::S { (h1, h2) } else { (g1, g2) };
                                Some(exact_term(a, e1, b, e2, n)?.is_zero())
                            }
                            _ => None,
                        };
                        if exact_zero == Some(true) {
                            None
                        } else {
                            let den = c1.mul(&x1.mul(&t1)).add(&c2.mul(&x2.mul(&t2)));
                            if den.contains_zero() || den.log2_abs_upper() < -(p as f64) / 2.0 {
                                return Err(Error::PoleCollision { h });
                            }
                            Some(coeff(h).mul(&den.inv()?))
                        }
                    }
                }
            };
            match term {
                Some(t) => {
                    acc = acc.add(&t);
                    used += 1;
                }
                None => skipped.push(h),
            }
        }
        if h < hmax {
            x1 = x1.pow(spec.r);
            x2 = x2.pow(spec.r);
        }
    }
    if used == 0 {
        return Err(Error::EmptySeries);
    }
    let value = acc.with_bits(p).inflate(&BigUint::one());
    Ok(NumberEvalResult { result: EvalResult { value, terms_used: used, truncation_log2: tail }, skipped_terms: skipped })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformConsts {
    pub big_e: Scalar,
    pub e: Scalar,
    pub big_f: Scalar,
    pub f: Scalar,
    pub h_exact: bool,
    /// |e| and |f|, independent of r.
    pub abs_e: f64,
    pub abs_f: f64,
}

/// Parity of `k r^h` (h given) or `k r` (h absent).
fn sign_exponent_parity(k: u64, r: u64, h: Option<u64>) -> u64 {
    match h {
        Some(0) => k % 2,
        _ => (k % 2) * (r % 2),
    }
}

/// `E = δ^N g2 γ2^ℓ`, `e = -δ^{N+ℓ} g1 g2^{-1} γ1^{2ℓ}` and the `S` analogues,
/// with `N = k r^h` when `h` is given and `N = k r` otherwise.
pub fn transform_consts(params: &LucasPairParams, k: u64, r: u64, ell: i64, h: Option<u64>) -> Result<TransformConsts> {
    let delta = params.validate()?;
    let b = NUMERIC_BITS;
    let par = sign_exponent_parity(k, r, h);
    let sgn = |extra: i64| -> Scalar {
        let odd = (par as i64 + extra).rem_euclid(2) == 1;
        Scalar::int(if delta == -1 && odd { -1 } else { 1 })
    };
    let y1 = params.scalar(&params.gamma1);
    let y2 = params.scalar(&params.gamma2);
    let y2l = y2.pow(ell)?;
    let y1ll = y1.pow(2 * ell)?;
    let make = |c1: &AlgebraicInput, c2: &AlgebraicInput| -> Result<(Scalar, Scalar)> {
        let c1 = params.scalar(c1);
        let c2 = params.scalar(c2);
        let big = sgn(0).mul(&c2, b)?.mul(&y2l, b)?;
        let small = sgn(ell).mul(&c1, b)?.div(&c2, b)?.mul(&y1ll, b)?.neg();
        Ok((big, small))
    };
    let (big_e, e) = make(&params.g1, &params.g2)?;
    let (big_f, f) = make(&params.h1, &params.h2)?;
    let abs_e = e.to_complex64().norm();
    let abs_f = f.to_complex64().norm();
    Ok(TransformConsts { big_e, e, big_f, f, h_exact: h.is_some(), abs_e, abs_f })
}

/// Exact check of `R_{N+ℓ} = E γ1^N (γ1^{-2N} - e)` (and the `S` analogue), `N = k r^h`.
pub fn transform_identity_holds(params: &LucasPairParams, k: u64, r: u64, ell: i64, h: u64) -> Result<bool> {
    let cache = PowerCache::new(params)?;
    cache.identity_holds(k, r, ell, h)
}

/// Exact powers of γ1, γ2 shared across many identity checks.
pub struct PowerCache {
    ex: [ExactComplex; 6],
    params: LucasPairParams,
    memo: std::sync::Mutex<std::collections::HashMap<i64, (ExactComplex, ExactComplex)>>,
}

impl PowerCache {
    pub fn new(params: &LucasPairParams) -> Result<Self> {
        Ok(PowerCache { ex: params.exact_all()?, params: params.clone(), memo: Default::default() })
    }

    fn powers(&self, n: i64) -> Result<(ExactComplex, ExactComplex)> {
        if let Some(v) = self.memo.lock().unwrap().get(&n) {
            return Ok(v.clone());
        }
        let v = (self.ex[0].pow(n)?, self.ex[1].pow(n)?);
        self.memo.lock().unwrap().insert(n, v.clone());
        Ok(v)
    }

    pub fn identity_holds(&self, k: u64, r: u64, ell: i64, h: u64) -> Result<bool> {
        let n = (k as i64)
            .checked_mul((r as i64).checked_pow(h as u32).ok_or_else(|| Error::DomainError("overflow".into()))?)
            .ok_or_else(|| Error::DomainError("overflow".into()))?;
        let tc = transform_consts(&self.params, k, r, ell, Some(h))?;
        let (p1, p2) = self.powers(n)?;
        let (l1, l2) = (self.ex[0].pow(ell)?, self.ex[1].pow(ell)?);
        let inv2n = p1.mul(&p1)?.inv()?;
        let [_, _, g1, g2, h1, h2] = &self.ex;
        for ((c1, c2), (big, small)) in [((g1, g2), (&tc.big_e, &tc.e)), ((h1, h2), (&tc.big_f, &tc.f))] {
            let lhs = c1.mul(&p1.mul(&l1)?)?.add(&c2.mul(&p2.mul(&l2)?)?)?;
            let (Some(big), Some(small)) = (big.exact(), small.exact()) else {
                return Err(Error::ExactnessRequired);
            };
            let rhs = big.mul(&p1)?.mul(&inv2n.sub(small)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `γ1^{-k}` at working precision.
fn bridge_point(params: &LucasPairParams, k: u64, bits: u32) -> Result<BigComplex> {
    Ok(params.scalar(&params.gamma1).pow(-(k as i64))?.embed(bits))
}

fn exact_input(s: &Scalar) -> Result<AlgebraicInput> {
    s.exact().map(AlgebraicInput::from_exact).ok_or(Error::ExactnessRequired)
}

/// Number side (direct summation from `h0`) minus function side at `γ1^{-k}`.
///
/// `R` tail equals `E^{-1} Φ~` with pole `e`; `S` tail equals `F^{-1} Λ~` with
/// pole `f`; `Q` tail equals `Γ~_μ`. The shift `ell0` only relabels the
/// function-side index and is reported back unchanged.
pub fn verify_bridge(params: &LucasPairParams, spec: &NumberSeriesSpec, ell0: i64, ctx: &PrecisionContext) -> Result<BigComplex> {
    let _ = ell0;
    let h0 = spec.start_index;
    if h0 < 1 {
        return Err(Error::NotApplicable("bridge needs start index h0 >= 1".into()));
    }
    let number = eval_number_series(params, spec, ctx)?;
    if !number.skipped_terms.is_empty() {
        return Err(Error::NotApplicable(format!(
            "primed sum skips h = {:?}; raise h0 past them",
            number.skipped_terms
        )));
    }
    let p = ctx.bits();
    let z = bridge_point(params, spec.k, p + 64)?.with_bits(p);
    let coeffs = Coeffs::Periodic(spec.coeffs.clone());
    let (fspec, scale) = match spec.family {
        Family::Q => (SeriesSpec::gamma(spec.r, spec.mu.unwrap_or(1), coeffs), Scalar::int(1)),
        Family::R | Family::S => {
            let tc = transform_consts(params, spec.k, spec.r, spec.ell, Some(h0))?;
            if spec.family == Family::R {
                (SeriesSpec::phi(spec.r, exact_input(&tc.e)?, coeffs), tc.big_e.inv()?)
            } else {
                (SeriesSpec::lambda(spec.r, exact_input(&tc.f)?, coeffs), tc.big_f.inv()?)
            }
        }
    };
    let f = series::eval_series(&fspec.starting_at(h0), &z, ctx)?;
    let function_side = scale.embed(p).mul(&f.value);
    Ok(number.result.value.sub(&function_side))
}

/// `ℓ1` with `Ω = (γ1/γ2)^{ℓ1}` exactly, if any.
pub fn remark6_shift(params: &LucasPairParams, ctx: &PrecisionContext) -> Result<Option<i64>> {
    let omega = params.omega()?;
    let ratio = params.ratio()?;
    let m = crate::classify::power_membership_scalar(&omega, &ratio, ctx)?;
    Ok(if m.member { m.exponent } else { None })
}

/// `g2 R_{ℓ,r} - h2 γ2^{ℓ1} S_{ℓ+ℓ1,r}` with unit coefficients.
pub fn remark6_residual(
    params: &LucasPairParams,
    k: u64,
    r: u64,
    ell: i64,
    ell1: i64,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    match remark6_shift(params, ctx)? {
        Some(s) if s == ell1 => {}
        Some(s) => return Err(Error::NotApplicable(format!("Ω = (γ1/γ2)^{s}, not the requested power {ell1}"))),
        None => return Err(Error::NotApplicable("Ω is not an integer power of γ1/γ2".into())),
    }
    let (lhs, rhs) = remark6_pair(params, k, r, ell, ell1, ctx)?;
    Ok(lhs.sub(&rhs))
}

/// The two sides `g2 R_{ℓ,r}` and `h2 γ2^{ℓ1} S_{ℓ+ℓ1,r}` separately.
pub fn remark6_pair(
    params: &LucasPairParams,
    k: u64,
    r: u64,
    ell: i64,
    ell1: i64,
    ctx: &PrecisionContext,
) -> Result<(BigComplex, BigComplex)> {
    let p = ctx.bits();
    let rs = eval_number_series(params, &NumberSeriesSpec::r_family(k, r, ell, PeriodicSeq::ones()), ctx)?;
    let ss = eval_number_series(params, &NumberSeriesSpec::s_family(k, r, ell + ell1, PeriodicSeq::ones()), ctx)?;
    if rs.skipped_terms != ss.skipped_terms {
        return Err(Error::NotApplicable(format!(
            "primed sums skip different terms ({:?} vs {:?})",
            rs.skipped_terms, ss.skipped_terms
        )));
    }
    let g2 = params.scalar(&params.g2).embed(p);
    let c = params.scalar(&params.h2).mul(&params.scalar(&params.gamma2).pow(ell1)?, p)?.embed(p);
    Ok((g2.mul(&rs.result.value), c.mul(&ss.result.value)))
}
