//! Mahler-type lacunary series and their functional equations.
//!
//! For `w_h = z^{r^h}` the three kinds have terms
//!
//! * gamma:  `c_h * w_h^mu`
//! * phi:    `c_h * w_h / (w_h^2 - alpha)`
//! * lambda: `c_h * w_h / (w_h^2 - beta)`
//!
//! with `c_h = a^h` (geometric) or `c_h = b_h` (periodic), summed over
//! `h >= start_index`.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{root_of_unity_exact, AlgebraicInput, BigComplex, ExactComplex, PrecisionContext};
use crate::periodic::PeriodicSeq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Gamma,
    Phi,
    Lambda,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coeffs {
    Geometric(AlgebraicInput),
    Periodic(PeriodicSeq),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    pub r: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pole: Option<AlgebraicInput>,
    pub coeffs: Coeffs,
    #[serde(default)]
    pub start_index: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalResult {
    pub value: BigComplex,
    pub terms_used: u64,
    /// log2 of the bound on the neglected tail (-inf when nothing was neglected).
    pub truncation_log2: f64,
}

impl SeriesSpec {
    pub fn gamma(r: u64, mu: u64, coeffs: Coeffs) -> Self {
        SeriesSpec { kind: SeriesKind::Gamma, r, mu: Some(mu), pole: None, coeffs, start_index: 0 }
    }

    pub fn phi(r: u64, alpha: AlgebraicInput, coeffs: Coeffs) -> Self {
        SeriesSpec { kind: SeriesKind::Phi, r, mu: None, pole: Some(alpha), coeffs, start_index: 0 }
    }

    pub fn lambda(r: u64, beta: AlgebraicInput, coeffs: Coeffs) -> Self {
        SeriesSpec { kind: SeriesKind::Lambda, r, mu: None, pole: Some(beta), coeffs, start_index: 0 }
    }

    pub fn starting_at(mut self, h0: u64) -> Self {
        self.start_index = h0;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::InvalidInput(format!("r = {} must be >= 2", self.r)));
        }
        match self.kind {
            SeriesKind::Gamma => {
                let mu = self.mu.ok_or_else(|| Error::InvalidInput("gamma needs mu".into()))?;
                if mu < 1 || mu >= self.r {
                    return Err(Error::InvalidInput(format!("mu = {mu} outside 1..{}", self.r - 1)));
                }
            }
            SeriesKind::Phi | SeriesKind::Lambda => match &self.pole {
                None => return Err(Error::InvalidInput("phi/lambda need a pole parameter".into())),
                Some(p) if p.is_zero() => return Err(Error::InvalidInput("pole parameter must be non-zero".into())),
                _ => {}
            },
        }
        match &self.coeffs {
            Coeffs::Geometric(a) if a.is_zero() => Err(Error::InvalidInput("geometric ratio must be non-zero".into())),
            Coeffs::Periodic(b) if b.is_zero() => Err(Error::InvalidInput("periodic coefficients are all zero".into())),
            _ => Ok(()),
        }
    }

    fn mu_exponent(&self) -> u64 {
        match self.kind {
            SeriesKind::Gamma => self.mu.unwrap_or(1),
            _ => 1,
        }
    }
}

/// Upper bound on log2 |a| from a 64-bit embedding.
fn log2_upper(x: &AlgebraicInput) -> f64 {
    x.embed_bits(96).log2_abs_upper()
}

fn log2_lower(x: &AlgebraicInput) -> f64 {
    x.embed_bits(96).log2_abs_lower()
}

/// log2 of the largest coefficient modulus at index h, as an upper bound.
fn log2_coeff_bound(coeffs: &Coeffs, h: u64) -> f64 {
    match coeffs {
        Coeffs::Geometric(a) => {
            let la = log2_upper(a);
            h as f64 * la
        }
        Coeffs::Periodic(b) => b.values().iter().map(log2_upper).fold(f64::NEG_INFINITY, f64::max),
    }
}

const MAX_DEPTH: u64 = 100_000;

/// Smallest `H >= start_index` whose neglected tail is below `2^-target_bits`.
pub fn truncation_depth(spec: &SeriesSpec, z: &BigComplex, target_bits: u32) -> Result<u64> {
    spec.validate()?;
    depth_with_bound(spec, z, target_bits).map(|(h, _)| h)
}

fn depth_with_bound(spec: &SeriesSpec, z: &BigComplex, target_bits: u32) -> Result<(u64, f64)> {
    if z.re_ulps().bits() == 0 && z.im_ulps().bits() == 0 && z.is_exact() {
        return Ok((0, f64::NEG_INFINITY));
    }
    let lz = z.log2_abs_upper();
    if lz >= 0.0 {
        return Err(Error::DomainError("series evaluated outside the unit disc".into()));
    }
    let r = spec.r as f64;
    let mu = spec.mu_exponent() as f64;
    let lp = spec.pole.as_ref().map(log2_lower);
    if lp == Some(f64::NEG_INFINITY) {
        return Err(Error::InvalidInput("pole parameter must be non-zero".into()));
    }
    let la = match &spec.coeffs {
        Coeffs::Geometric(a) => log2_upper(a),
        Coeffs::Periodic(_) => 0.0,
    };
    let geometric = matches!(spec.coeffs, Coeffs::Geometric(_));
    let mut h = spec.start_index;
    loop {
        if h > spec.start_index + MAX_DEPTH {
            return Err(Error::DomainError("series converges too slowly at this point".into()));
        }
        let n1 = r.powf((h + 1) as f64);
        // Denominator distance bound for all indices beyond h.
        let ld = match lp {
            None => Some(0.0),
            Some(lp) => {
                let gap = 2.0 * n1 * lz - lp;
                if gap < -1e-3 {
                    let d = lp + (-(gap.exp2())).ln_1p() / std::f64::consts::LN_2;
                    Some(d - 1e-9 * (1.0 + d.abs()))
                } else {
                    None
                }
            }
        };
        if let Some(ld) = ld {
            let ratio = if geometric { la } else { 0.0 } + mu * n1 * (r - 1.0) * lz;
            let bound = log2_coeff_bound(&spec.coeffs, h + 1) + mu * n1 * lz - ld;
            if ratio <= -1.0 && bound + 1.0 <= -(target_bits as f64) {
                return Ok((h, bound + 1.0));
            }
        }
        h += 1;
    }
}

/// Precomputed embeddings at working precision `w`.
struct Terms<'a> {
    spec: &'a SeriesSpec,
    w: u32,
    a: Option<BigComplex>,
    periodic: Vec<BigComplex>,
    pole: Option<BigComplex>,
}

impl<'a> Terms<'a> {
    fn new(spec: &'a SeriesSpec, w: u32) -> Self {
        let (a, periodic) = match &spec.coeffs {
            Coeffs::Geometric(a) => (Some(a.embed_bits(w)), Vec::new()),
            Coeffs::Periodic(b) => (None, b.values().iter().map(|v| v.embed_bits(w)).collect()),
        };
        let pole = spec.pole.as_ref().map(|p| p.embed_bits(w));
        Terms { spec, w, a, periodic, pole }
    }

    /// `q(w)`: the inhomogeneity evaluated at a power of z; checks poles.
    fn q(&self, x: &BigComplex, h: u64, pole_floor_log2: f64) -> Result<BigComplex> {
        match self.spec.kind {
            SeriesKind::Gamma => Ok(x.pow(self.spec.mu_exponent())),
            _ => {
                let den = x.square().sub(self.pole.as_ref().unwrap());
                if den.contains_zero() || den.log2_abs_upper() < pole_floor_log2 {
                    return Err(Error::PoleCollision { h });
                }
                x.div(&den).map_err(|_| Error::PoleCollision { h })
            }
        }
    }

    /// Sum of terms with `from <= h <= to` at z given at precision `w`.
    fn sum(&self, z: &BigComplex, from: u64, to: u64, pole_floor_log2: f64) -> Result<BigComplex> {
        let mut acc = BigComplex::zero(self.w);
        if from > to {
            return Ok(acc);
        }
        let mut x = z.clone();
        let mut apow = BigComplex::one(self.w);
        for h in 0..=to {
            if h >= from {
                let c = match &self.a {
                    Some(_) => apow.clone(),
                    None => self.periodic[(h % self.periodic.len() as u64) as usize].clone(),
                };
                acc = acc.add(&c.mul(&self.q(&x, h, pole_floor_log2)?));
            }
            if h < to {
                x = x.pow(self.spec.r);
                if let Some(a) = &self.a {
                    apow = apow.mul(a);
                }
            }
        }
        Ok(acc)
    }
}

fn working_bits(spec: &SeriesSpec, p: u32, terms: u64) -> u32 {
    let growth = log2_coeff_bound(&spec.coeffs, terms + spec.start_index).max(0.0).ceil() as u32;
    let lt = 64 - (terms + 1).leading_zeros();
    p + 32 + 2 * lt + growth.min(1 << 20)
}

fn is_exact_zero(z: &BigComplex) -> bool {
    z.is_exact() && z.re_ulps().bits() == 0 && z.im_ulps().bits() == 0
}

/// Value of the series at `z`, rounded to the context precision.
pub fn eval_series(spec: &SeriesSpec, z: &BigComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    spec.validate()?;
    let p = ctx.bits();
    if is_exact_zero(z) {
        return Ok(EvalResult { value: BigComplex::zero(p), terms_used: 0, truncation_log2: f64::NEG_INFINITY });
    }
    let (hmax, tail) = depth_with_bound(spec, z, p + 2)?;
    let terms = hmax + 1 - spec.start_index.min(hmax + 1);
    let w = working_bits(spec, p, terms);
    let t = Terms::new(spec, w);
    let floor = -(p as f64) / 4.0;
    let s = t.sum(&z.with_bits(w), spec.start_index, hmax, floor)?;
    let value = s.with_bits(p).inflate(&BigUint::one());
    Ok(EvalResult { value, terms_used: terms, truncation_log2: tail })
}

pub fn eval_at(spec: &SeriesSpec, z: &AlgebraicInput, ctx: &PrecisionContext) -> Result<EvalResult> {
    eval_series(spec, &z.embed_bits(ctx.bits()), ctx)
}

/// Finite sum over `start_index <= h < end`.
pub fn partial_sum(spec: &SeriesSpec, z: &BigComplex, end: u64, ctx: &PrecisionContext) -> Result<BigComplex> {
    spec.validate()?;
    let p = ctx.bits();
    if end <= spec.start_index {
        return Ok(BigComplex::zero(p));
    }
    let w = working_bits(spec, p, end - spec.start_index);
    let t = Terms::new(spec, w);
    Ok(t.sum(&z.with_bits(w), spec.start_index, end - 1, -(p as f64) / 4.0)?.with_bits(p))
}

/// Left side minus right side of the functional equation at `z`; zero up to its radius.
///
/// Geometric: `a f(z^r) - f(z) + a^{h0} q(z^{r^{h0}})`.
/// Periodic with period p: `f(z^{r^p}) - f(z) + sum_{h0 <= h < h0+p} b_h q(z^{r^h})`.
pub fn feq_residual(spec: &SeriesSpec, z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    spec.validate()?;
    let p = ctx.bits();
    let zp = z.with_bits(p);
    let f_z = eval_series(spec, &zp, ctx)?.value;
    let h0 = spec.start_index;
    match &spec.coeffs {
        Coeffs::Geometric(a) => {
            let zr = zp.pow(spec.r);
            let f_zr = eval_series(spec, &zr, ctx)?.value;
            let a = a.embed_bits(p);
            let head = partial_sum(spec, &zp, h0 + 1, ctx)?;
            Ok(a.mul(&f_zr).sub(&f_z).add(&head))
        }
        Coeffs::Periodic(b) => {
            let per = b.period() as u64;
            let mut zr = zp.clone();
            for _ in 0..per {
                zr = zr.pow(spec.r);
            }
            let f_zr = eval_series(spec, &zr, ctx)?.value;
            let head = partial_sum(spec, &zp, h0 + per, ctx)?;
            Ok(f_zr.sub(&f_z).add(&head))
        }
    }
}

/// `e^{pi i/3}`.
pub fn zeta() -> ExactComplex {
    root_of_unity_exact(6, 1).unwrap().unwrap()
}

/// The four (or two) series specs entering the given rational identity.
fn remark2_parts(case_id: u32) -> Result<Vec<(ExactComplex, SeriesSpec)>> {
    let z = zeta();
    let z2 = z.pow(2)?;
    let z4 = z.pow(4)?;
    let inp = |x: &ExactComplex| AlgebraicInput::from_exact(x);
    let geo = |a: i64| Coeffs::Geometric(AlgebraicInput::int(a));
    let one = ExactComplex::one();
    let inv1z = one.add(&z)?.inv()?;
    let (a, alpha, beta) = match case_id {
        1 | 2 => (1, one.clone(), one.clone()),
        3 => (1, z2.clone(), z4.clone()),
        4 => (-1, z2.clone(), z4.clone()),
        5 => (1, z4.clone(), z2.clone()),
        6 => (-1, z4.clone(), z2.clone()),
        other => return Err(Error::UnknownCase(other)),
    };
    let phi = SeriesSpec::phi(2, inp(&alpha), geo(a));
    let lam = SeriesSpec::lambda(2, inp(&beta), geo(a));
    Ok(match case_id {
        1 => vec![(one, phi)],
        2 => vec![(one, lam)],
        3 => vec![(z2.inv()?, phi), (z2, lam)],
        5 => vec![(z2.inv()?, lam), (z2, phi)],
        4 => vec![(inv1z.clone(), phi), (z.mul(&inv1z)?, lam)],
        _ => vec![(inv1z.clone(), lam), (z.mul(&inv1z)?, phi)],
    })
}

/// Right-hand rational function of the identity for the given case.
pub fn remark2_rational(case_id: u32, z: &BigComplex) -> Result<BigComplex> {
    let b = z.bits();
    let one = BigComplex::one(b);
    let z2 = z.square();
    let pole = |d: &BigComplex| d.inv().map_err(|_| Error::DomainError("z at a pole of the rational side".into()));
    match case_id {
        1 | 2 => Ok(z.mul(&pole(&z.sub(&one))?)),
        3 | 5 => {
            let num = z2.mul_int(&BigInt::from(2)).add(z);
            Ok(num.mul(&pole(&z2.add(z).add(&one))?))
        }
        4 | 6 => Ok(z.mul(&pole(&z2.add(z).add(&one))?)),
        other => Err(Error::UnknownCase(other)),
    }
}

/// Series combination minus rational function for the six rational cases.
pub fn remark2_residual(case_id: u32, z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    let parts = remark2_parts(case_id)?;
    let p = ctx.bits();
    let zp = z.with_bits(p);
    let mut lhs = BigComplex::zero(p);
    for (c, spec) in &parts {
        let v = eval_series(spec, &zp, ctx)?.value;
        lhs = lhs.add(&c.embed(p).mul(&v));
    }
    Ok(lhs.sub(&remark2_rational(case_id, &zp)?))
}

/// The combination alone (without subtracting the rational side).
pub fn remark2_combination(case_id: u32, z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    let p = ctx.bits();
    let zp = z.with_bits(p);
    let mut lhs = BigComplex::zero(p);
    for (c, spec) in &remark2_parts(case_id)? {
        lhs = lhs.add(&c.embed(p).mul(&eval_series(spec, &zp, ctx)?.value));
    }
    Ok(lhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::parse;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    fn z(s: &str, bits: u32) -> BigComplex {
        AlgebraicInput::parse(s).unwrap().embed_bits(bits)
    }

    fn one() -> Coeffs {
        Coeffs::Geometric(AlgebraicInput::int(1))
    }

    #[test]
    fn depth_examples() {
        let g = SeriesSpec::gamma(2, 1, one());
        assert_eq!(truncation_depth(&g, &z("1/2", 320), 256).unwrap(), 8);
        let f = SeriesSpec::phi(2, AlgebraicInput::int(1), one());
        assert_eq!(truncation_depth(&f, &z("1/2", 192), 128).unwrap(), 7);
        assert_eq!(truncation_depth(&f, &BigComplex::zero(128), 128).unwrap(), 0);
        assert!(matches!(truncation_depth(&g, &z("1", 128), 64), Err(Error::DomainError(_))));
    }

    #[test]
    fn telescoping_phi() {
        let f = SeriesSpec::phi(2, AlgebraicInput::int(1), one());
        let v = eval_series(&f, &z("1/2", 256), &ctx(256)).unwrap();
        assert!(v.value.overlaps(&BigComplex::from_int(&(-1).into(), 256)));
        assert!(v.value.err_log2() < -250.0);
    }

    #[test]
    fn gamma_value() {
        let g = SeriesSpec::gamma(2, 1, one());
        let v = eval_series(&g, &z("1/2", 128), &ctx(128)).unwrap();
        assert!(v.value.re_decimal(14).starts_with("0.81642150902189"));
        let zero = eval_series(&g, &BigComplex::zero(128), &ctx(128)).unwrap();
        assert_eq!(zero.terms_used, 0);
        assert!(zero.value.is_exact());
    }

    #[test]
    fn pole_collision() {
        // z^2 = 1/4 = alpha at h = 0
        let f = SeriesSpec::phi(2, AlgebraicInput::Rational(parse("1/4").unwrap()), one());
        assert_eq!(eval_series(&f, &z("1/2", 128), &ctx(128)).unwrap_err(), Error::PoleCollision { h: 0 });
        // z^8 = 1/256 at h = 2
        let f = SeriesSpec::phi(2, AlgebraicInput::Rational(parse("1/256").unwrap()), one());
        assert_eq!(eval_series(&f, &z("1/2", 128), &ctx(128)).unwrap_err(), Error::PoleCollision { h: 2 });
    }

    #[test]
    fn functional_equation_examples() {
        let c = ctx(256);
        let g = SeriesSpec::gamma(2, 1, one());
        let r = feq_residual(&g, &z("0.3", 256), &c).unwrap();
        assert!(r.contains_zero());
        assert!(r.err_log2() < -220.0);
        let f = SeriesSpec::phi(3, AlgebraicInput::parse("5/4").unwrap(), Coeffs::Geometric(AlgebraicInput::int(2)));
        let r = feq_residual(&f, &z("0.4+0.1i", 256), &c).unwrap();
        assert!(r.contains_zero());
    }

    #[test]
    fn remark2_values() {
        let c = ctx(256);
        let half = z("1/2", 256);
        for case in 1..=6 {
            let r = remark2_residual(case, &half, &c).unwrap();
            assert!(r.contains_zero(), "case {case}");
            assert!(r.err_log2() < -200.0, "case {case}");
        }
        let v4 = remark2_rational(4, &half).unwrap();
        assert!(v4.overlaps(&BigComplex::from_rational(&parse("2/7").unwrap(), 256)));
        let v3 = remark2_rational(3, &half).unwrap();
        assert!(v3.overlaps(&BigComplex::from_rational(&parse("4/7").unwrap(), 256)));
        assert_eq!(remark2_residual(7, &half, &c), Err(Error::UnknownCase(7)));
    }
}
