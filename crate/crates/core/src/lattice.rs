//! Integral LLL reduction and the integer-relation checks built on it:
//! relation detection, minimal polynomials and bounded-height
//! independence certificates.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{BigComplex, PrecisionContext, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBasis {
    pub rows: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidInput("rows of unequal dimension".into()));
        }
        Ok(LatticeBasis { rows })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

pub fn default_lovasz() -> Rational {
    Rational::new(BigInt::from(99), BigInt::from(100))
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `round(a / b)` for `b > 0`, halves rounded up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * 2u32 + b).div_floor(&(b * 2u32))
}

/// Reduced basis together with the Gram determinants `d_0 = 1, d_i = prod_{j<=i} |b*_j|^2`.
pub(crate) struct Reduced {
    pub rows: Vec<Vec<BigInt>>,
    pub d: Vec<BigInt>,
}

/// Integral LLL with exact Gram-Schmidt data (Cohen, Algorithm 2.6.7).
pub(crate) fn lll_integral(mut b: Vec<Vec<BigInt>>, delta: &Rational) -> Result<Reduced> {
    let n = b.len();
    let (p, q) = (delta.numer().clone(), delta.denom().clone());
    let mut d = vec![BigInt::zero(); n + 1];
    d[0] = BigInt::one();
    if n == 0 {
        return Ok(Reduced { rows: b, d });
    }
    // lam[k][j] = d_{j+1} mu_{k,j} for j < k; d is offset by one: d[i+1] belongs to row i.
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[1] = dot(&b[0], &b[0]);
    if d[1].is_zero() {
        return Err(Error::DegenerateBasis);
    }
    let mut kmax = 0usize;
    let mut k = 1usize;

    fn red(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
        if (&lam[k][l] * 2u32).abs() > d[l + 1] {
            let qq = round_div(&lam[k][l], &d[l + 1]);
            let bl = b[l].clone();
            for (x, y) in b[k].iter_mut().zip(&bl) {
                *x -= &qq * y;
            }
            lam[k][l] -= &qq * &d[l + 1];
            for i in 0..l {
                let t = &qq * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    }

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::DegenerateBasis);
                    }
                    d[k + 1] = u;
                }
            }
        }
        loop {
            red(&mut b, &mut lam, &d, k, k - 1);
            let l = &lam[k][k - 1];
            let lhs = &q * (&d[k + 1] * &d[k - 1] + l * l);
            let rhs = &p * &d[k] * &d[k];
            if lhs >= rhs {
                break;
            }
            // swap rows k-1 and k
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let lv = lam[k][k - 1].clone();
            let bb = (&d[k - 1] * &d[k + 1] + &lv * &lv) / &d[k];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &lv * &t) / &d[k];
                lam[i][k - 1] = (&bb * &t + &lv * &lam[i][k]) / &d[k + 1];
            }
            d[k] = bb;
            if k > 1 {
                k -= 1;
            }
        }
        for l in (0..k.saturating_sub(1)).rev() {
            red(&mut b, &mut lam, &d, k, l);
        }
        k += 1;
    }
    Ok(Reduced { rows: b, d })
}

pub fn lll_reduce(basis: &LatticeBasis, lovasz_param: &Rational) -> Result<LatticeBasis> {
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    if *lovasz_param <= quarter || *lovasz_param >= Rational::one() {
        return Err(Error::InvalidInput(format!("Lovasz parameter {lovasz_param} outside (1/4, 1)")));
    }
    let r = lll_integral(basis.rows.clone(), lovasz_param)?;
    LatticeBasis::new(r.rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub found: bool,
    pub coefficients: Option<Vec<BigInt>>,
    /// `|sum c_i x_i|` upper bound (at the verification precision when found).
    pub residual: f64,
    pub residual_log2: f64,
    /// No relation with max |c_i| at most this exists (meaningful when `found` is false).
    pub certified_height: u64,
    pub height_bound: u64,
    pub bits: u32,
    pub verified_bits: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
}

/// Recomputes the inputs at a requested precision.
pub type Evaluator<'a> = dyn Fn(&PrecisionContext) -> Result<Vec<BigComplex>> + 'a;

fn log2_u64(h: u64) -> f64 {
    (h.max(2) as f64).log2()
}

/// `P >= 4 n log2 H`.
fn check_precision(n: usize, height: u64, ctx: &PrecisionContext) -> Result<()> {
    let need = 4.0 * n as f64 * log2_u64(height);
    if (ctx.bits() as f64) < need {
        return Err(Error::PrecisionTooLow {
            bits: ctx.bits(),
            height,
            detail: format!("{n} values need at least {} bits", need.ceil()),
        });
    }
    Ok(())
}

fn residual_of(values: &[BigComplex], c: &[BigInt]) -> BigComplex {
    let bits = values[0].bits();
    values.iter().zip(c).fold(BigComplex::zero(bits), |acc, (x, ci)| acc.add(&x.mul_int(ci)))
}

fn max_abs(c: &[BigInt]) -> BigInt {
    c.iter().map(|x| x.abs()).max().unwrap_or_default()
}

fn normalize_sign(mut c: Vec<BigInt>) -> Vec<BigInt> {
    if let Some(first) = c.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            c.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    c
}

struct Search {
    report: RelationReport,
}

/// Core search with the precision rule applied for `rule_n` values.
fn search(values: &[BigComplex], height: u64, ctx: &PrecisionContext, rule_n: usize) -> Result<Search> {
    let n = values.len();
    if n < 2 {
        return Err(Error::InvalidInput("need at least two values".into()));
    }
    if height == 0 {
        return Err(Error::InvalidInput("height bound must be positive".into()));
    }
    check_precision(rule_n, height, ctx)?;
    let p = ctx.bits();
    let g = ctx.guard();
    let limit = BigUint::one() << g;
    let mut emax = BigUint::zero();
    for v in values {
        if v.bits() != p {
            return Err(Error::InvalidInput(format!("value at {} bits, context at {p}", v.bits())));
        }
        if *v.err_ulps() > limit {
            return Err(Error::PrecisionTooLow {
                bits: p,
                height,
                detail: format!("input error 2^{:.1} exceeds 2^(-P+guard)", v.err_log2()),
            });
        }
        emax = emax.max(v.err_ulps().clone());
    }
    let complex = values.iter().any(|v| !v.im_ulps().is_zero());
    let cols = if complex { 2 } else { 1 };
    let rows: Vec<Vec<BigInt>> = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut r = vec![BigInt::zero(); n + cols];
            r[i] = BigInt::one();
            r[n] = v.re_ulps() >> g;
            if complex {
                r[n + 1] = v.im_ulps() >> g;
            }
            r
        })
        .collect();
    let red = lll_integral(rows, &default_lovasz())?;

    let accept = -(p as f64) / 2.0;
    let gap = p as f64 / 4.0;
    let hb = BigInt::from(height);
    let mut cands: Vec<(Vec<BigInt>, f64)> = red
        .rows
        .iter()
        .map(|r| {
            let c = r[..n].to_vec();
            let res = residual_of(values, &c).log2_abs_upper();
            (c, res)
        })
        .collect();
    // deterministic order: by coefficient norm, then as reduced
    cands.sort_by(|a, b| {
        let na: BigInt = a.0.iter().map(|x| x * x).sum();
        let nb: BigInt = b.0.iter().map(|x| x * x).sum();
        na.cmp(&nb)
    });
    let mut report = RelationReport {
        found: false,
        coefficients: None,
        residual: 0.0,
        residual_log2: f64::NEG_INFINITY,
        certified_height: 0,
        height_bound: height,
        bits: p,
        verified_bits: p,
        basis: vec![],
    };
    if let Some(pos) = cands.iter().position(|(c, r)| *r < accept && max_abs(c) <= hb && !c.iter().all(|x| x.is_zero())) {
        let r1 = cands[pos].1;
        let next = cands.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, c)| c.1).fold(f64::INFINITY, f64::min);
        if next >= r1 + gap || next < accept {
            report.found = true;
            report.coefficients = Some(normalize_sign(cands[pos].0.clone()));
            report.residual_log2 = r1;
            report.residual = r1.exp2();
            return Ok(Search { report });
        }
    }
    // Certificate: every relation c with max |c_i| <= H gives a lattice vector
    // of squared norm at most n H^2 + cols (n H (E 2^-g + 1))^2.
    let mut min_gs = f64::INFINITY;
    for i in 0..n {
        let num = red.d[i + 1].to_f64().unwrap_or(f64::INFINITY);
        let den = red.d[i].to_f64().unwrap_or(f64::INFINITY);
        let v = if num.is_finite() && den.is_finite() {
            num / den
        } else {
            let (a, b) = (red.d[i + 1].bits() as f64, red.d[i].bits() as f64);
            (a - b - 1.0).exp2()
        };
        min_gs = min_gs.min(v);
    }
    let e = emax.to_f64().unwrap_or(f64::INFINITY) / (g as f64).exp2() + 1.0;
    let nf = n as f64;
    let per_h2 = nf + cols as f64 * (nf * e).powi(2);
    // tiny safety factor against f64 rounding
    let hmax = (min_gs / per_h2 * 0.999).sqrt().floor();
    let hmax = if min_gs.is_finite() { hmax } else { f64::MAX };
    report.certified_height = if hmax >= height as f64 { height } else { hmax.max(0.0) as u64 };
    Ok(Search { report })
}

fn reverify(report: &mut RelationReport, eval: Option<&Evaluator<'_>>, ctx: &PrecisionContext) -> Result<()> {
    let (Some(eval), Some(c)) = (eval, report.coefficients.clone()) else { return Ok(()) };
    let hi = ctx.doubled();
    let vals = eval(&hi)?;
    let r = residual_of(&vals, &c).log2_abs_upper();
    report.verified_bits = hi.bits();
    report.residual_log2 = r;
    report.residual = r.exp2();
    if r > -(ctx.bits() as f64) {
        report.found = false;
        report.coefficients = None;
    }
    Ok(())
}

/// Relation search on fixed values; the residual is checked at their own precision.
pub fn find_integer_relation(values: &[BigComplex], height_bound: u64, ctx: &PrecisionContext) -> Result<RelationReport> {
    Ok(search(values, height_bound, ctx, values.len())?.report)
}

/// Relation search whose hits are re-verified from values recomputed at `2P` bits.
pub fn find_integer_relation_with(eval: &Evaluator<'_>, height_bound: u64, ctx: &PrecisionContext) -> Result<RelationReport> {
    let vals = eval(ctx)?;
    let mut rep = search(&vals, height_bound, ctx, vals.len())?.report;
    reverify(&mut rep, Some(eval), ctx)?;
    Ok(rep)
}

/// Integer polynomial, coefficients from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        IntPoly { coeffs: c.iter().map(|&x| BigInt::from(x)).collect() }
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn powers(x: &BigComplex, d: usize) -> Vec<BigComplex> {
    let mut out = vec![BigComplex::one(x.bits())];
    for i in 0..d {
        out.push(out[i].mul(x));
    }
    out
}

fn to_poly(c: Vec<BigInt>) -> Option<IntPoly> {
    let mut c = c;
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() < 2 {
        return None;
    }
    let content = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let mut c: Vec<BigInt> = c.into_iter().map(|x| x / &content).collect();
    if c.last().unwrap().is_negative() {
        c.iter_mut().for_each(|x| *x = -&*x);
    }
    Some(IntPoly { coeffs: c })
}

fn minpoly_core(
    x: &BigComplex,
    eval: Option<&dyn Fn(&PrecisionContext) -> Result<BigComplex>>,
    max_degree: usize,
    height_bound: u64,
    ctx: &PrecisionContext,
) -> Result<Option<IntPoly>> {
    for d in 1..=max_degree {
        if check_precision(d + 1, height_bound, ctx).is_err() {
            return Ok(None);
        }
        let vals = powers(x, d);
        let mut rep = match search(&vals, height_bound, ctx, d + 1) {
            Ok(s) => s.report,
            Err(Error::PrecisionTooLow { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        if let Some(f) = eval {
            let ev = |c: &PrecisionContext| -> Result<Vec<BigComplex>> { Ok(powers(&f(c)?, d)) };
            reverify(&mut rep, Some(&ev), ctx)?;
        }
        if rep.found {
            if let Some(p) = rep.coefficients.and_then(to_poly) {
                if p.degree() == d {
                    return Ok(Some(p));
                }
            }
        }
    }
    Ok(None)
}

/// Lowest-degree integer polynomial vanishing at `x` within the bounds.
pub fn minimal_polynomial(x: &BigComplex, max_degree: usize, height_bound: u64, ctx: &PrecisionContext) -> Result<Option<IntPoly>> {
    minpoly_core(x, None, max_degree, height_bound, ctx)
}

/// As [`minimal_polynomial`], re-verifying the hit from `x` recomputed at `2P` bits.
pub fn minimal_polynomial_with(
    eval: &dyn Fn(&PrecisionContext) -> Result<BigComplex>,
    max_degree: usize,
    height_bound: u64,
    ctx: &PrecisionContext,
) -> Result<Option<IntPoly>> {
    let x = eval(ctx)?;
    minpoly_core(&x, Some(eval), max_degree, height_bound, ctx)
}

pub const MAX_MONOMIALS: usize = 200;

/// Exponent vectors of total degree at most `deg` in `n` variables,
/// graded by degree, then lexicographically descending.
pub fn monomial_exponents(n: usize, deg: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for t in 0..=deg {
        rec(n, t, &mut Vec::new(), &mut out);
    }
    out
}

fn monomial_name(names: &[String], e: &[usize]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(nm, &k)| if k == 1 { nm.clone() } else { format!("{nm}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn monomial_values(vals: &[BigComplex], exps: &[Vec<usize>]) -> Vec<BigComplex> {
    let bits = vals[0].bits();
    let maxd = exps.iter().flatten().copied().max().unwrap_or(0);
    let pw: Vec<Vec<BigComplex>> = vals.iter().map(|v| powers(v, maxd)).collect();
    exps.iter()
        .map(|e| e.iter().enumerate().fold(BigComplex::one(bits), |acc, (i, &k)| acc.mul(&pw[i][k])))
        .collect()
}

fn smoke_core(
    names: &[String],
    vals: &[BigComplex],
    eval: Option<&Evaluator<'_>>,
    monomial_degree: usize,
    height_bound: u64,
    ctx: &PrecisionContext,
) -> Result<RelationReport> {
    if vals.is_empty() {
        return Err(Error::InvalidInput("no values".into()));
    }
    let exps = monomial_exponents(vals.len(), monomial_degree);
    if exps.len() > MAX_MONOMIALS {
        return Err(Error::TooManyMonomials(exps.len()));
    }
    let mono = monomial_values(vals, &exps);
    let mut rep = search(&mono, height_bound, ctx, vals.len().max(2))?.report;
    if let Some(f) = eval {
        let ev = |c: &PrecisionContext| -> Result<Vec<BigComplex>> { Ok(monomial_values(&f(c)?, &exps)) };
        reverify(&mut rep, Some(&ev), ctx)?;
    }
    rep.basis = exps.iter().map(|e| monomial_name(names, e)).collect();
    Ok(rep)
}

/// Bounded-height search for a polynomial relation among named values.
pub fn independence_smoke(
    values: &[(String, BigComplex)],
    monomial_degree: usize,
    height_bound: u64,
    ctx: &PrecisionContext,
) -> Result<RelationReport> {
    let names: Vec<String> = values.iter().map(|v| v.0.clone()).collect();
    let vals: Vec<BigComplex> = values.iter().map(|v| v.1.clone()).collect();
    smoke_core(&names, &vals, None, monomial_degree, height_bound, ctx)
}

/// As [`independence_smoke`], re-verifying any hit at `2P` bits.
pub fn independence_smoke_with(
    names: &[String],
    eval: &Evaluator<'_>,
    monomial_degree: usize,
    height_bound: u64,
    ctx: &PrecisionContext,
) -> Result<RelationReport> {
    let vals = eval(ctx)?;
    if vals.len() != names.len() {
        return Err(Error::InvalidInput("names and values differ in length".into()));
    }
    smoke_core(names, &vals, Some(eval), monomial_degree, height_bound, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::AlgebraicInput;

    fn ctx(b: u32) -> PrecisionContext {
        PrecisionContext::new(b).unwrap()
    }

    fn val(s: &str, b: u32) -> BigComplex {
        AlgebraicInput::parse(s).unwrap().embed_bits(b)
    }

    #[test]
    fn identity_is_reduced() {
        let id = LatticeBasis::from_i64(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(lll_reduce(&id, &default_lovasz()).unwrap(), id);
        let dep = LatticeBasis::from_i64(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(lll_reduce(&dep, &default_lovasz()), Err(Error::DegenerateBasis));
    }

    #[test]
    fn small_relations() {
        let c = ctx(128);
        let r = find_integer_relation(&[val("1", 128), val("1/2", 128)], 100, &c).unwrap();
        assert!(r.found);
        assert_eq!(r.coefficients, Some(vec![BigInt::from(1), BigInt::from(-2)]));
        let c = ctx(256);
        let r = find_integer_relation(&[val("1", 256), val("sqrt(2)", 256), val("sqrt(3)", 256)], 100, &c).unwrap();
        assert!(!r.found);
        assert_eq!(r.certified_height, 100);
    }

    #[test]
    fn minimal_polynomials() {
        let c = ctx(256);
        let p = minimal_polynomial(&val("sqrt(2)", 256), 4, 1000, &c).unwrap().unwrap();
        assert_eq!(p, IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(p.to_string(), "x^2 - 2");
        let p = minimal_polynomial(&val("7/2 - 1/2*sqrt(5)", 256), 4, 1000, &c).unwrap().unwrap();
        assert_eq!(p, IntPoly::from_i64(&[11, -7, 1]));
        let c = ctx(512);
        let x = val("sqrt(2)", 512).add(&val("sqrt(3)", 512));
        let p = minimal_polynomial(&x, 4, 1000, &c).unwrap().unwrap();
        assert_eq!(p, IntPoly::from_i64(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn monomial_basis() {
        let e = monomial_exponents(2, 2);
        let names = ["x".to_string(), "y".to_string()];
        let n: Vec<String> = e.iter().map(|v| monomial_name(&names, v)).collect();
        assert_eq!(n, ["1", "x", "y", "x^2", "x*y", "y^2"]);
        let vals: Vec<(String, BigComplex)> = (0..6).map(|i| (format!("v{i}"), val("1/3", 128))).collect();
        assert_eq!(independence_smoke(&vals, 4, 10, &ctx(128)), Err(Error::TooManyMonomials(210)));
    }
}
