//! Fixed-point complex numbers with a rigorous absolute error radius.
//!
//! A [`BigComplex`] stores integers `re`, `im`, `err` and a scale `bits`;
//! it denotes the closed disc of radius `err * 2^-bits` around
//! `(re + i*im) * 2^-bits`. Every operation returns a disc that contains
//! all results of applying the exact operation to points of the input
//! discs (triangle-inequality propagation plus one ulp per rounding).

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigComplex {
    re: BigInt,
    im: BigInt,
    err: BigUint,
    bits: u32,
}

/// Nearest-integer division by a positive divisor, reporting whether it was inexact.
fn round_div(n: &BigInt, d: &BigInt) -> (BigInt, bool) {
    let (q, r) = n.div_mod_floor(d);
    if r.is_zero() {
        return (q, false);
    }
    let twice: BigInt = &r << 1;
    if &twice >= d {
        (q + 1, true)
    } else {
        (q, true)
    }
}

fn round_shr(n: &BigInt, k: u32) -> (BigInt, bool) {
    if k == 0 {
        return (n.clone(), false);
    }
    let d = BigInt::one() << k;
    round_div(n, &d)
}

fn ceil_div_u(n: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

fn ceil_shr_u(n: &BigUint, k: u32) -> BigUint {
    if k == 0 {
        return n.clone();
    }
    let q = n >> k;
    if (&q << k) == *n {
        q
    } else {
        q + 1u32
    }
}

pub(crate) fn log2_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let b = n.bits();
    if b <= 64 {
        return n.to_f64().unwrap().log2();
    }
    let top = (n >> (b - 64)).to_f64().unwrap();
    top.log2() + (b - 64) as f64
}

impl BigComplex {
    pub fn zero(bits: u32) -> Self {
        BigComplex { re: BigInt::zero(), im: BigInt::zero(), err: BigUint::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        BigComplex { re: BigInt::one() << bits, im: BigInt::zero(), err: BigUint::zero(), bits }
    }

    /// Build directly from ulp-scaled parts.
    pub fn from_parts(re: BigInt, im: BigInt, err: BigUint, bits: u32) -> Self {
        BigComplex { re, im, err, bits }
    }

    pub fn from_int(v: &BigInt, bits: u32) -> Self {
        BigComplex { re: v << bits, im: BigInt::zero(), err: BigUint::zero(), bits }
    }

    /// Nearest fixed-point value to `q`; exact (err 0) when `q` is dyadic at this scale.
    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let scaled: BigInt = q.numer() << bits;
        let (re, inexact) = round_div(&scaled, q.denom());
        BigComplex {
            re,
            im: BigInt::zero(),
            err: if inexact { BigUint::one() } else { BigUint::zero() },
            bits,
        }
    }

    /// `sign * sqrt(q)` for `q >= 0`, real, within one ulp.
    pub fn from_signed_sqrt(q: &Rational, negative: bool, bits: u32) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        // floor(q * 4^bits), then integer square root.
        let num: BigInt = q.numer() << (2 * bits);
        let fl = num.div_floor(q.denom());
        let fl = fl.to_biguint().unwrap_or_default();
        let s = fl.sqrt();
        let exact = &s * &s == fl && (q.numer() << (2 * bits)).is_multiple_of(q.denom());
        let mut re = BigInt::from_biguint(Sign::Plus, s);
        if negative {
            re = -re;
        }
        BigComplex {
            re,
            im: BigInt::zero(),
            err: if exact { BigUint::zero() } else { BigUint::one() },
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn re_ulps(&self) -> &BigInt {
        &self.re
    }

    pub fn im_ulps(&self) -> &BigInt {
        &self.im
    }

    pub fn err_ulps(&self) -> &BigUint {
        &self.err
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    /// Widen the radius by `extra` ulps.
    pub fn inflate(&self, extra: &BigUint) -> Self {
        let mut out = self.clone();
        out.err += extra;
        out
    }

    pub fn swap_parts_i(&self) -> Self {
        // multiply by i
        BigComplex { re: -&self.im, im: self.re.clone(), err: self.err.clone(), bits: self.bits }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -&self.im, err: self.err.clone(), bits: self.bits }
    }

    pub fn real_part(&self) -> Self {
        BigComplex { re: self.re.clone(), im: BigInt::zero(), err: self.err.clone(), bits: self.bits }
    }

    pub fn imag_part(&self) -> Self {
        BigComplex { re: self.im.clone(), im: BigInt::zero(), err: self.err.clone(), bits: self.bits }
    }

    /// Combine a real part and an imaginary part given as two real discs.
    pub fn from_re_im(re: &BigComplex, im: &BigComplex) -> Self {
        assert_eq!(re.bits, im.bits);
        BigComplex {
            re: re.re.clone(),
            im: im.re.clone(),
            err: &re.err + &im.err,
            bits: re.bits,
        }
    }

    fn center_abs_sq(&self) -> BigUint {
        let s = &self.re * &self.re + &self.im * &self.im;
        s.to_biguint().unwrap()
    }

    /// Upper bound on |x| in ulps.
    pub fn abs_upper_ulps(&self) -> BigUint {
        let s = self.center_abs_sq();
        let r = s.sqrt();
        let r = if &r * &r == s { r } else { r + 1u32 };
        r + &self.err
    }

    /// Lower bound on |x| in ulps (0 when the disc contains the origin).
    pub fn abs_lower_ulps(&self) -> BigUint {
        let r = self.center_abs_sq().sqrt();
        if r > self.err {
            r - &self.err
        } else {
            BigUint::zero()
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower_ulps().is_zero()
    }

    /// Upper bound on log2|x| (+ a tiny safety margin); -inf for the exact zero.
    pub fn log2_abs_upper(&self) -> f64 {
        let u = self.abs_upper_ulps();
        let l = log2_biguint(&u);
        if l.is_infinite() {
            return l;
        }
        l - self.bits as f64 + 1e-9 * (1.0 + l.abs())
    }

    /// Lower bound on log2|x|; -inf when the disc touches the origin.
    pub fn log2_abs_lower(&self) -> f64 {
        let u = self.abs_lower_ulps();
        let l = log2_biguint(&u);
        if l.is_infinite() {
            return l;
        }
        l - self.bits as f64 - 1e-9 * (1.0 + l.abs())
    }

    /// Upper bound on log2 of the radius; -inf when exact.
    pub fn err_log2(&self) -> f64 {
        log2_biguint(&self.err) - self.bits as f64
    }

    /// Smallest integer `e` with radius <= 2^e (i64::MIN when exact).
    pub fn err_exponent(&self) -> i64 {
        if self.err.is_zero() {
            return i64::MIN;
        }
        let b = self.err.bits() as i64;
        let pow2 = self.err.count_ones() == 1;
        let e = if pow2 { b - 1 } else { b };
        e - self.bits as i64
    }

    pub fn to_f64_parts(&self) -> (f64, f64) {
        let s = 2f64.powi(-(self.bits as i32));
        let conv = |v: &BigInt| -> f64 {
            let b = v.bits();
            if b > 900 {
                let sh = b - 900;
                (v >> sh).to_f64().unwrap() * 2f64.powi(sh as i32) * s
            } else if self.bits > 900 {
                let sh = self.bits - 900;
                let (q, _) = round_shr(v, sh);
                q.to_f64().unwrap() * 2f64.powi(-900)
            } else {
                v.to_f64().unwrap() * s
            }
        };
        (conv(&self.re), conv(&self.im))
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        let (r, i) = self.to_f64_parts();
        num_complex::Complex64::new(r, i)
    }

    fn align(&self, other: &Self) {
        assert_eq!(self.bits, other.bits, "BigComplex precision mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.align(other);
        BigComplex {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
            err: &self.err + &other.err,
            bits: self.bits,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.align(other);
        BigComplex {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
            err: &self.err + &other.err,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: -&self.re, im: -&self.im, err: self.err.clone(), bits: self.bits }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.align(other);
        let b = self.bits;
        let rr = &self.re * &other.re - &self.im * &other.im;
        let ii = &self.re * &other.im + &self.im * &other.re;
        let (re, i1) = round_shr(&rr, b);
        let (im, i2) = round_shr(&ii, b);
        let mut err = BigUint::zero();
        if !self.err.is_zero() || !other.err.is_zero() {
            let mx = self.abs_upper_ulps() - &self.err;
            let my = other.abs_upper_ulps() - &other.err;
            let prop = &mx * &other.err + &my * &self.err + &self.err * &other.err;
            err = ceil_shr_u(&prop, b);
        }
        if i1 || i2 {
            err += 1u32;
        }
        BigComplex { re, im, err, bits: b }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Exact multiplication by an integer.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        BigComplex {
            re: &self.re * k,
            im: &self.im * k,
            err: &self.err * k.magnitude(),
            bits: self.bits,
        }
    }

    /// Division by a non-zero integer.
    pub fn div_int(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::DivByZero);
        }
        let (re0, im0) = if k.is_negative() { (-&self.re, -&self.im) } else { (self.re.clone(), self.im.clone()) };
        let kk = BigInt::from_biguint(Sign::Plus, k.magnitude().clone());
        let (re, i1) = round_div(&re0, &kk);
        let (im, i2) = round_div(&im0, &kk);
        let mut err = ceil_div_u(&self.err, k.magnitude());
        if i1 || i2 {
            err += 1u32;
        }
        Ok(BigComplex { re, im, err, bits: self.bits })
    }

    pub fn mul_rational(&self, q: &Rational) -> Result<Self> {
        self.mul_int(q.numer()).div_int(q.denom())
    }

    /// Multiply by 2^k exactly (k may be negative, which rounds).
    pub fn mul_pow2(&self, k: i32) -> Self {
        if k >= 0 {
            return BigComplex {
                re: &self.re << k as u32,
                im: &self.im << k as u32,
                err: &self.err << k as u32,
                bits: self.bits,
            };
        }
        let s = (-k) as u32;
        let (re, i1) = round_shr(&self.re, s);
        let (im, i2) = round_shr(&self.im, s);
        let mut err = ceil_shr_u(&self.err, s);
        if i1 || i2 {
            err += 1u32;
        }
        BigComplex { re, im, err, bits: self.bits }
    }

    /// Reciprocal; fails with `DivByZero` when the disc contains the origin.
    pub fn inv(&self) -> Result<Self> {
        let s = self.center_abs_sq();
        if s.is_zero() {
            return Err(Error::DivByZero);
        }
        let l = s.sqrt();
        if l <= self.err {
            return Err(Error::DivByZero);
        }
        let b = self.bits;
        let sb = BigInt::from_biguint(Sign::Plus, s.clone());
        let (re, i1) = round_div(&(&self.re << (2 * b)), &sb);
        let (im, i2) = round_div(&(-(&self.im << (2 * b))), &sb);
        let mut err = BigUint::zero();
        if !self.err.is_zero() {
            let num: BigUint = &self.err << (2 * b);
            let den = &l * (&l - &self.err);
            err = ceil_div_u(&num, &den);
        }
        if i1 || i2 {
            err += 1u32;
        }
        Ok(BigComplex { re, im, err, bits: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = BigComplex::one(self.bits);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            self.inv().map(|x| x.pow(e.unsigned_abs()))
        }
    }

    /// Re-express at another scale; coarsening rounds and widens the radius.
    pub fn with_bits(&self, bits: u32) -> Self {
        if bits >= self.bits {
            let k = bits - self.bits;
            return BigComplex {
                re: &self.re << k,
                im: &self.im << k,
                err: &self.err << k,
                bits,
            };
        }
        let k = self.bits - bits;
        let (re, i1) = round_shr(&self.re, k);
        let (im, i2) = round_shr(&self.im, k);
        let mut err = ceil_shr_u(&self.err, k);
        if i1 || i2 {
            err += 1u32;
        }
        BigComplex { re, im, err, bits }
    }

    /// True when the two discs intersect, i.e. the data is consistent with equality.
    pub fn overlaps(&self, other: &Self) -> bool {
        let (a, b) = if self.bits >= other.bits {
            (self.clone(), other.with_bits(self.bits))
        } else {
            (self.with_bits(other.bits), other.clone())
        };
        a.sub(&b).contains_zero()
    }

    /// Upper bound on |x - y| as a disc-free magnitude bound in log2.
    pub fn distance_log2_upper(&self, other: &Self) -> f64 {
        let (a, b) = if self.bits >= other.bits {
            (self.clone(), other.with_bits(self.bits))
        } else {
            (self.with_bits(other.bits), other.clone())
        };
        a.sub(&b).log2_abs_upper()
    }

    /// Decimal rendering of one real component with `digits` fractional digits.
    fn component_to_decimal(v: &BigInt, bits: u32, digits: usize) -> String {
        let scaled = v * num_traits::pow(BigInt::from(10), digits);
        let (q, _) = round_shr(&scaled, bits);
        let neg = q.is_negative();
        let s = q.magnitude().to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (ip, fp) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }

    pub fn re_decimal(&self, digits: usize) -> String {
        Self::component_to_decimal(&self.re, self.bits, digits)
    }

    pub fn im_decimal(&self, digits: usize) -> String {
        Self::component_to_decimal(&self.im, self.bits, digits)
    }

    /// Number of decimal digits that the radius leaves meaningful.
    pub fn significant_decimals(&self) -> usize {
        if self.err.is_zero() {
            return (self.bits as f64 * std::f64::consts::LOG10_2) as usize;
        }
        let e = -self.err_log2() * std::f64::consts::LOG10_2;
        e.floor().max(0.0) as usize
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.significant_decimals().clamp(1, 60);
        if self.im.is_zero() {
            write!(f, "{} ±2^{}", self.re_decimal(d), self.err_exponent())
        } else {
            write!(f, "({}, {}) ±2^{}", self.re_decimal(d), self.im_decimal(d), self.err_exponent())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::parse;

    const B: u32 = 128;

    fn r(s: &str) -> BigComplex {
        BigComplex::from_rational(&parse(s).unwrap(), B)
    }

    #[test]
    fn dyadic_is_exact() {
        let x = r("3/4");
        assert!(x.is_exact());
        assert_eq!(x.re_decimal(4), "0.7500");
        let y = r("1/3");
        assert_eq!(y.err_ulps(), &BigUint::one());
    }

    #[test]
    fn arithmetic_contains_truth() {
        let third = r("1/3");
        let three = r("3");
        let p = third.mul(&three);
        assert!(p.overlaps(&BigComplex::one(B)));
        let q = BigComplex::one(B).div(&three).unwrap();
        assert!(q.overlaps(&third));
        let s = third.add(&third).add(&third);
        assert!(s.overlaps(&BigComplex::one(B)));
    }

    #[test]
    fn complex_inverse() {
        // 1/(1+i) = (1-i)/2
        let z = BigComplex::from_re_im(&r("1"), &r("1"));
        let w = z.inv().unwrap();
        let expect = BigComplex::from_re_im(&r("1/2"), &r("-1/2"));
        assert!(w.overlaps(&expect));
        assert!(w.is_exact());
    }

    #[test]
    fn inverse_of_ball_containing_zero_fails() {
        let z = BigComplex::zero(B).inflate(&BigUint::from(3u32));
        assert_eq!(z.inv(), Err(Error::DivByZero));
    }

    #[test]
    fn sqrt_embedding() {
        let s = BigComplex::from_signed_sqrt(&parse("2").unwrap(), false, B);
        let sq = s.square();
        assert!(sq.overlaps(&r("2")));
        assert!(sq.err_log2() < -(B as f64) + 4.0);
        let four = BigComplex::from_signed_sqrt(&parse("16/9").unwrap(), true, B);
        assert!(four.overlaps(&r("-4/3")));
    }

    #[test]
    fn rescale_widens() {
        let x = r("1/3");
        let y = x.with_bits(64);
        assert!(y.overlaps(&x));
        assert_eq!(y.bits(), 64);
        let z = y.with_bits(200);
        assert!(z.overlaps(&x));
    }

    #[test]
    fn pow_and_log_bounds() {
        let half = r("1/2");
        let p = half.pow(10);
        assert!(p.overlaps(&r("1/1024")));
        assert!(p.log2_abs_upper() >= -10.0);
        assert!(p.log2_abs_lower() <= -10.0);
        assert!(p.log2_abs_upper() < -9.999);
    }

    #[test]
    fn decimal_output() {
        assert_eq!(r("-1/8").re_decimal(3), "-0.125");
        assert_eq!(r("5/2").re_decimal(0), "3");
        assert_eq!(r("1/1000").re_decimal(5), "0.00100");
    }
}
