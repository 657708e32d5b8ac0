//! Reduced big rationals.
//!
//! [`Rational`] is `num_rational::BigRational`; the helpers here keep the
//! reduced-form invariant but use a gcd that is fast when one operand is a
//! power of two times a small odd factor, which is the common shape of the
//! denominators met when powering quadratic units such as (1+sqrt 5)/2.
//! The stock binary gcd is quadratic in the bit length even in that case.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

fn gcd_uint(a: &BigUint, b: &BigUint) -> BigUint {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let tz = a.trailing_zeros().unwrap().min(b.trailing_zeros().unwrap());
    let mut x = a >> a.trailing_zeros().unwrap();
    let mut y = b >> b.trailing_zeros().unwrap();
    if x < y {
        std::mem::swap(&mut x, &mut y);
    }
    // Euclid by remainder: the first step collapses a huge operand onto a
    // small one, after which everything is cheap.
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
        if x.bits() < 128 && y.bits() < 128 {
            x = x.gcd(&y);
            break;
        }
    }
    x << tz
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from_biguint(Sign::Plus, gcd_uint(a.magnitude(), b.magnitude()))
}

/// Build `num/den` in lowest terms with a positive denominator.
pub fn normalize(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DivByZero);
    }
    if num.is_zero() {
        return Ok(Rational::zero());
    }
    let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
    let g = gcd(&num, &den);
    if g.is_one() {
        Ok(Rational::new_raw(num, den))
    } else {
        Ok(Rational::new_raw(num / &g, den / &g))
    }
}

fn norm_unchecked(num: BigInt, den: BigInt) -> Rational {
    normalize(num, den).expect("non-zero denominator")
}

pub fn add(x: &Rational, y: &Rational) -> Rational {
    if x.is_zero() {
        return y.clone();
    }
    if y.is_zero() {
        return x.clone();
    }
    if x.denom() == y.denom() {
        return norm_unchecked(x.numer() + y.numer(), x.denom().clone());
    }
    norm_unchecked(
        x.numer() * y.denom() + y.numer() * x.denom(),
        x.denom() * y.denom(),
    )
}

pub fn neg(x: &Rational) -> Rational {
    Rational::new_raw(-x.numer(), x.denom().clone())
}

pub fn sub(x: &Rational, y: &Rational) -> Rational {
    add(x, &neg(y))
}

pub fn mul(x: &Rational, y: &Rational) -> Rational {
    if x.is_zero() || y.is_zero() {
        return Rational::zero();
    }
    // Cross-reduce first so the products stay small.
    let g1 = gcd(x.numer(), y.denom());
    let g2 = gcd(y.numer(), x.denom());
    let num = (x.numer() / &g1) * (y.numer() / &g2);
    let den = (x.denom() / &g2) * (y.denom() / &g1);
    Rational::new_raw(num, den)
}

pub fn inv(x: &Rational) -> Result<Rational> {
    if x.is_zero() {
        return Err(Error::DivByZero);
    }
    let (n, d) = (x.numer().clone(), x.denom().clone());
    if n.is_negative() {
        Ok(Rational::new_raw(-d, -n))
    } else {
        Ok(Rational::new_raw(d, n))
    }
}

pub fn div(x: &Rational, y: &Rational) -> Result<Rational> {
    Ok(mul(x, &inv(y)?))
}

pub fn from_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parse `"p"`, `"p/q"` or a decimal literal such as `"-0.125"` or `"1e-3"`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse(p)?;
        let q = parse(q)?;
        return div(&p, &q).map_err(|_| bad());
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg_sign, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().map_err(|_| bad())?;
    if neg_sign {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    if scale >= 0 {
        Ok(Rational::from_integer(num * num_traits::pow(ten, scale as usize)))
    } else {
        normalize(num, num_traits::pow(ten, (-scale) as usize))
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    // Shift both into f64 range before dividing.
    let shift = (nb - 60).max(0);
    let dshift = (db - 60).max(0);
    let n = (x.numer() >> shift as usize).to_f64().unwrap_or(0.0);
    let d = (x.denom() >> dshift as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift - dshift) as i32)
}

pub fn is_dyadic(x: &Rational) -> bool {
    let d = x.denom().magnitude();
    d.count_ones() == 1
}

pub fn abs(x: &Rational) -> Rational {
    if x.is_negative() {
        neg(x)
    } else {
        x.clone()
    }
}

pub fn pow(x: &Rational, e: u64) -> Rational {
    let mut base = x.clone();
    let mut acc = Rational::one();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}
