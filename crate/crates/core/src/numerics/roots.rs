//! Roots of unity and the constant pi in fixed point.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::complex::BigComplex;
use super::context::PrecisionContext;
use super::exact::{Exact, ExactComplex};
use super::rational::{self as rat};
use crate::error::{Error, Result};

const EXTRA: u32 = 64;

/// `2^w * atan(1/m)` truncated termwise; absolute error below `terms` ulps.
fn atan_inv(m: u64, w: u32) -> BigInt {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut power = (BigInt::one() << w) / &m;
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    let mut positive = true;
    while !power.is_zero() {
        let t = &power / BigInt::from(k);
        if positive {
            sum += t;
        } else {
            sum -= t;
        }
        positive = !positive;
        power /= &m2;
        k += 2;
    }
    sum
}

/// 2^w * pi, accurate to far fewer than 2^32 ulps.
fn pi_fixed(w: u32) -> BigInt {
    atan_inv(5, w) * 16 - atan_inv(239, w) * 4
}

pub fn pi(ctx: &PrecisionContext) -> BigComplex {
    let b = ctx.bits();
    let w = b + EXTRA;
    let p = pi_fixed(w);
    BigComplex::from_parts(p >> EXTRA, BigInt::zero(), BigUint::from(2u32), b)
}

/// (cos y, sin y) * 2^w for 0 <= y <= pi/4 given as y * 2^w.
fn cos_sin_fixed(y: &BigInt, w: u32) -> (BigInt, BigInt) {
    let mut cos = BigInt::zero();
    let mut sin = BigInt::zero();
    // term_n = y^n / n!
    let mut term = BigInt::one() << w;
    let mut n = 0u64;
    while !term.is_zero() {
        let sign_neg = (n / 2) % 2 == 1;
        let target = if n.is_multiple_of(2) { &mut cos } else { &mut sin };
        if sign_neg {
            *target -= &term;
        } else {
            *target += &term;
        }
        n += 1;
        term = ((&term * y) >> w) / BigInt::from(n);
    }
    (cos, sin)
}

/// Exact value of e^{2 pi i k/n} when n divides 12 or 8.
pub fn root_of_unity_exact(n: u64, k: i64) -> Result<Option<ExactComplex>> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let half = || rat::parse("1/2").unwrap();
    if 12 % n == 0 {
        // angle in units of pi/6
        let m = (k.rem_euclid(n as i64) as u64) * (12 / n);
        let s3 = |c: &str| Exact::sqrt_multiple(rat::parse(c).unwrap(), 3).unwrap();
        let cos_tab = |m: u64| -> Exact {
            match m % 12 {
                0 => Exact::one(),
                1 | 11 => s3("1/2"),
                2 | 10 => Exact::Rat(half()),
                3 | 9 => Exact::zero(),
                4 | 8 => Exact::Rat(rat::neg(&half())),
                5 | 7 => s3("-1/2"),
                _ => Exact::from_int(-1),
            }
        };
        let re = cos_tab(m);
        let im = cos_tab((m + 9) % 12);
        return ExactComplex::new(re, im).map(Some);
    }
    if n == 8 {
        let m = k.rem_euclid(8) as u64;
        let s2 = |c: &str| Exact::sqrt_multiple(rat::parse(c).unwrap(), 2).unwrap();
        let cos_tab = |m: u64| -> Exact {
            match m % 8 {
                0 => Exact::one(),
                1 | 7 => s2("1/2"),
                2 | 6 => Exact::zero(),
                3 | 5 => s2("-1/2"),
                _ => Exact::from_int(-1),
            }
        };
        return ExactComplex::new(cos_tab(m), cos_tab((m + 6) % 8)).map(Some);
    }
    Ok(None)
}

/// e^{2 pi i k/n} within two ulps of the working precision.
pub fn root_of_unity(n: u64, k: i64, ctx: &PrecisionContext) -> Result<BigComplex> {
    if let Some(x) = root_of_unity_exact(n, k)? {
        return Ok(x.embed(ctx.bits()));
    }
    let b = ctx.bits();
    let w = b + EXTRA;
    let m = k.rem_euclid(n as i64) as u64;
    // angle = (pi/4) * (8m/n) = (pi/4) * (octant + rho)
    let (octant, rem) = (8 * m as u128).div_rem(&(n as u128));
    let octant = octant as u64;
    let odd = octant % 2 == 1;
    let frac_num = if odd { n as u128 - rem } else { rem };
    let quarter_pi = pi_fixed(w) >> 2;
    let y = (quarter_pi * BigInt::from(frac_num)) / BigInt::from(n);
    let (c, s) = cos_sin_fixed(&y, w);
    // Undo the reduction: the base angle is octant/8 of a turn plus/minus y.
    let (mut x, mut z) = if odd { (s, c) } else { (c, s) };
    match octant {
        0 | 1 => {}
        2 | 3 => {
            let t = x;
            x = -z;
            z = t;
        }
        4 | 5 => {
            x = -x;
            z = -z;
        }
        _ => {
            let t = x;
            x = z;
            z = -t;
        }
    }
    let half = BigInt::one() << (EXTRA - 1);
    let round = |v: BigInt| -> BigInt { (v + &half) >> EXTRA };
    let re = round(x);
    let im = round(z);
    debug_assert!(re.abs() <= (BigInt::one() << b) + 1);
    Ok(BigComplex::from_parts(re, im, BigUint::from(2u32), b))
}
