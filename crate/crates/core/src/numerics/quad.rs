//! Exact arithmetic in a single quadratic field Q(sqrt D).

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{self as rat, Rational};
use crate::error::{Error, Result};

/// `a + b*sqrt(d)` with rational `a`, `b` and squarefree `d` not in {0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    d: i64,
}

/// Arithmetic operation selector for [`quad_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn is_squarefree(n: i64) -> bool {
    let m = n.unsigned_abs();
    if m == 0 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= m {
        if m.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidInput(format!(
                "radicand {d} must be squarefree and not 0 or 1"
            )));
        }
        Ok(QuadExt { a, b, d })
    }

    pub fn rational(a: Rational, d: i64) -> Result<Self> {
        Self::new(a, Rational::zero(), d)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: i64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: rat::neg(&self.b), d: self.d }
    }

    /// `a^2 - d*b^2`, multiplicative on the field.
    pub fn norm(&self) -> Rational {
        rat::sub(
            &rat::mul(&self.a, &self.a),
            &rat::mul(&rat::from_int(self.d), &rat::mul(&self.b, &self.b)),
        )
    }

    pub fn trace(&self) -> Rational {
        rat::add(&self.a, &self.a)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            Err(Error::FieldMismatch(self.d, other.d))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, y: &Self) -> Result<Self> {
        self.check(y)?;
        Ok(QuadExt { a: rat::add(&self.a, &y.a), b: rat::add(&self.b, &y.b), d: self.d })
    }

    pub fn sub(&self, y: &Self) -> Result<Self> {
        self.check(y)?;
        Ok(QuadExt { a: rat::sub(&self.a, &y.a), b: rat::sub(&self.b, &y.b), d: self.d })
    }

    pub fn neg(&self) -> Self {
        QuadExt { a: rat::neg(&self.a), b: rat::neg(&self.b), d: self.d }
    }

    pub fn mul(&self, y: &Self) -> Result<Self> {
        self.check(y)?;
        let d = rat::from_int(self.d);
        let a = rat::add(&rat::mul(&self.a, &y.a), &rat::mul(&d, &rat::mul(&self.b, &y.b)));
        let b = rat::add(&rat::mul(&self.a, &y.b), &rat::mul(&self.b, &y.a));
        Ok(QuadExt { a, b, d: self.d })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadExt { a: rat::mul(&self.a, q), b: rat::mul(&self.b, q), d: self.d }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivByZero);
        }
        let ninv = rat::inv(&n)?;
        Ok(self.conj().scale(&ninv))
    }

    pub fn div(&self, y: &Self) -> Result<Self> {
        self.check(y)?;
        self.mul(&y.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut base = base;
        let mut acc = QuadExt::rational(Rational::one(), self.d)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Sign of the real number `a + b sqrt(d)` for `d > 0`, decided exactly.
    pub fn real_signum(&self) -> Option<i32> {
        if self.d < 0 {
            return None;
        }
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return Some(sa);
        }
        if sa == 0 || sa == sb {
            return Some(sb);
        }
        // Opposite signs: compare a^2 with d b^2.
        let lhs = rat::mul(&self.a, &self.a);
        let rhs = rat::mul(&rat::from_int(self.d), &rat::mul(&self.b, &self.b));
        Some(match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        })
    }
}

fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Field operation on two elements of the same Q(sqrt D).
pub fn quad_arith(op: QuadOp, x: &QuadExt, y: &QuadExt) -> Result<QuadExt> {
    match op {
        QuadOp::Add => x.add(y),
        QuadOp::Sub => x.sub(y),
        QuadOp::Mul => x.mul(y),
        QuadOp::Div => {
            x.check(y)?;
            if y.is_zero() {
                return Err(Error::DivByZero);
            }
            x.div(y)
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let one = Rational::one();
        let bstr = if rat::abs(&self.b) == one { String::new() } else { format!("{}*", rat::abs(&self.b)) };
        let s = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{bstr}sqrt({})", self.d)
        } else {
            write!(f, "{} {s} {bstr}sqrt({})", self.a, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        rat::parse(s).unwrap()
    }

    fn golden() -> QuadExt {
        QuadExt::new(q("1/2"), q("1/2"), 5).unwrap()
    }

    #[test]
    fn golden_times_conjugate_is_minus_one() {
        let g = golden();
        let p = quad_arith(QuadOp::Mul, &g, &g.conj()).unwrap();
        assert_eq!(p, QuadExt::rational(q("-1"), 5).unwrap());
    }

    #[test]
    fn conjugate_sum() {
        let x = QuadExt::new(q("7/3"), q("-5/2"), 13).unwrap();
        let s = quad_arith(QuadOp::Add, &x, &x.conj()).unwrap();
        assert_eq!(s, QuadExt::rational(q("14/3"), 13).unwrap());
    }

    #[test]
    fn inverse_of_golden() {
        let one = QuadExt::rational(q("1"), 5).unwrap();
        let inv = quad_arith(QuadOp::Div, &one, &golden()).unwrap();
        assert_eq!(inv, QuadExt::new(q("-1/2"), q("1/2"), 5).unwrap());
        assert_eq!(inv.mul(&golden()).unwrap(), one);
    }

    #[test]
    fn errors() {
        let x = QuadExt::sqrt(5).unwrap();
        let y = QuadExt::sqrt(3).unwrap();
        assert_eq!(quad_arith(QuadOp::Add, &x, &y), Err(Error::FieldMismatch(5, 3)));
        let z = QuadExt::rational(Rational::zero(), 5).unwrap();
        assert_eq!(quad_arith(QuadOp::Div, &x, &z), Err(Error::DivByZero));
        assert!(QuadExt::new(q("1"), q("1"), 8).is_err());
        assert!(QuadExt::new(q("1"), q("1"), 1).is_err());
    }

    #[test]
    fn power_is_lucas_fibonacci() {
        // golden^n = (L_n + F_n sqrt 5)/2
        let g10 = golden().pow(10).unwrap();
        assert_eq!(g10, QuadExt::new(q("123/2"), q("55/2"), 5).unwrap());
        let gm3 = golden().pow(-3).unwrap();
        assert_eq!(gm3.mul(&golden().pow(3).unwrap()).unwrap(), QuadExt::rational(q("1"), 5).unwrap());
    }

    #[test]
    fn exact_sign() {
        assert_eq!(QuadExt::new(q("-2"), q("1"), 5).unwrap().real_signum(), Some(1));
        assert_eq!(QuadExt::new(q("-3"), q("1"), 5).unwrap().real_signum(), Some(-1));
        assert_eq!(QuadExt::new(q("2"), q("-1"), 2).unwrap().real_signum(), Some(1));
        assert_eq!(QuadExt::new(q("1"), q("1"), -1).unwrap().real_signum(), None);
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(5));
        assert!(is_squarefree(-1));
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(-8));
        assert!(!is_squarefree(0));
    }
}
