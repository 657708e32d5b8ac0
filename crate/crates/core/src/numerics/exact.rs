//! Exact values: real elements of Q or one Q(sqrt d), and complex numbers
//! whose real and imaginary parts live in a common real quadratic field.
//!
//! Imaginary quadratic fields are folded into the complex layer:
//! `a + b*sqrt(-m)` becomes `a + i*(b*sqrt(m))`, so Gaussian rationals and
//! the Eisenstein field Q(sqrt -3) share one representation with Q(sqrt 3).

use std::fmt;

use num_traits::{One, Zero};

use super::complex::BigComplex;
use super::quad::QuadExt;
use super::rational::{self as rat, Rational};
use crate::error::{Error, Result};

/// A rational or an irrational element of some Q(sqrt d).
///
/// The `Quad` variant always has a non-zero irrational part, so structural
/// equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exact {
    Rat(Rational),
    Quad(QuadExt),
}

impl Exact {
    pub fn zero() -> Self {
        Exact::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Exact::Rat(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Exact::Rat(rat::from_int(v))
    }

    pub fn from_quad(q: QuadExt) -> Self {
        if q.is_rational() {
            Exact::Rat(q.a)
        } else {
            Exact::Quad(q)
        }
    }

    /// `b * sqrt(d)` normalised (d squarefree or 1).
    pub fn sqrt_multiple(b: Rational, d: i64) -> Result<Self> {
        if d == 1 || b.is_zero() {
            return Ok(Exact::Rat(b));
        }
        Ok(Exact::from_quad(QuadExt::new(Rational::zero(), b, d)?))
    }

    pub fn field(&self) -> Option<i64> {
        match self {
            Exact::Rat(_) => None,
            Exact::Quad(q) => Some(q.d()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Exact::Rat(q) => q.is_zero(),
            Exact::Quad(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Exact::Rat(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Exact::Rat(q) => Some(q),
            Exact::Quad(_) => None,
        }
    }

    fn to_quad(&self, d: i64) -> QuadExt {
        match self {
            Exact::Rat(q) => QuadExt::rational(q.clone(), d).expect("valid radicand"),
            Exact::Quad(q) => q.clone(),
        }
    }

    fn common_field(&self, other: &Self) -> Result<Option<i64>> {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) if a != b => Err(Error::FieldMismatch(a, b)),
            (Some(a), _) | (_, Some(a)) => Ok(Some(a)),
            (None, None) => Ok(None),
        }
    }

    fn lift(
        &self,
        other: &Self,
        fr: impl Fn(&Rational, &Rational) -> Result<Rational>,
        fq: impl Fn(&QuadExt, &QuadExt) -> Result<QuadExt>,
    ) -> Result<Self> {
        match self.common_field(other)? {
            None => Ok(Exact::Rat(fr(self.as_rational().unwrap(), other.as_rational().unwrap())?)),
            Some(d) => Ok(Exact::from_quad(fq(&self.to_quad(d), &other.to_quad(d))?)),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.lift(o, |a, b| Ok(rat::add(a, b)), |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.lift(o, |a, b| Ok(rat::sub(a, b)), |a, b| a.sub(b))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.lift(o, |a, b| Ok(rat::mul(a, b)), |a, b| a.mul(b))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.lift(o, rat::div, |a, b| a.div(b))
    }

    pub fn neg(&self) -> Self {
        match self {
            Exact::Rat(q) => Exact::Rat(rat::neg(q)),
            Exact::Quad(q) => Exact::Quad(q.neg()),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            Exact::Rat(q) => Ok(Exact::Rat(rat::inv(q)?)),
            Exact::Quad(q) => Ok(Exact::from_quad(q.inv()?)),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        match self {
            Exact::Rat(q) => {
                let base = if e < 0 { rat::inv(q)? } else { q.clone() };
                Ok(Exact::Rat(rat::pow(&base, e.unsigned_abs())))
            }
            Exact::Quad(q) => Ok(Exact::from_quad(q.pow(e)?)),
        }
    }

    /// Exact sign for real values (rationals or d > 0).
    pub fn signum(&self) -> Option<i32> {
        match self {
            Exact::Rat(q) => Some(if q.is_zero() {
                0
            } else if q > &Rational::zero() {
                1
            } else {
                -1
            }),
            Exact::Quad(q) => q.real_signum(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.field().is_none_or(|d| d > 0)
    }

    /// Nearest fixed-point value; at most two ulps off, exact for dyadic rationals.
    pub fn embed_real(&self, bits: u32) -> BigComplex {
        match self {
            Exact::Rat(q) => BigComplex::from_rational(q, bits),
            Exact::Quad(q) => {
                assert!(q.d() > 0, "embed_real on an imaginary quadratic value");
                let a = BigComplex::from_rational(&q.a, bits);
                let b2d = rat::mul(&rat::mul(&q.b, &q.b), &rat::from_int(q.d()));
                let s = BigComplex::from_signed_sqrt(&b2d, q.b < Rational::zero(), bits);
                a.add(&s)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exact::Rat(q) => rat::to_f64(q),
            Exact::Quad(q) => rat::to_f64(&q.a) + rat::to_f64(&q.b) * (q.d() as f64).abs().sqrt(),
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Rat(q) => write!(f, "{q}"),
            Exact::Quad(q) => write!(f, "{q}"),
        }
    }
}

/// `re + i*im` with both parts real and in one common field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    pub re: Exact,
    pub im: Exact,
}

impl ExactComplex {
    pub fn new(re: Exact, im: Exact) -> Result<Self> {
        if !re.is_real() || !im.is_real() {
            return Err(Error::InvalidInput("complex parts must be real".into()));
        }
        re.common_field(&im)?;
        Ok(ExactComplex { re, im })
    }

    pub fn real(re: Exact) -> Result<Self> {
        Self::new(re, Exact::zero())
    }

    pub fn from_rational(q: Rational) -> Self {
        ExactComplex { re: Exact::Rat(q), im: Exact::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(rat::from_int(v))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        ExactComplex { re: Exact::zero(), im: Exact::one() }
    }

    /// Any `QuadExt`, with negative radicands mapped onto the imaginary axis.
    pub fn from_quad(q: &QuadExt) -> Result<Self> {
        if q.d() > 0 {
            return Self::real(Exact::from_quad(q.clone()));
        }
        let im = Exact::sqrt_multiple(q.b.clone(), -q.d())?;
        Self::new(Exact::Rat(q.a.clone()), im)
    }

    /// The real quadratic field shared by both parts, if irrational.
    pub fn field(&self) -> Option<i64> {
        self.re.field().or(self.im.field())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Self::new(self.re.add(&o.re)?, self.im.add(&o.im)?)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        Self::new(self.re.sub(&o.re)?, self.im.sub(&o.im)?)
    }

    pub fn neg(&self) -> Self {
        ExactComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        ExactComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let re = self.re.mul(&o.re)?.sub(&self.im.mul(&o.im)?)?;
        let im = self.re.mul(&o.im)?.add(&self.im.mul(&o.re)?)?;
        Self::new(re, im)
    }

    /// `|x|^2`, an exact real.
    pub fn abs_sq(&self) -> Result<Exact> {
        self.re.mul(&self.re)?.add(&self.im.mul(&self.im)?)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.abs_sq()?;
        if n.is_zero() {
            return Err(Error::DivByZero);
        }
        let c = self.conj();
        Self::new(c.re.div(&n)?, c.im.div(&n)?)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if self.is_real() {
            return Self::real(self.re.pow(e)?);
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut base = base;
        let mut acc = Self::one();
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

    /// Sign of `|self|^2 - |other|^2`, decided exactly.
    pub fn cmp_abs(&self, other: &Self) -> Result<std::cmp::Ordering> {
        let d = self.abs_sq()?.sub(&other.abs_sq()?)?;
        Ok(match d.signum().expect("real") {
            1 => std::cmp::Ordering::Greater,
            -1 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        })
    }

    pub fn embed(&self, bits: u32) -> BigComplex {
        let re = self.re.embed_real(bits);
        let im = self.im.embed_real(bits);
        BigComplex::from_re_im(&re, &im)
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "({})*i", self.im);
        }
        write!(f, "{} + ({})*i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        rat::parse(s).unwrap()
    }

    fn theta() -> ExactComplex {
        // e^{2 pi i/3}
        ExactComplex::from_quad(&QuadExt::new(q("-1/2"), q("1/2"), -3).unwrap()).unwrap()
    }

    #[test]
    fn rational_promotes_and_demotes() {
        let s5 = Exact::from_quad(QuadExt::sqrt(5).unwrap());
        let x = s5.add(&Exact::from_int(1)).unwrap();
        assert_eq!(x.field(), Some(5));
        let y = x.sub(&s5).unwrap();
        assert_eq!(y, Exact::from_int(1));
        let sq = s5.mul(&s5).unwrap();
        assert_eq!(sq, Exact::from_int(5));
    }

    #[test]
    fn mixed_fields_fail() {
        let a = Exact::from_quad(QuadExt::sqrt(5).unwrap());
        let b = Exact::from_quad(QuadExt::sqrt(3).unwrap());
        assert_eq!(a.add(&b), Err(Error::FieldMismatch(5, 3)));
    }

    #[test]
    fn cube_root_of_unity() {
        let t = theta();
        assert_eq!(t.field(), Some(3));
        assert!(t.pow(3).unwrap().is_one());
        let s = t.add(&t.pow(2).unwrap()).unwrap().add(&ExactComplex::one()).unwrap();
        assert!(s.is_zero());
        assert_eq!(t.inv().unwrap(), t.conj());
    }

    #[test]
    fn gaussian() {
        let i = ExactComplex::from_quad(&QuadExt::sqrt(-1).unwrap()).unwrap();
        assert_eq!(i, ExactComplex::i());
        assert_eq!(i.mul(&i).unwrap(), ExactComplex::from_int(-1));
    }

    #[test]
    fn embedding() {
        let t = theta().embed(128);
        let (re, im) = t.to_f64_parts();
        assert_eq!(re, -0.5);
        assert!((im - 0.75f64.sqrt()).abs() < 1e-15);
        assert!(t.err_log2() <= -126.0);
    }
}
