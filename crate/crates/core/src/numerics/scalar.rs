//! Values that stay exact while their fields agree and fall back to
//! fixed point when they do not.

use super::complex::BigComplex;
use super::exact::ExactComplex;
use super::input::AlgebraicInput;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(ExactComplex),
    Approx(BigComplex),
}

impl Scalar {
    pub fn from_input(x: &AlgebraicInput, bits: u32) -> Scalar {
        match x.to_exact() {
            Ok(e) => Scalar::Exact(e),
            Err(_) => Scalar::Approx(x.embed_bits(bits)),
        }
    }

    pub fn int(v: i64) -> Scalar {
        Scalar::Exact(ExactComplex::from_int(v))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn exact(&self) -> Option<&ExactComplex> {
        match self {
            Scalar::Exact(e) => Some(e),
            Scalar::Approx(_) => None,
        }
    }

    pub fn embed(&self, bits: u32) -> BigComplex {
        match self {
            Scalar::Exact(e) => e.embed(bits),
            Scalar::Approx(c) => c.with_bits(bits),
        }
    }

    fn binary(
        &self,
        o: &Scalar,
        bits: u32,
        fe: impl Fn(&ExactComplex, &ExactComplex) -> Result<ExactComplex>,
        fa: impl Fn(&BigComplex, &BigComplex) -> Result<BigComplex>,
    ) -> Result<Scalar> {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, o) {
            match fe(a, b) {
                Ok(v) => return Ok(Scalar::Exact(v)),
                Err(Error::FieldMismatch(..)) => {}
                Err(e) => return Err(e),
            }
        }
        fa(&self.embed(bits), &o.embed(bits)).map(Scalar::Approx)
    }

    pub fn add(&self, o: &Scalar, bits: u32) -> Result<Scalar> {
        self.binary(o, bits, |a, b| a.add(b), |a, b| Ok(a.add(b)))
    }

    pub fn sub(&self, o: &Scalar, bits: u32) -> Result<Scalar> {
        self.binary(o, bits, |a, b| a.sub(b), |a, b| Ok(a.sub(b)))
    }

    pub fn mul(&self, o: &Scalar, bits: u32) -> Result<Scalar> {
        self.binary(o, bits, |a, b| a.mul(b), |a, b| Ok(a.mul(b)))
    }

    pub fn div(&self, o: &Scalar, bits: u32) -> Result<Scalar> {
        self.binary(o, bits, |a, b| a.div(b), |a, b| a.div(b))
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(e) => Scalar::Exact(e.neg()),
            Scalar::Approx(c) => Scalar::Approx(c.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Exact(e) => e.inv().map(Scalar::Exact),
            Scalar::Approx(c) => c.inv().map(Scalar::Approx),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        match self {
            Scalar::Exact(x) => x.pow(e).map(Scalar::Exact),
            Scalar::Approx(c) => c.powi(e).map(Scalar::Approx),
        }
    }

    /// `Some(true/false)` when decided exactly, `None` for numeric values.
    pub fn exact_is_zero(&self) -> Option<bool> {
        self.exact().map(|e| e.is_zero())
    }

    /// Zero test: exact when possible, otherwise `|x| < 2^-tol_bits` with the
    /// second flag reporting that the answer is only numeric.
    pub fn is_zero_within(&self, tol_bits: u32) -> (bool, bool) {
        match self {
            Scalar::Exact(e) => (e.is_zero(), false),
            Scalar::Approx(c) => (c.log2_abs_upper() < -(tol_bits as f64) || c.contains_zero(), true),
        }
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        match self {
            Scalar::Exact(e) => e.to_complex64(),
            Scalar::Approx(c) => c.to_complex64(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_fields_fall_back() {
        let a = Scalar::from_input(&AlgebraicInput::parse("sqrt(5)").unwrap(), 128);
        let b = Scalar::from_input(&AlgebraicInput::parse("sqrt(3)").unwrap(), 128);
        let s = a.add(&b, 128).unwrap();
        assert!(!s.is_exact());
        let v = s.to_complex64().re;
        assert!((v - (5f64.sqrt() + 3f64.sqrt())).abs() < 1e-14);
        let p = a.mul(&a, 128).unwrap();
        assert_eq!(p, Scalar::int(5));
    }
}
