//! User-facing algebraic values, their text syntax and JSON form.
//!
//! Accepted JSON shapes:
//!
//! ```json
//! {"type": "rational", "v": "3/4"}
//! {"type": "quad", "a": "7/2", "b": "-1/2", "D": 5}
//! {"type": "complex", "re": "-1/2", "im": "1/2*sqrt(3)"}
//! "1/2 + 1/2*sqrt(5)"
//! 0.25
//! ```
//!
//! The text syntax is a sum of terms, each a rational, `c*sqrt(d)`,
//! `sqrt(d)/q`, or any of these followed by `*i` / `i` for imaginary parts.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::complex::BigComplex;
use super::context::PrecisionContext;
use super::exact::{Exact, ExactComplex};
use super::quad::{is_squarefree, QuadExt};
use super::rational::{self as rat, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraicInput {
    Rational(Rational),
    Quad(QuadExt),
    Complex { re: Exact, im: Exact },
}

impl AlgebraicInput {
    pub fn int(v: i64) -> Self {
        AlgebraicInput::Rational(rat::from_int(v))
    }

    pub fn parse(s: &str) -> Result<Self> {
        parse_expr(s)
    }

    /// The canonical input for an exact complex value: a rational, a single
    /// quadratic element (negative radicand for purely irrational imaginary
    /// parts), or a complex literal otherwise.
    pub fn from_exact(x: &ExactComplex) -> Self {
        if x.im.is_zero() {
            return match &x.re {
                Exact::Rat(q) => AlgebraicInput::Rational(q.clone()),
                Exact::Quad(q) => AlgebraicInput::Quad(q.clone()),
            };
        }
        if let Exact::Rat(a) = &x.re {
            match &x.im {
                Exact::Rat(b) => {
                    return AlgebraicInput::Quad(QuadExt::new(a.clone(), b.clone(), -1).unwrap())
                }
                Exact::Quad(q) if q.a.is_zero() => {
                    return AlgebraicInput::Quad(QuadExt::new(a.clone(), q.b.clone(), -q.d()).unwrap())
                }
                _ => {}
            }
        }
        AlgebraicInput::Complex { re: x.re.clone(), im: x.im.clone() }
    }

    pub fn to_exact(&self) -> Result<ExactComplex> {
        match self {
            AlgebraicInput::Rational(q) => Ok(ExactComplex::from_rational(q.clone())),
            AlgebraicInput::Quad(q) => ExactComplex::from_quad(q),
            AlgebraicInput::Complex { re, im } => ExactComplex::new(re.clone(), im.clone()),
        }
    }

    /// True for the variants eligible for exact elimination.
    pub fn is_field_element(&self) -> bool {
        !matches!(self, AlgebraicInput::Complex { .. })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AlgebraicInput::Rational(q) => q.is_zero(),
            AlgebraicInput::Quad(q) => q.is_zero(),
            AlgebraicInput::Complex { re, im } => re.is_zero() && im.is_zero(),
        }
    }

    /// Numeric value at `bits` fractional bits; parts in different real
    /// fields are embedded separately, so this never fails.
    pub fn embed_bits(&self, bits: u32) -> BigComplex {
        match self {
            AlgebraicInput::Complex { re, im } => {
                BigComplex::from_re_im(&re.embed_real(bits), &im.embed_real(bits))
            }
            other => other.to_exact().expect("field element").embed(bits),
        }
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        match self {
            AlgebraicInput::Complex { re, im } => num_complex::Complex64::new(re.to_f64(), im.to_f64()),
            other => other.to_exact().expect("field element").to_complex64(),
        }
    }
}

/// Fixed-point value of `x`; the radius is at most two ulps of the working precision.
pub fn embed(x: &AlgebraicInput, ctx: &PrecisionContext) -> BigComplex {
    x.embed_bits(ctx.bits())
}

impl From<Rational> for AlgebraicInput {
    fn from(q: Rational) -> Self {
        AlgebraicInput::Rational(q)
    }
}

impl From<QuadExt> for AlgebraicInput {
    fn from(q: QuadExt) -> Self {
        AlgebraicInput::Quad(q)
    }
}

impl fmt::Display for AlgebraicInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicInput::Rational(q) => write!(f, "{q}"),
            AlgebraicInput::Quad(q) => write!(f, "{q}"),
            AlgebraicInput::Complex { re, im } => {
                if re.is_zero() {
                    write!(f, "({im})*i")
                } else {
                    write!(f, "{re} + ({im})*i")
                }
            }
        }
    }
}

fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let boundary = (c == '+' || c == '-')
            && depth == 0
            && !cur.trim().is_empty()
            && !matches!(prev, Some('e') | Some('E') | Some('*') | Some('/'));
        if boundary {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(c);
        if !c.is_whitespace() {
            prev = Some(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

/// One term: returns (coefficient, radicand, imaginary flag).
fn parse_term(t: &str) -> Result<(Rational, i64, bool)> {
    let bad = || Error::InvalidInput(format!("cannot parse term {t:?}"));
    let mut s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let mut imag = false;
    if let Some(rest) = s.strip_suffix('i') {
        imag = true;
        s = rest.trim_end_matches('*').to_string();
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(r) => (-1, r.to_string()),
        None => (1, s.strip_prefix('+').unwrap_or(&s).to_string()),
    };
    let body = if body.is_empty() && imag { "1".to_string() } else { body };
    let (coef, d) = if let Some(pos) = body.find("sqrt(") {
        let close = body[pos..].find(')').ok_or_else(bad)? + pos;
        let d: i64 = body[pos + 5..close].trim().parse().map_err(|_| bad())?;
        let before = body[..pos].trim_end_matches('*');
        let after = &body[close + 1..];
        let mut c = if before.is_empty() { Rational::one() } else { rat::parse(before)? };
        if !after.is_empty() {
            let den = after.strip_prefix('/').ok_or_else(bad)?;
            c = rat::div(&c, &rat::parse(den)?)?;
        }
        (c, d)
    } else {
        (rat::parse(&body)?, 1)
    };
    let coef = if sign < 0 { rat::neg(&coef) } else { coef };
    Ok((coef, d, imag))
}

/// Extract the largest square factor: `d = s^2 * m` with squarefree `m`.
fn square_part(d: i64) -> (i64, i64) {
    let sign = d.signum();
    let mut m = d.unsigned_abs();
    let mut s = 1u64;
    let mut k = 2u64;
    while k * k <= m {
        while m.is_multiple_of(k * k) {
            m /= k * k;
            s *= k;
        }
        k += 1;
    }
    (s as i64, sign * m as i64)
}

fn parse_expr(src: &str) -> Result<AlgebraicInput> {
    let s = src.trim();
    let s = if s.starts_with('(') && s.ends_with(')') && split_terms(&s[1..s.len() - 1]).len() > 1 {
        &s[1..s.len() - 1]
    } else {
        s
    };
    if s.is_empty() {
        return Err(Error::InvalidInput("empty value".into()));
    }
    // Real part and imaginary part, each a sum of c*sqrt(m) with m squarefree >= 1.
    let mut re: Vec<(Rational, i64)> = Vec::new();
    let mut im: Vec<(Rational, i64)> = Vec::new();
    for t in split_terms(s) {
        let (c, d, imag) = parse_term(&t)?;
        if d == 0 {
            continue;
        }
        let (sq, m) = square_part(d);
        let c = rat::mul(&c, &rat::from_int(sq));
        match (m < 0, imag) {
            (false, false) => re.push((c, m)),
            (false, true) => im.push((c, m)),
            (true, false) => im.push((c, -m)),
            (true, true) => re.push((rat::neg(&c), -m)),
        }
    }
    let collect = |terms: &[(Rational, i64)]| -> Result<(Rational, Rational, i64)> {
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        let mut field = 1i64;
        for (c, m) in terms {
            if *m == 1 {
                a = rat::add(&a, c);
            } else {
                if field != 1 && field != *m {
                    return Err(Error::FieldMismatch(field, *m));
                }
                field = *m;
                b = rat::add(&b, c);
            }
        }
        Ok((a, b, field))
    };
    let (ra, rb, rf) = collect(&re)?;
    let (ia, ib, imf) = collect(&im)?;
    let imag_zero = ia.is_zero() && ib.is_zero();
    if imag_zero {
        if rb.is_zero() || rf == 1 {
            return Ok(AlgebraicInput::Rational(ra));
        }
        return Ok(AlgebraicInput::Quad(QuadExt::new(ra, rb, rf)?));
    }
    let re_x = if rf == 1 { Exact::Rat(ra) } else { Exact::from_quad(QuadExt::new(ra, rb, rf)?) };
    let im_x = if imf == 1 { Exact::Rat(ia) } else { Exact::from_quad(QuadExt::new(ia, ib, imf)?) };
    Ok(AlgebraicInput::from_exact_parts(re_x, im_x))
}

impl AlgebraicInput {
    fn from_exact_parts(re: Exact, im: Exact) -> AlgebraicInput {
        match ExactComplex::new(re.clone(), im.clone()) {
            Ok(x) => AlgebraicInput::from_exact(&x),
            Err(_) => AlgebraicInput::Complex { re, im },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Tagged {
    Rational {
        v: String,
    },
    Quad {
        a: String,
        b: String,
        #[serde(rename = "D")]
        d: i64,
    },
    Complex {
        re: String,
        im: String,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Wire {
    Tagged(Tagged),
    Text(String),
    Int(i64),
    Float(f64),
}

fn parse_real(s: &str) -> Result<Exact> {
    match parse_expr(s)? {
        AlgebraicInput::Rational(q) => Ok(Exact::Rat(q)),
        AlgebraicInput::Quad(q) if q.d() > 0 => Ok(Exact::Quad(q)),
        _ => Err(Error::InvalidInput(format!("expected a real value, got {s:?}"))),
    }
}

impl TryFrom<Tagged> for AlgebraicInput {
    type Error = Error;

    fn try_from(t: Tagged) -> Result<Self> {
        match t {
            Tagged::Rational { v } => Ok(AlgebraicInput::Rational(rat::parse(&v)?)),
            Tagged::Quad { a, b, d } => {
                if !is_squarefree(d) {
                    return Err(Error::InvalidInput(format!("D = {d} is not squarefree")));
                }
                Ok(AlgebraicInput::Quad(QuadExt::new(rat::parse(&a)?, rat::parse(&b)?, d)?))
            }
            Tagged::Complex { re, im } => Ok(AlgebraicInput::Complex { re: parse_real(&re)?, im: parse_real(&im)? }),
        }
    }
}

impl Serialize for AlgebraicInput {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let t = match self {
            AlgebraicInput::Rational(q) => Tagged::Rational { v: q.to_string() },
            AlgebraicInput::Quad(q) => Tagged::Quad { a: q.a.to_string(), b: q.b.to_string(), d: q.d() },
            AlgebraicInput::Complex { re, im } => Tagged::Complex { re: re.to_string(), im: im.to_string() },
        };
        t.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicInput {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        let r = match w {
            Wire::Tagged(t) => AlgebraicInput::try_from(t),
            Wire::Text(s) => parse_expr(&s),
            Wire::Int(v) => Ok(AlgebraicInput::int(v)),
            Wire::Float(v) => parse_expr(&format!("{v:e}")),
        };
        r.map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        rat::parse(s).unwrap()
    }

    #[test]
    fn text_forms() {
        assert_eq!(AlgebraicInput::parse("3/4").unwrap(), AlgebraicInput::Rational(q("3/4")));
        let g = AlgebraicInput::parse("1/2 + 1/2*sqrt(5)").unwrap();
        assert_eq!(g, AlgebraicInput::Quad(QuadExt::new(q("1/2"), q("1/2"), 5).unwrap()));
        let g3 = AlgebraicInput::parse("1/2 - sqrt(5)/2").unwrap();
        assert_eq!(g3, AlgebraicInput::Quad(QuadExt::new(q("1/2"), q("-1/2"), 5).unwrap()));
        let r8 = AlgebraicInput::parse("sqrt(8)").unwrap();
        assert_eq!(r8, AlgebraicInput::Quad(QuadExt::new(q("0"), q("2"), 2).unwrap()));
        assert_eq!(AlgebraicInput::parse("1e-3").unwrap(), AlgebraicInput::Rational(q("1/1000")));
    }

    #[test]
    fn complex_text() {
        let z = AlgebraicInput::parse("0.4+0.1i").unwrap();
        assert_eq!(z, AlgebraicInput::Quad(QuadExt::new(q("2/5"), q("1/10"), -1).unwrap()));
        let t = AlgebraicInput::parse("-1/2 + 1/2*sqrt(3)*i").unwrap();
        assert_eq!(t, AlgebraicInput::Quad(QuadExt::new(q("-1/2"), q("1/2"), -3).unwrap()));
        let t2 = AlgebraicInput::parse("-1/2 + 1/2*sqrt(-3)").unwrap();
        assert_eq!(t, t2);
        let m = AlgebraicInput::parse("sqrt(5) + sqrt(3)*i").unwrap();
        assert!(matches!(m, AlgebraicInput::Complex { .. }));
        assert!(m.to_exact().is_err());
    }

    #[test]
    fn json_round_trip() {
        let cases = [
            r#"{"type":"quad","a":"7/2","b":"-1/2","D":5}"#,
            r#"{"type":"rational","v":"3/4"}"#,
            r#"{"type":"complex","re":"-1/2","im":"sqrt(3)"}"#,
        ];
        for c in cases {
            let v: AlgebraicInput = serde_json::from_str(c).unwrap();
            let back = serde_json::to_string(&v).unwrap();
            let again: AlgebraicInput = serde_json::from_str(&back).unwrap();
            assert_eq!(v, again);
        }
        let v: AlgebraicInput = serde_json::from_str("\"1/3\"").unwrap();
        assert_eq!(v, AlgebraicInput::Rational(q("1/3")));
        let v: AlgebraicInput = serde_json::from_str("2").unwrap();
        assert_eq!(v, AlgebraicInput::int(2));
        let v: AlgebraicInput = serde_json::from_str("0.25").unwrap();
        assert_eq!(v, AlgebraicInput::Rational(q("1/4")));
        assert!(serde_json::from_str::<AlgebraicInput>(r#"{"type":"quad","a":"1","b":"1","D":4}"#).is_err());
    }

    #[test]
    fn golden_embedding() {
        let ctx = PrecisionContext::new(128).unwrap();
        let g = AlgebraicInput::parse("1/2+1/2*sqrt(5)").unwrap();
        let e = embed(&g, &ctx);
        assert!(e.re_decimal(14).starts_with("1.61803398874989"));
        assert!(e.err_log2() <= -96.0);
        let e34 = embed(&AlgebraicInput::parse("3/4").unwrap(), &ctx);
        assert!(e34.is_exact());
    }
}
