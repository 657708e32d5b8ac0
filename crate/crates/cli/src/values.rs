//! Value sources accepted by `relations` and `minpoly`.
//!
//! ```json
//! "7/2 - 1/2*sqrt(5)"
//! {"name": "x", "value": "sqrt(2)"}
//! {"name": "F02", "preset": "fibonacci", "number_series": {"family": "R", "k": 1, "r": 2, "coeffs": [1]}}
//! {"name": "G12", "function_series": {"kind": "gamma", "r": 2, "mu": 1, "coeffs": {"periodic": [1]}}, "z": "1/2"}
//! {"name": "c", "re": "2.3819660112501051518", "im": "0", "err_exponent": -60}
//! ```
//!
//! Exact and series sources are recomputed at every requested precision;
//! decimal balls are fixed and disable re-verification.

use mahler_core::lucaspair::{eval_number_series, LucasPairParams, NumberSeriesSpec};
use mahler_core::numerics::rational;
use mahler_core::numerics::{AlgebraicInput, BigComplex, PrecisionContext};
use mahler_core::series::{eval_at, SeriesSpec};
use mahler_core::{Error, Result};
use num_bigint::BigUint;
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Number {
        name: Option<String>,
        #[serde(default)]
        preset: Option<String>,
        #[serde(default)]
        params: Option<LucasPairParams>,
        number_series: NumberSeriesSpec,
    },
    Function {
        name: Option<String>,
        function_series: SeriesSpec,
        z: AlgebraicInput,
    },
    Ball {
        name: Option<String>,
        re: String,
        #[serde(default)]
        im: Option<String>,
        err_exponent: i64,
    },
    Named {
        name: String,
        value: AlgebraicInput,
    },
    Bare(AlgebraicInput),
}

impl Source {
    pub fn name(&self, index: usize) -> String {
        let n = match self {
            Source::Number { name, .. } | Source::Function { name, .. } | Source::Ball { name, .. } => name.clone(),
            Source::Named { name, .. } => Some(name.clone()),
            Source::Bare(_) => None,
        };
        n.unwrap_or_else(|| format!("x{index}"))
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self, Source::Ball { .. })
    }

    pub fn eval(&self, ctx: &PrecisionContext) -> Result<BigComplex> {
        let bits = ctx.bits();
        match self {
            Source::Number { preset, params, number_series, .. } => {
                let p = match (params, preset) {
                    (Some(p), None) => p.clone(),
                    (None, Some(name)) => LucasPairParams::preset(name)?,
                    (None, None) => LucasPairParams::fibonacci_lucas(),
                    (Some(_), Some(_)) => return Err(Error::InvalidInput("give either preset or params".into())),
                };
                Ok(eval_number_series(&p, number_series, ctx)?.result.value)
            }
            Source::Function { function_series, z, .. } => Ok(eval_at(function_series, z, ctx)?.value),
            Source::Ball { re, im, err_exponent, .. } => {
                let re = BigComplex::from_rational(&rational::parse(re)?, bits);
                let im = match im {
                    Some(s) => BigComplex::from_rational(&rational::parse(s)?, bits),
                    None => BigComplex::zero(bits),
                };
                let v = BigComplex::from_re_im(&re, &im);
                // radius 2^err_exponent, expressed in ulps of 2^-bits
                let shift = err_exponent + bits as i64;
                let ulps = if shift > 0 { BigUint::from(1u8) << shift as u64 } else { BigUint::from(1u8) };
                Ok(v.inflate(&ulps))
            }
            Source::Named { value, .. } | Source::Bare(value) => Ok(value.embed_bits(bits)),
        }
    }
}

/// One source or a list of them.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Sources {
    Many(Vec<Source>),
    One(Source),
}

impl Sources {
    pub fn into_vec(self) -> Vec<Source> {
        match self {
            Sources::Many(v) => v,
            Sources::One(s) => vec![s],
        }
    }
}
