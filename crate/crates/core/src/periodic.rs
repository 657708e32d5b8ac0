//! Periodic coefficient sequences, interleaving, finite Fourier
//! decomposition and exact rank of families of sequences.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{root_of_unity, AlgebraicInput, BigComplex, ExactComplex, PrecisionContext};

/// `term(h) = values[h mod p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSeq {
    values: Vec<AlgebraicInput>,
}

impl PeriodicSeq {
    pub fn new(values: Vec<AlgebraicInput>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("periodic sequence needs at least one value".into()));
        }
        Ok(PeriodicSeq { values })
    }

    pub fn constant(c: AlgebraicInput) -> Self {
        PeriodicSeq { values: vec![c] }
    }

    pub fn ones() -> Self {
        Self::constant(AlgebraicInput::int(1))
    }

    pub fn from_ints(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| AlgebraicInput::int(x)).collect())
    }

    /// Parse a JSON list such as `[1, "1/2", "sqrt(5)"]`.
    pub fn parse_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("coefficient list: {e}")))
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[AlgebraicInput] {
        &self.values
    }

    pub fn term(&self, h: u64) -> &AlgebraicInput {
        &self.values[(h % self.values.len() as u64) as usize]
    }

    /// `(a_0, 0, ..., 0, a_1, 0, ...)` with `j - 1` zeros after each value.
    pub fn interleave(&self, j: usize) -> Result<Self> {
        if j == 0 {
            return Err(Error::InvalidInput("interleave factor must be >= 1".into()));
        }
        let mut values = Vec::with_capacity(j * self.period());
        for v in &self.values {
            values.push(v.clone());
            values.extend(std::iter::repeat_n(AlgebraicInput::int(0), j - 1));
        }
        Ok(PeriodicSeq { values })
    }

    /// True when every period value is the same number.
    pub fn is_constant(&self) -> bool {
        let first = &self.values[0];
        let fx = first.to_exact().ok();
        self.values.iter().all(|v| match (&fx, v.to_exact().ok()) {
            (Some(a), Some(b)) => *a == b,
            _ => v == first,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.values.iter().map(|v| v.to_complex64().norm()).fold(0.0, f64::max)
    }
}

impl Serialize for PeriodicSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WireSeq {
    List(Vec<AlgebraicInput>),
    Object { values: Vec<AlgebraicInput>, period: Option<usize> },
}

impl<'de> Deserialize<'de> for PeriodicSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (values, period) = match WireSeq::deserialize(d)? {
            WireSeq::List(v) => (v, None),
            WireSeq::Object { values, period } => (values, period),
        };
        let values = match period {
            None => values,
            Some(p) => {
                if p == 0 || values.len() % p != 0 || values.iter().enumerate().any(|(i, v)| *v != values[i % p]) {
                    return Err(D::Error::custom(format!("values are not {p}-periodic")));
                }
                values[..p].to_vec()
            }
        };
        PeriodicSeq::new(values).map_err(D::Error::custom)
    }
}

pub fn term(seq: &PeriodicSeq, h: u64) -> &AlgebraicInput {
    seq.term(h)
}

pub fn interleave(seq: &PeriodicSeq, j: usize) -> Result<PeriodicSeq> {
    seq.interleave(j)
}

/// Coefficients `A_i` with `term(h) = sum_i A_i w^{ih}`, `w = e^{2 pi i/N}`.
pub fn dft_decompose(combined: &PeriodicSeq, n: usize, ctx: &PrecisionContext) -> Result<Vec<BigComplex>> {
    if n == 0 || !n.is_multiple_of(combined.period()) {
        return Err(Error::PeriodMismatch { period: combined.period(), n });
    }
    let bits = ctx.bits();
    let roots: Vec<BigComplex> =
        (0..n).map(|m| root_of_unity(n as u64, -(m as i64), ctx)).collect::<Result<_>>()?;
    let terms: Vec<BigComplex> = (0..n).map(|h| combined.term(h as u64).embed_bits(bits)).collect();
    let nn = BigInt::from(n);
    (0..n)
        .map(|i| {
            let mut acc = BigComplex::zero(bits);
            for (h, t) in terms.iter().enumerate() {
                acc = acc.add(&t.mul(&roots[(i * h) % n]));
            }
            acc.div_int(&nn)
        })
        .collect()
}

/// `sum_i A_i w^{ih}` for `h < N`.
pub fn dft_reconstruct(coeffs: &[BigComplex], ctx: &PrecisionContext) -> Result<Vec<BigComplex>> {
    let n = coeffs.len();
    let roots: Vec<BigComplex> = (0..n).map(|m| root_of_unity(n as u64, m as i64, ctx)).collect::<Result<_>>()?;
    Ok((0..n)
        .map(|h| {
            coeffs
                .iter()
                .enumerate()
                .fold(BigComplex::zero(ctx.bits()), |acc, (i, a)| acc.add(&a.mul(&roots[(i * h) % n])))
        })
        .collect())
}

pub fn lcm_of_periods(seqs: &[PeriodicSeq]) -> usize {
    seqs.iter().fold(1usize, |acc, s| acc.lcm(&s.period()))
}

/// Rank, over the field generated by the entries, of the matrix whose rows
/// are the first `num_terms` terms of each sequence.
pub fn rank_exact(seqs: &[PeriodicSeq], num_terms: usize) -> Result<usize> {
    let mut radicands = BTreeSet::new();
    for s in seqs {
        for v in s.values() {
            match v {
                AlgebraicInput::Complex { .. } => return Err(Error::ExactnessRequired),
                AlgebraicInput::Quad(q) if !q.is_rational() => {
                    radicands.insert(q.d());
                }
                _ => {}
            }
        }
    }
    if radicands.len() > 1 {
        let mut it = radicands.iter();
        return Err(Error::FieldMismatch(*it.next().unwrap(), *it.next().unwrap()));
    }
    let mut m: Vec<Vec<ExactComplex>> = seqs
        .iter()
        .map(|s| (0..num_terms).map(|h| s.term(h as u64).to_exact()).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Ok(row_rank(&mut m))
}

/// Gaussian elimination with the first non-zero entry (scanning columns,
/// then rows) as pivot.
pub(crate) fn row_rank(m: &mut [Vec<ExactComplex>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].inv().expect("non-zero pivot");
        for r in 0..rows {
            if r == rank || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].mul(&inv).expect("one field");
            for k in c..cols {
                let t = f.mul(&m[rank][k]).expect("one field");
                m[r][k] = m[r][k].sub(&t).expect("one field");
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> PeriodicSeq {
        PeriodicSeq::from_ints(v).unwrap()
    }

    #[test]
    fn term_and_interleave() {
        assert_eq!(seq(&[1, 2]).term(5), &AlgebraicInput::int(2));
        assert_eq!(seq(&[1, 0, 3]).term(7), &AlgebraicInput::int(0));
        assert_eq!(seq(&[1, 2]).interleave(3).unwrap(), seq(&[1, 0, 0, 2, 0, 0]));
        assert_eq!(seq(&[4, 5]).interleave(1).unwrap(), seq(&[4, 5]));
    }

    #[test]
    fn rank_examples() {
        let one = seq(&[1, 1]);
        assert_eq!(rank_exact(&[one.clone(), one.interleave(1).unwrap()], 4).unwrap(), 1);
        let b = seq(&[1, 2]);
        let fam: Vec<_> = (1..=3).map(|j| b.interleave(j).unwrap()).collect();
        assert_eq!(rank_exact(&fam, 12).unwrap(), 3);
        let fam2 = vec![seq(&[1]), b.interleave(1).unwrap(), b.interleave(2).unwrap()];
        assert_eq!(rank_exact(&fam2, 8).unwrap(), 3);
    }

    #[test]
    fn rank_errors() {
        let s5 = PeriodicSeq::new(vec![AlgebraicInput::parse("sqrt(5)").unwrap()]).unwrap();
        let s3 = PeriodicSeq::new(vec![AlgebraicInput::parse("sqrt(3)").unwrap()]).unwrap();
        assert!(matches!(rank_exact(&[s5.clone(), s3], 2), Err(Error::FieldMismatch(..))));
        let c = PeriodicSeq::new(vec![AlgebraicInput::parse("sqrt(5)+sqrt(3)*i").unwrap()]).unwrap();
        assert_eq!(rank_exact(&[c], 2), Err(Error::ExactnessRequired));
        let twice = PeriodicSeq::new(vec![AlgebraicInput::parse("2*sqrt(5)").unwrap()]).unwrap();
        assert_eq!(rank_exact(&[s5, twice], 2).unwrap(), 1);
    }

    #[test]
    fn dft_examples() {
        let ctx = PrecisionContext::new(128).unwrap();
        let a = dft_decompose(&seq(&[7]), 1, &ctx).unwrap();
        assert!(a[0].overlaps(&BigComplex::from_int(&7.into(), 128)));
        let a = dft_decompose(&seq(&[1, -1]), 2, &ctx).unwrap();
        assert!(a[0].overlaps(&BigComplex::zero(128)));
        assert!(a[1].overlaps(&BigComplex::one(128)));
        let a = dft_decompose(&seq(&[1, 0, 0]), 3, &ctx).unwrap();
        let third = BigComplex::from_rational(&crate::numerics::rational::parse("1/3").unwrap(), 128);
        assert!(a.iter().all(|x| x.overlaps(&third)));
        assert_eq!(
            dft_decompose(&seq(&[1, 0, 0]), 4, &ctx),
            Err(Error::PeriodMismatch { period: 3, n: 4 })
        );
    }

    #[test]
    fn json_forms() {
        let s: PeriodicSeq = serde_json::from_str(r#"[1, "1/2"]"#).unwrap();
        assert_eq!(s.period(), 2);
        let s: PeriodicSeq = serde_json::from_str(r#"{"values": [1, 2, 1, 2], "period": 2}"#).unwrap();
        assert_eq!(s, seq(&[1, 2]));
        assert!(serde_json::from_str::<PeriodicSeq>(r#"{"values": [1, 2, 3], "period": 2}"#).is_err());
        assert!(serde_json::from_str::<PeriodicSeq>("[]").is_err());
    }
}
