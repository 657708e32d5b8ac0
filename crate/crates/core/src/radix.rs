//! Perfect powers and the decomposition `r = d^j` with `d` not a perfect power.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadixDecomposition {
    pub d: u64,
    pub j: u32,
}

/// `a^k` if it fits in u64.
fn checked_pow(a: u64, k: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(a)?;
    }
    Some(acc)
}

/// Largest `a` with `a^k <= n`, by binary search with exact powering.
pub fn integer_root(n: u64, k: u32) -> u64 {
    assert!(k >= 1);
    if k == 1 || n < 2 {
        return n;
    }
    let (mut lo, mut hi) = (1u64, 1u64 << (64 / k + 1).min(63));
    // invariant: lo^k <= n < hi^k
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match checked_pow(mid, k) {
            Some(p) if p <= n => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}

fn check_domain(n: u64) -> Result<()> {
    if n < 2 {
        Err(Error::OutOfDomain(n as i64))
    } else {
        Ok(())
    }
}

/// `(a, m)` with `a^m = n`, `m >= 2` maximal; `None` when `n` is not a perfect power.
pub fn is_perfect_power(n: u64) -> Result<Option<(u64, u32)>> {
    check_domain(n)?;
    let max_m = 63 - n.leading_zeros();
    for m in (2..=max_m).rev() {
        let a = integer_root(n, m);
        if a >= 2 && checked_pow(a, m) == Some(n) {
            return Ok(Some((a, m)));
        }
    }
    Ok(None)
}

/// Signed front door for callers holding an `i64`.
pub fn is_perfect_power_i64(n: i64) -> Result<Option<(u64, u32)>> {
    if n < 2 {
        return Err(Error::OutOfDomain(n));
    }
    is_perfect_power(n as u64)
}

pub fn decompose(r: u64) -> Result<RadixDecomposition> {
    Ok(match is_perfect_power(r)? {
        Some((d, j)) => RadixDecomposition { d, j },
        None => RadixDecomposition { d: r, j: 1 },
    })
}

pub fn decompose_i64(r: i64) -> Result<RadixDecomposition> {
    if r < 2 {
        return Err(Error::OutOfDomain(r));
    }
    decompose(r as u64)
}

/// `d(r)` for `r >= 2`.
pub fn radix_base(r: u64) -> Result<u64> {
    decompose(r).map(|x| x.d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(is_perfect_power(64).unwrap(), Some((2, 6)));
        assert_eq!(is_perfect_power(12).unwrap(), None);
        assert_eq!(is_perfect_power(36).unwrap(), Some((6, 2)));
        assert_eq!(decompose(8).unwrap(), RadixDecomposition { d: 2, j: 3 });
        assert_eq!(decompose(12).unwrap(), RadixDecomposition { d: 12, j: 1 });
        assert_eq!(decompose(729).unwrap(), RadixDecomposition { d: 3, j: 6 });
        assert_eq!(decompose(1), Err(Error::OutOfDomain(1)));
        assert_eq!(decompose_i64(-4), Err(Error::OutOfDomain(-4)));
    }

    #[test]
    fn roots_near_limits() {
        assert_eq!(integer_root(u64::MAX, 2), 4294967295);
        assert_eq!(integer_root(1 << 63, 63), 2);
        assert_eq!(integer_root(80, 4), 2);
        assert_eq!(integer_root(81, 4), 3);
        assert_eq!(is_perfect_power(1 << 63).unwrap(), Some((2, 63)));
        assert_eq!(is_perfect_power(3u64.pow(40)).unwrap(), Some((3, 40)));
    }
}
