use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_GUARD_BITS: u32 = 32;

fn default_guard() -> u32 {
    DEFAULT_GUARD_BITS
}

/// Working precision `bits` (fractional bits of every fixed-point value)
/// and the guard margin `guard` that results are allowed to lose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawContext")]
pub struct PrecisionContext {
    bits: u32,
    #[serde(default = "default_guard")]
    guard: u32,
}

#[derive(Deserialize)]
struct RawContext {
    bits: u32,
    #[serde(default = "default_guard")]
    guard: u32,
}

impl TryFrom<RawContext> for PrecisionContext {
    type Error = Error;

    fn try_from(r: RawContext) -> Result<Self> {
        PrecisionContext::with_guard(r.bits, r.guard)
    }
}

impl PrecisionContext {
    pub fn new(bits: u32) -> Result<Self> {
        // keeps g < P/2 at the smallest precisions
        Self::with_guard(bits, DEFAULT_GUARD_BITS.min(bits.saturating_sub(1) / 2))
    }

    pub fn with_guard(bits: u32, guard: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::InvalidInput(format!("working precision {bits} < 64 bits")));
        }
        if guard == 0 || 2 * guard >= bits {
            return Err(Error::InvalidInput(format!("guard bits {guard} must be positive and below {}", bits / 2)));
        }
        Ok(PrecisionContext { bits, guard })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Bits the results are certified to: `bits - guard`.
    pub fn certified_bits(&self) -> u32 {
        self.bits - self.guard
    }

    pub fn doubled(&self) -> Self {
        PrecisionContext { bits: 2 * self.bits, guard: self.guard }
    }

    /// Guard raised by `ceil(log2 terms)` for long accumulations.
    pub fn for_terms(&self, terms: usize) -> Self {
        let extra = usize::BITS - terms.max(1).saturating_sub(1).leading_zeros();
        let guard = (self.guard + extra).min(self.bits / 2 - 1);
        PrecisionContext { bits: self.bits, guard }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(PrecisionContext::new(63).is_err());
        assert!(PrecisionContext::with_guard(64, 32).is_err());
        assert_eq!(PrecisionContext::new(64).unwrap().guard(), 31);
        assert!(PrecisionContext::with_guard(128, 32).is_ok());
        let c: PrecisionContext = serde_json::from_str(r#"{"bits":256}"#).unwrap();
        assert_eq!((c.bits(), c.guard()), (256, 32));
        assert!(serde_json::from_str::<PrecisionContext>(r#"{"bits":32}"#).is_err());
    }

    #[test]
    fn guard_growth() {
        let c = PrecisionContext::new(256).unwrap();
        assert_eq!(c.for_terms(1).guard(), 32);
        assert_eq!(c.for_terms(8).guard(), 35);
        assert_eq!(c.for_terms(9).guard(), 36);
    }
}
