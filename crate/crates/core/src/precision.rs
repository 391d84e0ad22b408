//! Working-precision context shared by every operation in the crate.

use rug::Float;

use crate::error::Error;
use crate::Result;

/// Minimum number of mantissa bits a context may request.
pub const MIN_BITS: u32 = 64;

/// Default number of mantissa bits when none is configured.
pub const DEFAULT_BITS: u32 = 256;

/// Guard bits added internally on top of the requested precision so that
/// results are correct to the *requested* precision after rounding.
pub const DEFAULT_GUARD_BITS: u32 = 32;

/// Precision configuration for all evaluations.
///
/// `bits` is the target mantissa precision of returned values, `eps` is the
/// unit roundoff `2^(1-bits)` at that precision, and `guard_bits` is the extra
/// internal headroom used while summing.
#[derive(Debug, Clone)]
pub struct PrecisionContext {
    bits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    /// Creates a context with the given target precision and the default guard.
    ///
    /// Fails with [`Error::InvalidPrecision`] when `bits < 64`.
    pub fn new(bits: u32) -> Result<Self> {
        if bits < MIN_BITS {
            return Err(Error::InvalidPrecision(format!(
                "requested {bits} mantissa bits; the minimum supported is {MIN_BITS}"
            )));
        }
        Ok(Self {
            bits,
            guard_bits: DEFAULT_GUARD_BITS,
        })
    }

    /// Creates a context with an explicit guard-bit count.
    pub fn with_guard(bits: u32, guard_bits: u32) -> Result<Self> {
        let mut ctx = Self::new(bits)?;
        ctx.guard_bits = guard_bits;
        Ok(ctx)
    }

    /// Target mantissa precision of returned values.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Guard bits used internally on top of `bits`.
    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Internal working precision: `bits + guard_bits`.
    pub fn working_bits(&self) -> u32 {
        self.bits + self.guard_bits
    }

    /// Unit roundoff `2^(1-bits)` at the target precision, exactly representable.
    pub fn eps(&self) -> Float {
        let mut one = Float::with_val(self.bits, 1);
        one >>= self.bits - 1;
        one
    }

    /// A fresh real value at the target precision.
    pub fn float<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits, v)
    }

    /// A fresh real value at the working precision.
    pub fn wfloat<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.working_bits(), v)
    }

    /// A derived context whose *target* precision is raised to
    /// `bits + extra`, used for internal evaluations that must survive
    /// catastrophic cancellation of roughly `extra` bits.
    pub fn elevated(&self, extra: u32) -> Self {
        Self {
            bits: self.bits + extra,
            guard_bits: self.guard_bits,
        }
    }

    /// Rounds a working-precision value down to the target precision.
    pub fn round(&self, v: &Float) -> Float {
        Float::with_val(self.bits, v)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            bits: DEFAULT_BITS,
            guard_bits: DEFAULT_GUARD_BITS,
        }
    }
}
