//! Fixed-width unsigned scalars (up to 384 bits).

use std::fmt;

use num_bigint::BigUint;
use rand::RngCore;
use thiserror::Error;

pub const SCALAR_LIMBS: usize = 6;
pub const MAX_SCALAR_BITS: u32 = (SCALAR_LIMBS * 64) as u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("scalar needs {bits} bits, more than the {max} available")]
    TooWide { bits: u64, max: u32 },
    #[error("invalid scalar hex {0:?}")]
    InvalidHex(String),
}

/// Little-endian 64-bit limbs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Scalar([u64; SCALAR_LIMBS]);

impl Scalar {
    pub const ZERO: Scalar = Scalar([0; SCALAR_LIMBS]);

    pub fn from_u64(v: u64) -> Self {
        let mut l = [0; SCALAR_LIMBS];
        l[0] = v;
        Scalar(l)
    }

    pub fn from_limbs(limbs: [u64; SCALAR_LIMBS]) -> Self {
        Scalar(limbs)
    }

    pub fn limbs(&self) -> &[u64; SCALAR_LIMBS] {
        &self.0
    }

    pub fn from_biguint(v: &BigUint) -> Result<Self, ScalarError> {
        if v.bits() > MAX_SCALAR_BITS as u64 {
            return Err(ScalarError::TooWide { bits: v.bits(), max: MAX_SCALAR_BITS });
        }
        let mut l = [0; SCALAR_LIMBS];
        for (slot, d) in l.iter_mut().zip(v.to_u64_digits()) {
            *slot = d;
        }
        Ok(Scalar(l))
    }

    pub fn to_biguint(&self) -> BigUint {
        let mut digits = Vec::with_capacity(SCALAR_LIMBS * 2);
        for &l in &self.0 {
            digits.push(l as u32);
            digits.push((l >> 32) as u32);
        }
        BigUint::new(digits)
    }

    /// Uniform in `[0, 2^bits)`.
    pub fn random<R: RngCore + ?Sized>(rng: &mut R, bits: u32) -> Self {
        assert!(bits <= MAX_SCALAR_BITS);
        let mut l = [0u64; SCALAR_LIMBS];
        let full = (bits / 64) as usize;
        for limb in l.iter_mut().take(full) {
            *limb = rng.next_u64();
        }
        let rem = bits % 64;
        if rem != 0 {
            l[full] = rng.next_u64() & ((1u64 << rem) - 1);
        }
        Scalar(l)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&l| l == 0)
    }

    pub fn bit(&self, i: u32) -> bool {
        if i >= MAX_SCALAR_BITS {
            return false;
        }
        (self.0[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    /// Position of the highest set bit plus one (0 for zero).
    pub fn bit_len(&self) -> u32 {
        for i in (0..SCALAR_LIMBS).rev() {
            if self.0[i] != 0 {
                return i as u32 * 64 + 64 - self.0[i].leading_zeros();
            }
        }
        0
    }

    pub fn count_ones(&self) -> u32 {
        self.0.iter().map(|l| l.count_ones()).sum()
    }

    /// The `width`-bit digit starting at bit `offset` (`width <= 32`).
    pub fn bits_at(&self, offset: u32, width: u32) -> u32 {
        debug_assert!(width <= 32);
        if offset >= MAX_SCALAR_BITS {
            return 0;
        }
        let word = (offset / 64) as usize;
        let shift = offset % 64;
        let mut v = self.0[word] >> shift;
        if shift + width > 64 && word + 1 < SCALAR_LIMBS {
            v |= self.0[word + 1] << (64 - shift);
        }
        (v & ((1u64 << width) - 1)) as u32
    }

    /// Lowercase big-endian hex padded to `digits` characters.
    pub fn to_hex(&self, digits: usize) -> String {
        format!("{:0digits$x}", self.to_biguint(), digits = digits)
    }

    pub fn from_hex(s: &str) -> Result<Self, ScalarError> {
        let v = crate::field::parse_hex(s).ok_or_else(|| ScalarError::InvalidHex(s.to_string()))?;
        Self::from_biguint(&v)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar(0x{:x})", self.to_biguint())
    }
}

impl From<u64> for Scalar {
    fn from(v: u64) -> Self {
        Scalar::from_u64(v)
    }
}
