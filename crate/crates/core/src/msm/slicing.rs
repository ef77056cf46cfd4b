use num_bigint::BigUint;

use crate::scalar::Scalar;

/// Number of `k`-bit windows covering `n` bits.
pub fn window_count(n: u32, k: u32) -> usize {
    n.div_ceil(k) as usize
}

/// Per-window digit arrays, window 0 holding the least significant bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarSlices {
    pub window_bits: u32,
    pub digits: Vec<Vec<u32>>,
}

impl ScalarSlices {
    pub fn window_count(&self) -> usize {
        self.digits.len()
    }

    pub fn len(&self) -> usize {
        self.digits.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn window(&self, j: usize) -> &[u32] {
        &self.digits[j]
    }

    /// Digits of scalar `i`, least significant first.
    pub fn digits_of(&self, i: usize) -> Vec<u32> {
        self.digits.iter().map(|w| w[i]).collect()
    }

    /// `sum_j digit_j * 2^(k j)` for scalar `i`.
    pub fn recompose(&self, i: usize) -> BigUint {
        let mut acc = BigUint::default();
        for w in self.digits.iter().rev() {
            acc <<= self.window_bits;
            acc += w[i];
        }
        acc
    }
}

/// Splits `n`-bit scalars into `ceil(n / k)` windows of `k` bits; the top
/// window is zero-padded when `k` does not divide `n`.
pub fn slice_scalars(scalars: &[Scalar], n: u32, k: u32) -> ScalarSlices {
    assert!((1..=32).contains(&k), "window bits must be in 1..=32");
    let p = window_count(n, k);
    let digits = (0..p)
        .map(|j| {
            let offset = j as u32 * k;
            let width = k.min(n - offset);
            scalars.iter().map(|s| s.bits_at(offset, width)).collect()
        })
        .collect();
    ScalarSlices { window_bits: k, digits }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nibble_example() {
        let s = slice_scalars(&[Scalar::from_u64(0xB3)], 8, 4);
        assert_eq!(s.digits_of(0), vec![3, 11]);
    }

    #[test]
    fn zero_scalar_gives_zero_digits() {
        let s = slice_scalars(&[Scalar::ZERO], 381, 12);
        assert!(s.digits_of(0).iter().all(|&d| d == 0));
    }

    #[test]
    fn window_counts_for_real_widths() {
        assert_eq!(window_count(254, 12), 22);
        assert_eq!(window_count(381, 12), 32);
        assert_eq!(window_count(1, 1), 1);
    }

    #[test]
    fn top_window_is_truncated_to_n() {
        // Bits above n are not part of the scalar width and are ignored.
        let s = slice_scalars(&[Scalar::from_u64(0x3ff)], 10, 4);
        assert_eq!(s.digits_of(0), vec![0xf, 0xf, 0x3]);
    }
}
