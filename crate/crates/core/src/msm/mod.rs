//! Multi-scalar multiplication: a naive double-and-add baseline and the
//! windowed bucket method with two bucket-reduction strategies.

mod bucket;
mod combine;
mod naive;
mod pippenger;
mod slicing;

use thiserror::Error;

pub use bucket::{bucket_accumulate, bucket_reduce_recursive, bucket_reduce_running_sum, BucketArray};
pub use combine::{combine_windows, WindowResult};
pub use naive::msm_naive;
pub use pippenger::{msm_pippenger, msm_pippenger_report, PippengerReport};
pub use slicing::{slice_scalars, window_count, ScalarSlices};

use crate::curve::{AffinePoint, CurveParams};
use crate::scalar::Scalar;

pub const DEFAULT_WINDOW_BITS: u32 = 12;
pub const DEFAULT_INNER_WINDOW_BITS: u32 = 4;
pub const MAX_WINDOW_BITS: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MsmError {
    #[error("{scalars} scalars but {points} points")]
    LengthMismatch { scalars: usize, points: usize },
    #[error("empty input")]
    Empty,
    #[error("point {index} is not on the curve")]
    OffCurve { index: usize },
    #[error("scalar {index} has {bits} bits, wider than {max}")]
    ScalarTooWide { index: usize, bits: u32, max: u32 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("missing result for window {0}")]
    MissingWindow(usize),
}

/// How the bucket sums of one window are collapsed into `sum d * B[d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduction {
    /// Descending two-accumulator sweep.
    RunningSum,
    /// Treat the buckets as a smaller MSM with `k`-bit scalars `d` and solve
    /// it with the bucket method again using `inner_window_bits`.
    Recursive,
}

impl std::str::FromStr for Reduction {
    type Err = MsmError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "running-sum" | "running_sum" => Ok(Reduction::RunningSum),
            "recursive" => Ok(Reduction::Recursive),
            _ => Err(MsmError::InvalidConfig(format!("unknown reduction {s:?}"))),
        }
    }
}

impl std::fmt::Display for Reduction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Reduction::RunningSum => "running-sum",
            Reduction::Recursive => "recursive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MsmConfig {
    pub window_bits: u32,
    pub reduction: Reduction,
    pub inner_window_bits: u32,
    /// Window workers: 0 uses every available thread, 1 forces sequential.
    pub parallelism: usize,
}

impl Default for MsmConfig {
    fn default() -> Self {
        MsmConfig {
            window_bits: DEFAULT_WINDOW_BITS,
            reduction: Reduction::RunningSum,
            inner_window_bits: DEFAULT_INNER_WINDOW_BITS,
            parallelism: 0,
        }
    }
}

impl MsmConfig {
    pub fn new(window_bits: u32, reduction: Reduction) -> Self {
        MsmConfig { window_bits, reduction, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), MsmError> {
        if !(1..=MAX_WINDOW_BITS).contains(&self.window_bits) {
            return Err(MsmError::InvalidConfig(format!(
                "window bits {} outside 1..={MAX_WINDOW_BITS}",
                self.window_bits
            )));
        }
        if !(1..=self.window_bits).contains(&self.inner_window_bits) {
            return Err(MsmError::InvalidConfig(format!(
                "inner window bits {} outside 1..={}",
                self.inner_window_bits, self.window_bits
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_inputs(scalars: &[Scalar], points: &[AffinePoint], curve: &CurveParams) -> Result<(), MsmError> {
    if scalars.len() != points.len() {
        return Err(MsmError::LengthMismatch { scalars: scalars.len(), points: points.len() });
    }
    if scalars.is_empty() {
        return Err(MsmError::Empty);
    }
    let max = curve.scalar_bits();
    for (index, s) in scalars.iter().enumerate() {
        if s.bit_len() > max {
            return Err(MsmError::ScalarTooWide { index, bits: s.bit_len(), max });
        }
    }
    for (index, p) in points.iter().enumerate() {
        if !curve.is_on_curve_affine(p) {
            return Err(MsmError::OffCurve { index });
        }
    }
    Ok(())
}
