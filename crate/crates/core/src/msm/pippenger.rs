use crate::curve::{AffinePoint, CurveParams, JacobianPoint, OpCounters};
use crate::scalar::Scalar;

use super::bucket::{bucket_accumulate, bucket_reduce_recursive, bucket_reduce_running_sum};
use super::combine::{combine_windows, WindowResult};
use super::slicing::slice_scalars;
use super::{check_inputs, MsmConfig, MsmError, Reduction};

/// Result of a bucket-method run with per-phase operation counts.
#[derive(Debug, Clone, Copy)]
pub struct PippengerReport {
    pub result: JacobianPoint,
    pub msm_size: usize,
    pub window_count: usize,
    pub fill: OpCounters,
    pub reduce: OpCounters,
    pub combine: OpCounters,
}

impl PippengerReport {
    pub fn total(&self) -> OpCounters {
        self.fill + self.reduce + self.combine
    }

    /// Bucket-fill point additions per input point.
    pub fn fill_adds_per_point(&self) -> f64 {
        self.fill.point_ops() as f64 / self.msm_size as f64
    }
}

struct WindowOutput {
    result: WindowResult,
    fill: OpCounters,
    reduce: OpCounters,
}

fn run_window(
    j: usize,
    digits: &[u32],
    points: &[JacobianPoint],
    curve: &CurveParams,
    cfg: &MsmConfig,
) -> WindowOutput {
    let mut fill = OpCounters::default();
    let mut reduce = OpCounters::default();
    let buckets = bucket_accumulate(digits, points, cfg.window_bits, curve, &mut fill);
    let partial = match cfg.reduction {
        Reduction::RunningSum => bucket_reduce_running_sum(&buckets, curve, &mut reduce),
        Reduction::Recursive => bucket_reduce_recursive(&buckets, cfg.inner_window_bits, curve, &mut reduce),
    };
    WindowOutput { result: WindowResult { window_index: j, partial }, fill, reduce }
}

#[cfg(feature = "parallel")]
fn run_windows(
    windows: &[Vec<u32>],
    points: &[JacobianPoint],
    curve: &CurveParams,
    cfg: &MsmConfig,
) -> Vec<WindowOutput> {
    use rayon::prelude::*;
    let work = || windows.par_iter().enumerate().map(|(j, d)| run_window(j, d, points, curve, cfg)).collect();
    match cfg.parallelism {
        1 => windows.iter().enumerate().map(|(j, d)| run_window(j, d, points, curve, cfg)).collect(),
        0 => work(),
        n => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
fn run_windows(
    windows: &[Vec<u32>],
    points: &[JacobianPoint],
    curve: &CurveParams,
    cfg: &MsmConfig,
) -> Vec<WindowOutput> {
    windows.iter().enumerate().map(|(j, d)| run_window(j, d, points, curve, cfg)).collect()
}

/// Bucket method: slice, fill one bucket array per window, reduce each with
/// the configured strategy, then combine windows by double-and-add. Counters
/// are merged in window order, so totals do not depend on scheduling.
pub fn msm_pippenger_report(
    scalars: &[Scalar],
    points: &[AffinePoint],
    curve: &CurveParams,
    cfg: &MsmConfig,
) -> Result<PippengerReport, MsmError> {
    cfg.validate()?;
    check_inputs(scalars, points, curve)?;
    let slices = slice_scalars(scalars, curve.scalar_bits(), cfg.window_bits);
    let jac: Vec<JacobianPoint> = points.iter().map(|p| curve.to_jacobian(p)).collect();
    let outputs = run_windows(&slices.digits, &jac, curve, cfg);

    let mut fill = OpCounters::default();
    let mut reduce = OpCounters::default();
    let mut results = Vec::with_capacity(outputs.len());
    for o in outputs {
        fill += o.fill;
        reduce += o.reduce;
        results.push(o.result);
    }
    let mut combine = OpCounters::default();
    let result = combine_windows(&results, cfg.window_bits, curve, &mut combine)?;
    Ok(PippengerReport { result, msm_size: scalars.len(), window_count: slices.window_count(), fill, reduce, combine })
}

pub fn msm_pippenger(
    scalars: &[Scalar],
    points: &[AffinePoint],
    curve: &CurveParams,
    cfg: &MsmConfig,
    counters: &mut OpCounters,
) -> Result<JacobianPoint, MsmError> {
    let report = msm_pippenger_report(scalars, points, curve, cfg)?;
    *counters += report.total();
    Ok(report.result)
}
