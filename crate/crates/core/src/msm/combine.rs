use crate::curve::{CurveParams, JacobianPoint, OpCounters};

use super::MsmError;

/// The partial sum `MSM_j` of window `j`.
#[derive(Debug, Clone, Copy)]
pub struct WindowResult {
    pub window_index: usize,
    pub partial: JacobianPoint,
}

/// `sum_j 2^(k j) * MSM_j` by Horner's rule from the top window:
/// `k (p - 1)` doublings and `p - 1` additions.
pub fn combine_windows(
    results: &[WindowResult],
    window_bits: u32,
    curve: &CurveParams,
    counters: &mut OpCounters,
) -> Result<JacobianPoint, MsmError> {
    let p = results.len();
    if p == 0 {
        return Err(MsmError::MissingWindow(0));
    }
    let mut ordered: Vec<Option<&JacobianPoint>> = vec![None; p];
    for r in results {
        match ordered.get_mut(r.window_index) {
            Some(slot) => *slot = Some(&r.partial),
            None => return Err(MsmError::InvalidConfig(format!("window index {} out of range", r.window_index))),
        }
    }
    if let Some(j) = ordered.iter().position(Option::is_none) {
        return Err(MsmError::MissingWindow(j));
    }
    let mut acc = *ordered[p - 1].unwrap();
    for j in (0..p - 1).rev() {
        for _ in 0..window_bits {
            acc = curve.point_double(&acc, counters);
        }
        acc = curve.unified_double_add(&acc, ordered[j].unwrap(), counters);
    }
    Ok(acc)
}
