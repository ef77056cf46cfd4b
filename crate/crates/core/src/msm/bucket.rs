use crate::curve::{CurveParams, JacobianPoint, OpCounters};

use super::combine::{combine_windows, WindowResult};

/// Buckets `1..2^k`; bucket 0 is implicitly the identity and not stored.
#[derive(Debug, Clone)]
pub struct BucketArray {
    window_bits: u32,
    buckets: Vec<JacobianPoint>,
}

impl BucketArray {
    pub fn new(window_bits: u32, curve: &CurveParams) -> Self {
        BucketArray { window_bits, buckets: vec![curve.infinity(); (1usize << window_bits) - 1] }
    }

    pub fn window_bits(&self) -> u32 {
        self.window_bits
    }

    /// Highest bucket index, `2^k - 1`.
    pub fn top(&self) -> usize {
        self.buckets.len()
    }

    pub fn get(&self, d: usize) -> &JacobianPoint {
        &self.buckets[d - 1]
    }

    pub fn set(&mut self, d: usize, p: JacobianPoint) {
        self.buckets[d - 1] = p;
    }

    /// `(d, B[d])` for every non-identity bucket.
    pub fn occupied<'a>(&'a self, curve: &'a CurveParams) -> impl Iterator<Item = (usize, &'a JacobianPoint)> + 'a {
        self.buckets.iter().enumerate().filter(move |(_, b)| !curve.is_infinity(b)).map(|(i, b)| (i + 1, b))
    }
}

/// Adds each point into the bucket named by its digit; zero digits are skipped
/// and every other pair costs one unified double-add.
pub fn bucket_accumulate(
    digits: &[u32],
    points: &[JacobianPoint],
    window_bits: u32,
    curve: &CurveParams,
    counters: &mut OpCounters,
) -> BucketArray {
    assert_eq!(digits.len(), points.len());
    let mut b = BucketArray::new(window_bits, curve);
    for (&d, p) in digits.iter().zip(points) {
        if d == 0 {
            continue;
        }
        let d = d as usize;
        let sum = curve.unified_double_add(b.get(d), p, counters);
        b.set(d, sum);
    }
    b
}

/// `sum_d d * B[d]` by the descending sweep `A += E; E += B[i - 1]`,
/// costing `2 (2^k - 1) - 1` unified double-adds.
pub fn bucket_reduce_running_sum(b: &BucketArray, curve: &CurveParams, counters: &mut OpCounters) -> JacobianPoint {
    let top = b.top();
    let mut e = *b.get(top);
    let mut a = curve.infinity();
    for i in (1..=top).rev() {
        a = curve.unified_double_add(&a, &e, counters);
        if i > 1 {
            e = curve.unified_double_add(&e, b.get(i - 1), counters);
        }
    }
    a
}

/// `sum_d d * B[d]` computed as an MSM over the occupied buckets with the
/// `k`-bit scalars `d`, sliced into `inner_bits`-wide windows, each reduced by
/// a running sum and combined by double-and-add. Falls back to the running sum
/// when `inner_bits >= k`.
pub fn bucket_reduce_recursive(
    b: &BucketArray,
    inner_bits: u32,
    curve: &CurveParams,
    counters: &mut OpCounters,
) -> JacobianPoint {
    let k = b.window_bits();
    assert!(inner_bits >= 1);
    if inner_bits >= k {
        return bucket_reduce_running_sum(b, curve, counters);
    }
    let occupied: Vec<(usize, &JacobianPoint)> = b.occupied(curve).collect();
    if occupied.is_empty() {
        return curve.infinity();
    }
    let windows = k.div_ceil(inner_bits);
    let mask = (1usize << inner_bits) - 1;
    let results: Vec<WindowResult> = (0..windows)
        .map(|j| {
            let shift = j * inner_bits;
            let mut inner = BucketArray::new(inner_bits, curve);
            for &(d, p) in &occupied {
                let digit = (d >> shift) & mask;
                if digit != 0 {
                    let sum = curve.unified_double_add(inner.get(digit), p, counters);
                    inner.set(digit, sum);
                }
            }
            WindowResult { window_index: j as usize, partial: bucket_reduce_running_sum(&inner, curve, counters) }
        })
        .collect();
    combine_windows(&results, inner_bits, curve, counters).expect("all inner windows present")
}
