use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{CurveParams, JacobianPoint, OpCounters};
use crate::msm::{bucket_accumulate, bucket_reduce_recursive, combine_windows, WindowResult};

use super::config::{SimConfig, Workload};
use super::schedule::{schedule_stream, EventKind, Pair, ScheduleParams, StreamEvent};
use super::SimError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimReport {
    pub total_cycles: u64,
    pub fill_cycles: u64,
    pub rbam_cycles: u64,
    pub dna_cycles: u64,
    pub ideal_cycles: u64,
    /// Fill-phase issue slots, `p * m` (zero digits included).
    pub fill_issues: u64,
    /// Fill-phase issues that update a bucket.
    pub fill_updates: u64,
    pub reduction_ops: u64,
    pub combine_ops: u64,
    pub stall_cycles: u64,
    pub deferred_replays: u64,
    pub compute_seconds: f64,
    pub host_seconds: f64,
    pub total_seconds: f64,
    pub uda_utilization: f64,
    pub throughput_mpps: f64,
}

/// Digits of one window, in stream order.
struct WindowDigits {
    rng: ChaCha8Rng,
    workload: Workload,
    k: u32,
    m: u64,
    i: u64,
    buf: u64,
    left: u32,
}

impl WindowDigits {
    fn new(cfg: &SimConfig, window: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(window as u64);
        WindowDigits { rng, workload: cfg.workload, k: cfg.window_bits, m: cfg.msm_size, i: 0, buf: 0, left: 0 }
    }
}

impl Iterator for WindowDigits {
    type Item = u32;

    #[inline(always)]
    fn next(&mut self) -> Option<u32> {
        if self.i == self.m {
            return None;
        }
        let d = match self.workload {
            Workload::Uniform => {
                if self.left == 0 {
                    self.buf = self.rng.next_u64();
                    self.left = 64 / self.k;
                }
                let d = (self.buf & ((1u64 << self.k) - 1)) as u32;
                self.buf >>= self.k;
                self.left -= 1;
                d
            }
            Workload::Cyclic => 1 + (self.i % ((1u64 << self.k) - 1)) as u32,
        };
        self.i += 1;
        Some(d)
    }
}

/// The pair stream of one BAM (windows `b, b + S, ...`), recording which
/// buckets each window touches.
struct BamStream {
    cfg: SimConfig,
    windows: Vec<u32>,
    at: usize,
    current: Option<WindowDigits>,
    occupancy: Vec<Vec<u64>>,
    updates: u64,
}

impl BamStream {
    fn new(cfg: &SimConfig, windows: Vec<u32>) -> Self {
        let words = (1usize << cfg.window_bits).div_ceil(64);
        let current = windows.first().map(|&w| WindowDigits::new(cfg, w));
        BamStream {
            cfg: cfg.clone(),
            occupancy: vec![vec![0; words]; windows.len()],
            windows,
            at: 0,
            current,
            updates: 0,
        }
    }
}

impl Iterator for BamStream {
    type Item = Pair;

    #[inline(always)]
    fn next(&mut self) -> Option<Pair> {
        loop {
            let digits = self.current.as_mut()?;
            if let Some(d) = digits.next() {
                if d != 0 {
                    self.occupancy[self.at][(d / 64) as usize] |= 1 << (d % 64);
                    self.updates += 1;
                }
                return Some(Pair { window: self.windows[self.at], bucket: d });
            }
            self.at += 1;
            self.current = self.windows.get(self.at).map(|&w| WindowDigits::new(&self.cfg, w));
        }
    }
}

fn occupied(bits: &[u64]) -> Vec<u32> {
    let mut out = Vec::new();
    for (i, &w) in bits.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros();
            out.push(i as u32 * 64 + b);
            w &= w - 1;
        }
    }
    out
}

/// Unified double-adds spent reducing one window whose occupied buckets are
/// `occupied`, matching the bucket-method engine: a running sum costs
/// `2 (2^k - 1) - 1`; the recursive reduction slices the occupied indices into
/// `k_inner`-bit digits, fills an inner bucket array per slice, reduces each
/// with a running sum and combines them by double-and-add.
pub fn reduction_ops(occupied: &[u32], k: u32, k_inner: u32) -> u64 {
    if k_inner >= k {
        return 2 * ((1u64 << k) - 1) - 1;
    }
    if occupied.is_empty() {
        return 0;
    }
    let inner_windows = k.div_ceil(k_inner) as u64;
    let mask = (1u32 << k_inner) - 1;
    let fill: u64 = (0..inner_windows)
        .map(|j| occupied.iter().filter(|&&d| (d >> (j as u32 * k_inner)) & mask != 0).count() as u64)
        .sum();
    let inner_sum = 2 * ((1u64 << k_inner) - 1) - 1;
    fill + inner_windows * inner_sum + combine_ops(k_inner, inner_windows as usize)
}

/// Doublings plus additions of the Horner combination of `p` windows.
pub fn combine_ops(k: u32, p: usize) -> u64 {
    let p = p as u64;
    k as u64 * p.saturating_sub(1) + p.saturating_sub(1)
}

fn bam_streams(cfg: &SimConfig) -> Vec<BamStream> {
    let p = cfg.window_count() as u32;
    let s = cfg.bam_count as u32;
    (0..s).map(|b| BamStream::new(cfg, (b..p).step_by(s as usize).collect())).collect()
}

struct WindowWork {
    per_window: Vec<u64>,
    updates: u64,
}

fn reduction_per_window(cfg: &SimConfig, streams: &[BamStream]) -> WindowWork {
    let mut per_window = vec![0; cfg.window_count()];
    let mut updates = 0;
    for s in streams {
        updates += s.updates;
        for (w, bits) in s.windows.iter().zip(&s.occupancy) {
            per_window[*w as usize] = reduction_ops(&occupied(bits), cfg.window_bits, cfg.inner_window_bits);
        }
    }
    WindowWork { per_window, updates }
}

fn memory_span(cfg: &SimConfig) -> u64 {
    let rounds = cfg.window_count().div_ceil(cfg.bam_count) as u64;
    let per_cycle = cfg.memory_channels as u64 * cfg.channel_bytes_per_cycle as u64;
    rounds * (cfg.msm_size * cfg.pair_bytes()).div_ceil(per_cycle)
}

fn bound_from(cfg: &SimConfig, reduction_total: u64, reduction_min: u64) -> u64 {
    let l = cfg.uda_latency;
    if cfg.msm_size == 0 {
        return 2 * l;
    }
    let p = cfg.window_count() as u64;
    let c = combine_ops(cfg.window_bits, cfg.window_count());
    let fill = p * cfg.msm_size;
    (fill + reduction_total).max(memory_span(cfg) + reduction_min) + 2 * l + c * l
}

/// Lower bound on total cycles for the configured workload: every pair takes
/// one issue slot, every reduction operation one slot, the combination chain
/// `L` cycles per operation, plus one pipeline drain after fill and after
/// reduction. Memory streaming can bound the fill phase instead.
pub fn ideal_cycle_bound(cfg: &SimConfig) -> Result<u64, SimError> {
    cfg.validate()?;
    let mut streams = bam_streams(cfg);
    for s in streams.iter_mut() {
        for _ in s.by_ref() {}
    }
    let w = reduction_per_window(cfg, &streams);
    let total: u64 = w.per_window.iter().sum();
    let min = w.per_window.iter().copied().min().unwrap_or(0);
    Ok(bound_from(cfg, total, min))
}

fn run(cfg: &SimConfig, trace: Option<&mut Vec<StreamEvent>>) -> Result<SimReport, SimError> {
    cfg.validate()?;
    let l = cfg.uda_latency;
    let m = cfg.msm_size;
    let p = cfg.window_count() as u64;
    let mut streams = bam_streams(cfg);
    let params = ScheduleParams {
        latency: l,
        policy: cfg.hazard,
        defer_depth: cfg.defer_depth,
        bucket_count: 1 << cfg.window_bits,
    };
    let mut trace = trace;
    let sched = schedule_stream(&mut streams, &params, trace.as_deref_mut());
    debug_assert_eq!(sched.issued, p * m);

    let work = reduction_per_window(cfg, &streams);
    let reduction_total: u64 = work.per_window.iter().sum();
    let reduction_min = work.per_window.iter().copied().min().unwrap_or(0);
    let reduction_last = sched.last_window.map_or(0, |w| work.per_window[w as usize]);
    let combine = combine_ops(cfg.window_bits, cfg.window_count());

    let (fill_cycles, rbam_cycles, dna_cycles, tail_ops, combine_ops) = if m == 0 {
        (l, l, 0, 0, 0)
    } else {
        let fill_span = sched.span.max(memory_span(cfg));
        let bubbles = fill_span - sched.issued;
        let tail = reduction_total.saturating_sub(bubbles).max(reduction_last);
        (fill_span + l, tail + l, combine * l, tail, combine)
    };
    let total_cycles = fill_cycles + rbam_cycles + dna_cycles;
    let ideal_cycles = bound_from(cfg, reduction_total, reduction_min);

    if let Some(tr) = trace {
        let bam = sched.last_window.map_or(0, |w| w as usize % cfg.bam_count);
        for i in 0..tail_ops {
            tr.push(StreamEvent { cycle: fill_cycles + i, bam_id: bam, bucket_index: 0, kind: EventKind::Reduce });
        }
        let start = fill_cycles + rbam_cycles;
        for i in 0..combine_ops {
            tr.push(StreamEvent { cycle: start + i * l, bam_id: 0, bucket_index: 0, kind: EventKind::Combine });
        }
    }

    let compute_seconds = total_cycles as f64 / cfg.fmax_hz;
    let host_seconds = cfg.host_fixed_seconds + (m * cfg.scalar_bytes()) as f64 / cfg.host_bytes_per_second;
    let total_seconds = compute_seconds + host_seconds;
    let busy = sched.issued + if m == 0 { 0 } else { reduction_total + combine };
    Ok(SimReport {
        total_cycles,
        fill_cycles,
        rbam_cycles,
        dna_cycles,
        ideal_cycles,
        fill_issues: sched.issued,
        fill_updates: work.updates,
        reduction_ops: if m == 0 { 0 } else { reduction_total },
        combine_ops,
        stall_cycles: sched.stall_cycles,
        deferred_replays: sched.deferred_replays,
        compute_seconds,
        host_seconds,
        total_seconds,
        uda_utilization: busy as f64 / total_cycles as f64,
        throughput_mpps: m as f64 / total_seconds / 1e6,
    })
}

/// Runs the model. The result is a pure function of the configuration.
pub fn simulate(cfg: &SimConfig) -> Result<SimReport, SimError> {
    run(cfg, None)
}

/// Like [`simulate`], also returning every issue event. Meant for small runs.
pub fn simulate_traced(cfg: &SimConfig) -> Result<(SimReport, Vec<StreamEvent>), SimError> {
    let mut trace = Vec::new();
    let r = run(cfg, Some(&mut trace))?;
    Ok((r, trace))
}

/// Modeled versus counted operations for one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossCheck {
    pub modeled_fill: u64,
    pub counted_fill: u64,
    pub modeled_reduction: u64,
    pub counted_reduction: u64,
    pub modeled_combine: u64,
    pub counted_combine: u64,
}

impl CrossCheck {
    pub fn matches(&self) -> bool {
        self.modeled_fill == self.counted_fill
            && self.modeled_reduction == self.counted_reduction
            && self.modeled_combine == self.counted_combine
    }
}

/// Replays the configured digit streams through the bucket-method engine on
/// `curve` (points `G, 2G, ..., mG`) and compares operation counts with the
/// model.
pub fn cross_check(cfg: &SimConfig, curve: &CurveParams) -> Result<CrossCheck, SimError> {
    let report = simulate(cfg)?;
    let mut walk = OpCounters::default();
    let g = curve.to_jacobian(curve.generator());
    let mut points: Vec<JacobianPoint> = Vec::with_capacity(cfg.msm_size as usize);
    let mut acc = g;
    for _ in 0..cfg.msm_size {
        points.push(acc);
        acc = curve.unified_double_add(&acc, &g, &mut walk);
    }
    let mut fill = OpCounters::default();
    let mut reduce = OpCounters::default();
    let mut results = Vec::new();
    for w in 0..cfg.window_count() as u32 {
        let digits: Vec<u32> = WindowDigits::new(cfg, w).collect();
        let buckets = bucket_accumulate(&digits, &points, cfg.window_bits, curve, &mut fill);
        let partial = bucket_reduce_recursive(&buckets, cfg.inner_window_bits, curve, &mut reduce);
        results.push(WindowResult { window_index: w as usize, partial });
    }
    let mut combine = OpCounters::default();
    if cfg.msm_size > 0 {
        combine_windows(&results, cfg.window_bits, curve, &mut combine)
            .map_err(|e| SimError::InvalidConfig(e.to_string()))?;
    }
    Ok(CrossCheck {
        modeled_fill: report.fill_updates,
        counted_fill: fill.point_ops(),
        modeled_reduction: report.reduction_ops,
        counted_reduction: reduce.point_ops(),
        modeled_combine: report.combine_ops,
        counted_combine: combine.point_ops(),
    })
}
