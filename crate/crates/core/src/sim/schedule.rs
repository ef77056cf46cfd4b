use super::config::HazardPolicy;

/// One scalar-point pair as seen by a BAM: the window it belongs to and the
/// bucket it updates (0 means no update).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pair {
    pub window: u32,
    pub bucket: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Fill,
    Reduce,
    Combine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamEvent {
    pub cycle: u64,
    pub bam_id: usize,
    pub bucket_index: u32,
    pub kind: EventKind,
}

#[derive(Debug, Clone, Copy)]
pub struct ScheduleParams {
    pub latency: u64,
    pub policy: HazardPolicy,
    pub defer_depth: usize,
    /// Bucket indices must be below this.
    pub bucket_count: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScheduleOutcome {
    /// One past the cycle of the last issue (issue starts at cycle 0).
    pub span: u64,
    pub issued: u64,
    /// Slots within the span with no issue.
    pub stall_cycles: u64,
    /// Pairs issued from the defer queue.
    pub deferred_replays: u64,
    /// Window of the last pair issued.
    pub last_window: Option<u32>,
}

const NEVER: u32 = u32::MAX;

struct Bam<'a, I: Iterator<Item = Pair>> {
    src: &'a mut I,
    head: Option<Pair>,
    deferred: Vec<Pair>,
    last_time: Vec<u64>,
    last_window: Vec<u32>,
    buckets: usize,
}

impl<I: Iterator<Item = Pair>> Bam<'_, I> {
    /// First cycle at which `pair` may issue.
    #[inline(always)]
    fn clear_at(&self, pair: &Pair, latency: u64) -> u64 {
        if pair.bucket == 0 {
            return 0;
        }
        let i = self.slot(pair);
        if self.last_window[i] != pair.window {
            0
        } else {
            self.last_time[i] + latency
        }
    }

    /// Bucket state is double-buffered by window parity, so a deferred pair
    /// still sees its own window's last update after the next window starts.
    #[inline(always)]
    fn slot(&self, pair: &Pair) -> usize {
        (pair.window as usize & 1) * self.buckets + pair.bucket as usize
    }

    #[inline(always)]
    fn mark(&mut self, pair: &Pair, t: u64) {
        if pair.bucket != 0 {
            let i = self.slot(pair);
            self.last_window[i] = pair.window;
            self.last_time[i] = t;
        }
    }

    /// The head may not enter a window two ahead of a pending deferred pair.
    #[inline(always)]
    fn head_gated(&self, head: &Pair) -> bool {
        self.deferred.iter().any(|d| d.window + 2 <= head.window)
    }

    /// Tries to issue at cycle `t`; returns the issued pair and whether it
    /// came from the defer queue.
    #[inline(always)]
    fn try_issue(&mut self, t: u64, p: &ScheduleParams) -> Option<(Pair, bool)> {
        if let Some(i) = self.deferred.iter().position(|d| self.clear_at(d, p.latency) <= t) {
            let pair = self.deferred.remove(i);
            self.mark(&pair, t);
            return Some((pair, true));
        }
        while let Some(head) = self.head {
            if self.head_gated(&head) {
                break;
            }
            if self.clear_at(&head, p.latency) <= t {
                self.head = self.src.next();
                self.mark(&head, t);
                return Some((head, false));
            }
            if p.policy == HazardPolicy::Defer && self.deferred.len() < p.defer_depth {
                self.deferred.push(head);
                self.head = self.src.next();
                continue;
            }
            break;
        }
        None
    }

    /// Earliest cycle at which something could issue, `None` when drained.
    fn next_ready(&self, p: &ScheduleParams) -> Option<u64> {
        let d = self.deferred.iter().map(|d| self.clear_at(d, p.latency)).min();
        let h = self.head.as_ref().filter(|h| !self.head_gated(h)).map(|h| self.clear_at(h, p.latency));
        match (d, h) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Issues the pairs of every BAM into one shared pipeline that accepts one
/// operation per cycle. A pair whose bucket (in the same window and BAM) was
/// issued fewer than `latency` cycles earlier is a hazard, handled per
/// `policy`. Slots are granted round-robin among BAMs with a ready pair.
pub fn schedule_stream<I: Iterator<Item = Pair>>(
    sources: &mut [I],
    params: &ScheduleParams,
    mut trace: Option<&mut Vec<StreamEvent>>,
) -> ScheduleOutcome {
    let s = sources.len();
    let mut bams: Vec<Bam<'_, I>> = sources
        .iter_mut()
        .map(|src| {
            let head = src.next();
            Bam {
                src,
                head,
                deferred: Vec::with_capacity(params.defer_depth),
                last_time: vec![0; 2 * params.bucket_count],
                last_window: vec![NEVER; 2 * params.bucket_count],
                buckets: params.bucket_count,
            }
        })
        .collect();

    let mut out = ScheduleOutcome::default();
    let mut t: u64 = 0;
    let mut rr = 0usize;
    loop {
        let mut granted = false;
        for o in 0..s {
            let b = (rr + o) % s;
            if let Some((pair, replay)) = bams[b].try_issue(t, params) {
                out.issued += 1;
                out.deferred_replays += replay as u64;
                out.last_window = Some(pair.window);
                out.span = t + 1;
                if let Some(tr) = trace.as_deref_mut() {
                    tr.push(StreamEvent { cycle: t, bam_id: b, bucket_index: pair.bucket, kind: EventKind::Fill });
                }
                rr = (b + 1) % s;
                granted = true;
                break;
            }
        }
        if granted {
            t += 1;
            continue;
        }
        match bams.iter().filter_map(|b| b.next_ready(params)).min() {
            Some(next) => {
                debug_assert!(next > t);
                t = next;
            }
            None => break,
        }
    }
    out.stall_cycles = out.span - out.issued;
    out
}
