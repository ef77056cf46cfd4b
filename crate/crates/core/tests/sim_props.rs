use proptest::prelude::*;

use sabmsm::curves;
use sabmsm::sim::{
    cross_check, ideal_cycle_bound, reduction_ops, simulate, simulate_traced, sweep, EventKind, HazardPolicy,
    SimConfig, Workload,
};

fn small(m: u64) -> SimConfig {
    SimConfig { msm_size: m, ..Default::default() }
}

prop_compose! {
    fn config()(
        k in 2u32..=12,
        n in 12u32..=384,
        m in 0u64..3000,
        latency in 1u64..400,
        hazard in prop_oneof![Just(HazardPolicy::Stall), Just(HazardPolicy::Defer)],
        defer_depth in 1usize..=32,
        channels in 1u32..=4,
        bytes in 1u32..=64,
        cyclic in any::<bool>(),
        seed in any::<u64>(),
    )(
        s in 1usize..=n.div_ceil(k) as usize,
        inner in 1u32..=k,
        k in Just(k), n in Just(n), m in Just(m), latency in Just(latency), hazard in Just(hazard),
        defer_depth in Just(defer_depth), channels in Just(channels), bytes in Just(bytes),
        cyclic in Just(cyclic), seed in Just(seed),
    ) -> SimConfig {
        SimConfig {
            bam_count: s,
            uda_latency: latency,
            window_bits: k,
            inner_window_bits: inner,
            scalar_bits: n,
            msm_size: m,
            hazard,
            defer_depth,
            memory_channels: channels,
            channel_bytes_per_cycle: bytes,
            workload: if cyclic { Workload::Cyclic } else { Workload::Uniform },
            seed,
            ..Default::default()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn never_beats_the_bound(cfg in config()) {
        let r = simulate(&cfg).unwrap();
        prop_assert!(r.total_cycles >= r.ideal_cycles, "{} < {}", r.total_cycles, r.ideal_cycles);
        prop_assert_eq!(r.ideal_cycles, ideal_cycle_bound(&cfg).unwrap());
        prop_assert!(r.uda_utilization <= 1.0);
        if cfg.msm_size > 0 {
            prop_assert!(r.uda_utilization > 0.0);
        }
        prop_assert_eq!(r.fill_issues, cfg.window_count() as u64 * cfg.msm_size);
        prop_assert_eq!(r.total_cycles, r.fill_cycles + r.rbam_cycles + r.dna_cycles);
    }

    #[test]
    fn deterministic(cfg in config()) {
        prop_assert_eq!(simulate(&cfg).unwrap(), simulate(&cfg).unwrap());
    }

    #[test]
    fn hazard_free_streams_meet_the_bound(
        k in 2u32..=12,
        n in 12u32..=384,
        s_pick in any::<prop::sample::Index>(),
        latency in 1u64..300,
        m in 1u64..5000,
        hazard in prop_oneof![Just(HazardPolicy::Stall), Just(HazardPolicy::Defer)],
    ) {
        // Cyclic digits revisit a bucket every 2^k - 1 issues of the same BAM,
        // so there is no hazard when that gap covers the latency or the window
        // never wraps.
        let wrap = (1u64 << k) - 1;
        prop_assume!(latency <= wrap || m <= wrap);
        let p = n.div_ceil(k) as usize;
        let cfg = SimConfig {
            bam_count: 1 + s_pick.index(p),
            uda_latency: latency,
            window_bits: k,
            inner_window_bits: k.div_ceil(2),
            scalar_bits: n,
            msm_size: m,
            hazard,
            workload: Workload::Cyclic,
            ..Default::default()
        };
        let r = simulate(&cfg).unwrap();
        prop_assert_eq!(r.stall_cycles, 0);
        prop_assert_eq!(r.total_cycles, r.ideal_cycles);
    }

    #[test]
    fn trace_respects_hazard_window(seed in any::<u64>(), defer in any::<bool>(), s in 1usize..=3) {
        let cfg = SimConfig {
            bam_count: s,
            uda_latency: 20,
            window_bits: 4,
            scalar_bits: 12,
            inner_window_bits: 2,
            msm_size: 60,
            hazard: if defer { HazardPolicy::Defer } else { HazardPolicy::Stall },
            defer_depth: 3,
            seed,
            ..Default::default()
        };
        let (_, trace) = simulate_traced(&cfg).unwrap();
        let fill: Vec<_> = trace.iter().filter(|e| e.kind == EventKind::Fill).collect();
        prop_assert_eq!(fill.len(), 3 * 60);
        // At most one issue per cycle.
        for w in fill.windows(2) {
            prop_assert!(w[1].cycle > w[0].cycle);
        }
        // Every BAM issues exactly the pairs of its own windows.
        for b in 0..s {
            let per: Vec<_> = fill.iter().filter(|e| e.bam_id == b).collect();
            let windows = (b..3).step_by(s).count();
            prop_assert_eq!(per.len(), windows * 60);
        }
    }
}

#[test]
fn zero_size_is_overhead_and_drains() {
    let cfg = small(0);
    let r = simulate(&cfg).unwrap();
    assert_eq!(r.total_cycles, 2 * cfg.uda_latency);
    assert_eq!(r.dna_cycles, 0);
    assert_eq!(r.fill_issues, 0);
    assert_eq!(r.uda_utilization, 0.0);
    assert!((r.host_seconds - cfg.host_fixed_seconds).abs() < 1e-15);
    assert_eq!(r.throughput_mpps, 0.0);
}

#[test]
fn smallest_instance_bound() {
    let cfg = SimConfig {
        window_bits: 1,
        inner_window_bits: 1,
        scalar_bits: 1,
        msm_size: 1,
        workload: Workload::Cyclic,
        ..Default::default()
    };
    // One fill issue, a one-op running sum, no combination, two drains.
    assert_eq!(ideal_cycle_bound(&cfg).unwrap(), 1 + 1 + 2 * 270);
}

#[test]
fn fill_term_dominates_default_bound() {
    let cfg = small(1 << 20);
    let bound = ideal_cycle_bound(&cfg).unwrap();
    let fill = 32u64 << 20;
    assert!(bound > fill);
    assert!((bound - fill) as f64 / (fill as f64) < 0.02, "{bound}");
}

#[test]
fn single_bam_uniform_digits_stall() {
    let r = simulate(&small(1 << 16)).unwrap();
    assert!(r.stall_cycles > 0);
    assert!(r.uda_utilization < 1.0);
}

#[test]
fn second_bam_raises_utilization() {
    for m in [1 << 12, 1 << 16] {
        let one = simulate(&small(m)).unwrap();
        let two = simulate(&SimConfig { bam_count: 2, ..small(m) }).unwrap();
        assert!(two.uda_utilization > one.uda_utilization, "m={m}");
        assert!(two.throughput_mpps > one.throughput_mpps, "m={m}");
    }
}

#[test]
fn defer_is_not_slower_than_stall() {
    let mut grid = Vec::new();
    for s in [1, 2, 4] {
        for k in [8, 10, 12] {
            for depth in [1, 4, 16] {
                for seed in 0..3 {
                    grid.push(SimConfig {
                        bam_count: s,
                        window_bits: k,
                        defer_depth: depth,
                        msm_size: 1 << 14,
                        seed,
                        ..Default::default()
                    });
                }
            }
        }
    }
    let stall = sweep(&grid).unwrap();
    let defer_cfgs: Vec<SimConfig> =
        grid.iter().map(|c| SimConfig { hazard: HazardPolicy::Defer, ..c.clone() }).collect();
    let defer = sweep(&defer_cfgs).unwrap();
    for ((c, a), b) in grid.iter().zip(&stall).zip(&defer) {
        assert!(
            b.total_cycles <= a.total_cycles,
            "S={} k={} D={} seed={}: defer {} > stall {}",
            c.bam_count,
            c.window_bits,
            c.defer_depth,
            c.seed,
            b.total_cycles,
            a.total_cycles
        );
    }
}

#[test]
fn wider_field_costs_proportionally_more() {
    let bls = simulate(&small(1 << 18)).unwrap();
    let bn = simulate(&SimConfig { scalar_bits: 254, ..small(1 << 18) }).unwrap();
    let ratio = bls.compute_seconds / bn.compute_seconds;
    assert!((ratio - 32.0 / 22.0).abs() < 0.05, "{ratio}");
}

#[test]
fn memory_bandwidth_can_bound_fill() {
    let fast = simulate(&small(1 << 12)).unwrap();
    let slow = simulate(&SimConfig { memory_channels: 1, channel_bytes_per_cycle: 1, ..small(1 << 12) }).unwrap();
    assert!(slow.fill_cycles > fast.fill_cycles);
    // 144-byte pairs at one byte per cycle.
    assert!(slow.fill_cycles >= 32 * (1 << 12) * 144);
    assert!(slow.total_cycles >= slow.ideal_cycles);
}

#[test]
fn model_counts_match_engine() {
    for (workload, m) in [(Workload::Uniform, 300), (Workload::Cyclic, 40)] {
        let cfg = SimConfig {
            window_bits: 6,
            inner_window_bits: 3,
            scalar_bits: 24,
            msm_size: m,
            workload,
            seed: 9,
            ..Default::default()
        };
        let x = cross_check(&cfg, curves::bn128()).unwrap();
        assert!(x.matches(), "{x:?}");
    }
}

#[test]
fn reduction_model_edge_cases() {
    assert_eq!(reduction_ops(&[], 12, 4), 0);
    assert_eq!(reduction_ops(&[1, 2, 3], 4, 4), 2 * 15 - 1);
    // A single occupied bucket in the lowest slice: one fill op, two 5-op
    // inner sums and a 2-bit combine of two windows (2 doublings, 1 add).
    assert_eq!(reduction_ops(&[1], 4, 2), 1 + 2 * 5 + 3);
}

#[test]
fn config_validation() {
    assert!(simulate(&SimConfig { bam_count: 0, ..small(1) }).is_err());
    assert!(simulate(&SimConfig { bam_count: 33, ..small(1) }).is_err());
    assert!(simulate(&SimConfig { uda_latency: 0, ..small(1) }).is_err());
    assert!(simulate(&SimConfig { inner_window_bits: 13, ..small(1) }).is_err());
    assert!(simulate(&SimConfig { window_bits: 21, ..small(1) }).is_err());
}
