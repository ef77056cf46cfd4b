use std::io::Write;

use super::config::{SimConfig, CONFIG_KEYS};
use super::model::{simulate, SimReport};
use super::SimError;

const REPORT_KEYS: [&str; 16] = [
    "total_cycles",
    "fill_cycles",
    "rbam_cycles",
    "dna_cycles",
    "ideal_cycles",
    "fill_issues",
    "fill_updates",
    "reduction_ops",
    "combine_ops",
    "stall_cycles",
    "deferred_replays",
    "compute_seconds",
    "host_seconds",
    "total_seconds",
    "uda_utilization",
    "throughput_mpps",
];

/// Column names of [`write_sim_csv`]: configuration keys then report fields.
pub const SIM_CSV_HEADER: [&str; 31] = {
    let mut out = [""; 31];
    let mut i = 0;
    while i < CONFIG_KEYS.len() {
        out[i] = CONFIG_KEYS[i];
        i += 1;
    }
    let mut j = 0;
    while j < REPORT_KEYS.len() {
        out[i + j] = REPORT_KEYS[j];
        j += 1;
    }
    out
};

fn report_values(r: &SimReport) -> Vec<String> {
    vec![
        r.total_cycles.to_string(),
        r.fill_cycles.to_string(),
        r.rbam_cycles.to_string(),
        r.dna_cycles.to_string(),
        r.ideal_cycles.to_string(),
        r.fill_issues.to_string(),
        r.fill_updates.to_string(),
        r.reduction_ops.to_string(),
        r.combine_ops.to_string(),
        r.stall_cycles.to_string(),
        r.deferred_replays.to_string(),
        format!("{:.9}", r.compute_seconds),
        format!("{:.9}", r.host_seconds),
        format!("{:.9}", r.total_seconds),
        format!("{:.6}", r.uda_utilization),
        format!("{:.6}", r.throughput_mpps),
    ]
}

/// One report per configuration, in input order. Runs share nothing, so
/// they are evaluated in parallel when the `parallel` feature is enabled.
pub fn sweep(configs: &[SimConfig]) -> Result<Vec<SimReport>, SimError> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        configs.par_iter().map(simulate).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        configs.iter().map(simulate).collect()
    }
}

pub fn write_sim_csv<W: Write>(out: W, rows: &[(SimConfig, SimReport)]) -> Result<(), SimError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SIM_CSV_HEADER)?;
    for (cfg, r) in rows {
        let mut rec = cfg.values();
        rec.extend(report_values(r));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_keeps_input_order() {
        let cfgs: Vec<SimConfig> = [300, 100, 200]
            .iter()
            .map(|&m| SimConfig { msm_size: m, scalar_bits: 24, window_bits: 6, ..Default::default() })
            .collect();
        let reports = sweep(&cfgs).unwrap();
        for (c, r) in cfgs.iter().zip(&reports) {
            assert_eq!(r.fill_issues, c.msm_size * 4);
        }
    }

    #[test]
    fn csv_has_header_and_rows() {
        let cfg = SimConfig { msm_size: 10, scalar_bits: 24, window_bits: 6, ..Default::default() };
        let r = simulate(&cfg).unwrap();
        let mut buf = Vec::new();
        write_sim_csv(&mut buf, &[(cfg, r)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), SIM_CSV_HEADER.join(","));
        assert_eq!(lines.next().unwrap().split(',').count(), SIM_CSV_HEADER.len());
        assert!(lines.next().is_none());
    }
}
