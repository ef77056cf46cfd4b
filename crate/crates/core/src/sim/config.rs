use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::msm::{window_count, MAX_WINDOW_BITS};

use super::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HazardPolicy {
    /// Hold the BAM until the conflicting update retires.
    Stall,
    /// Park the pair in a small queue and issue the next ready one.
    Defer,
}

impl FromStr for HazardPolicy {
    type Err = SimError;
    fn from_str(s: &str) -> Result<Self, SimError> {
        match s {
            "stall" => Ok(HazardPolicy::Stall),
            "defer" => Ok(HazardPolicy::Defer),
            _ => Err(SimError::InvalidConfig(format!("unknown hazard policy {s:?}"))),
        }
    }
}

impl fmt::Display for HazardPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HazardPolicy::Stall => "stall",
            HazardPolicy::Defer => "defer",
        })
    }
}

/// Digit stream fed to the BAMs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Workload {
    /// Independent uniform `k`-bit digits per window, seeded per window.
    Uniform,
    /// Pair `i` targets bucket `1 + (i mod (2^k - 1))`; hazard free whenever
    /// `2^k - 1 >= L` or `m <= 2^k - 1`.
    Cyclic,
}

impl FromStr for Workload {
    type Err = SimError;
    fn from_str(s: &str) -> Result<Self, SimError> {
        match s {
            "uniform" => Ok(Workload::Uniform),
            "cyclic" => Ok(Workload::Cyclic),
            _ => Err(SimError::InvalidConfig(format!("unknown workload {s:?}"))),
        }
    }
}

impl fmt::Display for Workload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Workload::Uniform => "uniform",
            Workload::Cyclic => "cyclic",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub bam_count: usize,
    pub uda_latency: u64,
    pub fmax_hz: f64,
    pub window_bits: u32,
    pub inner_window_bits: u32,
    pub scalar_bits: u32,
    pub msm_size: u64,
    pub hazard: HazardPolicy,
    pub defer_depth: usize,
    pub memory_channels: u32,
    pub channel_bytes_per_cycle: u32,
    pub host_fixed_seconds: f64,
    pub host_bytes_per_second: f64,
    pub workload: Workload,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            bam_count: 1,
            uda_latency: 270,
            fmax_hz: 351e6,
            window_bits: 12,
            inner_window_bits: 4,
            scalar_bits: 381,
            msm_size: 1 << 20,
            hazard: HazardPolicy::Stall,
            defer_depth: 16,
            memory_channels: 4,
            channel_bytes_per_cycle: 64,
            host_fixed_seconds: 0.25e-3,
            host_bytes_per_second: 12e9,
            workload: Workload::Uniform,
            seed: 0,
        }
    }
}

/// Keys accepted in configuration files and as CLI flag names.
pub const CONFIG_KEYS: [&str; 15] = [
    "bams",
    "latency",
    "fmax",
    "window",
    "inner_window",
    "scalar_bits",
    "size",
    "hazard",
    "defer_depth",
    "channels",
    "channel_bytes",
    "host_fixed",
    "host_bw",
    "workload",
    "seed",
];

fn parse_uint(key: &str, v: &str) -> Result<u64, SimError> {
    let bad = || SimError::InvalidConfig(format!("{key}: cannot parse {v:?} as a non-negative integer"));
    if let Some((base, exp)) = v.split_once('^') {
        let base: u64 = base.trim().parse().map_err(|_| bad())?;
        let exp: u32 = exp.trim().parse().map_err(|_| bad())?;
        return base.checked_pow(exp).ok_or_else(bad);
    }
    if let Ok(n) = v.parse::<u64>() {
        return Ok(n);
    }
    let f: f64 = v.parse().map_err(|_| bad())?;
    if f >= 0.0 && f.fract() == 0.0 && f <= u64::MAX as f64 {
        Ok(f as u64)
    } else {
        Err(bad())
    }
}

fn parse_float(key: &str, v: &str) -> Result<f64, SimError> {
    v.parse().map_err(|_| SimError::InvalidConfig(format!("{key}: cannot parse {v:?} as a number")))
}

impl SimConfig {
    /// `p = ceil(N / k)`.
    pub fn window_count(&self) -> usize {
        window_count(self.scalar_bits, self.window_bits)
    }

    /// Bytes streamed per scalar-point pair: an affine point plus a scalar.
    pub fn pair_bytes(&self) -> u64 {
        3 * self.scalar_bytes()
    }

    pub fn scalar_bytes(&self) -> u64 {
        self.scalar_bits.div_ceil(8) as u64
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let fail = |m: String| Err(SimError::InvalidConfig(m));
        if !(1..=MAX_WINDOW_BITS).contains(&self.window_bits) {
            return fail(format!("window bits {} outside 1..={MAX_WINDOW_BITS}", self.window_bits));
        }
        if !(1..=self.window_bits).contains(&self.inner_window_bits) {
            return fail(format!("inner window bits {} outside 1..={}", self.inner_window_bits, self.window_bits));
        }
        if !(1..=384).contains(&self.scalar_bits) {
            return fail(format!("scalar bits {} outside 1..=384", self.scalar_bits));
        }
        if self.bam_count == 0 || self.bam_count > self.window_count() {
            return fail(format!("bam count {} outside 1..={}", self.bam_count, self.window_count()));
        }
        if self.uda_latency == 0 {
            return fail("latency must be positive".into());
        }
        if !(self.fmax_hz.is_finite() && self.fmax_hz > 0.0) {
            return fail("fmax must be positive".into());
        }
        if self.defer_depth == 0 {
            return fail("defer depth must be positive".into());
        }
        if self.memory_channels == 0 || self.channel_bytes_per_cycle == 0 {
            return fail("memory channels and bytes per cycle must be positive".into());
        }
        if !(self.host_fixed_seconds.is_finite() && self.host_fixed_seconds >= 0.0) {
            return fail("host fixed overhead must be non-negative".into());
        }
        if !(self.host_bytes_per_second.is_finite() && self.host_bytes_per_second > 0.0) {
            return fail("host bandwidth must be positive".into());
        }
        Ok(())
    }

    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), SimError> {
        let v = value.trim();
        match key.trim() {
            "bams" => self.bam_count = parse_uint(key, v)? as usize,
            "latency" => self.uda_latency = parse_uint(key, v)?,
            "fmax" => self.fmax_hz = parse_float(key, v)?,
            "window" => self.window_bits = parse_uint(key, v)? as u32,
            "inner_window" => self.inner_window_bits = parse_uint(key, v)? as u32,
            "scalar_bits" => self.scalar_bits = parse_uint(key, v)? as u32,
            "size" => self.msm_size = parse_uint(key, v)?,
            "hazard" => self.hazard = v.parse()?,
            "defer_depth" => self.defer_depth = parse_uint(key, v)? as usize,
            "channels" => self.memory_channels = parse_uint(key, v)? as u32,
            "channel_bytes" => self.channel_bytes_per_cycle = parse_uint(key, v)? as u32,
            "host_fixed" => self.host_fixed_seconds = parse_float(key, v)?,
            "host_bw" => self.host_bytes_per_second = parse_float(key, v)?,
            "workload" => self.workload = v.parse()?,
            "seed" => self.seed = parse_uint(key, v)?,
            other => return Err(SimError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    /// Parses `key=value` lines; blank lines and `#` comments are ignored.
    /// Unset keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self, SimError> {
        let mut cfg = SimConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(SimError::Parse { line: i + 1, message: format!("expected key=value, got {line:?}") });
            };
            cfg.set(k, v).map_err(|e| match e {
                SimError::UnknownKey(_) | SimError::InvalidConfig(_) => {
                    SimError::Parse { line: i + 1, message: e.to_string() }
                }
                other => other,
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, SimError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Inverse of [`SimConfig::parse`].
    pub fn to_text(&self) -> String {
        self.values().iter().zip(CONFIG_KEYS).map(|(v, k)| format!("{k}={v}\n")).collect()
    }

    /// Field values in [`CONFIG_KEYS`] order.
    pub fn values(&self) -> Vec<String> {
        vec![
            self.bam_count.to_string(),
            self.uda_latency.to_string(),
            self.fmax_hz.to_string(),
            self.window_bits.to_string(),
            self.inner_window_bits.to_string(),
            self.scalar_bits.to_string(),
            self.msm_size.to_string(),
            self.hazard.to_string(),
            self.defer_depth.to_string(),
            self.memory_channels.to_string(),
            self.channel_bytes_per_cycle.to_string(),
            self.host_fixed_seconds.to_string(),
            self.host_bytes_per_second.to_string(),
            self.workload.to_string(),
            self.seed.to_string(),
        ]
    }
}
