//! Performance model of a bucket-array MSM accelerator.
//!
//! `S` bucket-array managers (BAMs) each own a sequence of windows and share
//! one fully pipelined unified double-add unit that accepts one operation per
//! cycle and returns it `L` cycles later. A bucket update that is still in
//! flight blocks a second update to the same bucket (read-after-write hazard);
//! the hazard is resolved by stalling or by deferring the pair. Bucket
//! reduction is modeled as a smaller MSM whose operations fill the idle issue
//! slots left by the fill phase, and window combination as a serial chain of
//! dependent operations.

mod config;
mod model;
mod schedule;
mod sweep;

use thiserror::Error;

pub use config::{HazardPolicy, SimConfig, Workload};
pub use model::{
    combine_ops, cross_check, ideal_cycle_bound, reduction_ops, simulate, simulate_traced, CrossCheck, SimReport,
};
pub use schedule::{schedule_stream, EventKind, Pair, ScheduleOutcome, ScheduleParams, StreamEvent};
pub use sweep::{sweep, write_sim_csv, SIM_CSV_HEADER};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid simulator configuration: {0}")]
    InvalidConfig(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown configuration key {0:?}")]
    UnknownKey(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
