//! Bucket-method multi-scalar multiplication over short-Weierstrass curves,
//! with a cycle-level performance model of a bucket-array accelerator.

pub mod cli;
pub mod curve;
pub mod curves;
pub mod field;
pub mod msm;
pub mod scalar;
pub mod sim;
pub mod vectors;
