//! Test-vector generation, the line-oriented vector file format and
//! benchmark CSV output.
//!
//! Vector file layout:
//!
//! ```text
//! curve=<name> m=<count>
//! <scalar hex>            (m lines)
//! <x hex> <y hex>         (m lines)
//! result <x hex> <y hex>  (optional; or "result inf")
//! ```
//!
//! Hex is lowercase big-endian without prefix. Field elements are padded to
//! `ceil(field bits / 4)` digits and scalars to `ceil(N / 4)` digits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::curve::{AffinePoint, CurveError, CurveParams};
use crate::curves;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum VectorError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line 1: malformed header {0:?}, expected \"curve=<name> m=<count>\"")]
    MalformedHeader(String),
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("expected {expected} scalar and point lines, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("line {line}: point is not on the curve")]
    OffCurve { line: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone)]
pub struct VectorSet {
    pub curve: String,
    pub scalars: Vec<Scalar>,
    pub points: Vec<AffinePoint>,
    pub expected: Option<AffinePoint>,
}

impl VectorSet {
    pub fn len(&self) -> usize {
        self.scalars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scalars.is_empty()
    }

    pub fn curve_params(&self) -> Result<&'static CurveParams, VectorError> {
        curves::by_name(&self.curve).ok_or_else(|| VectorError::UnknownCurve(self.curve.clone()))
    }
}

impl PartialEq for VectorSet {
    fn eq(&self, other: &Self) -> bool {
        let Some(cv) = curves::by_name(&self.curve) else {
            return false;
        };
        let points_eq = |a: &[AffinePoint], b: &[AffinePoint]| {
            a.len() == b.len() && a.iter().zip(b).all(|(p, q)| cv.affine_equal(p, q))
        };
        self.curve == other.curve
            && self.scalars == other.scalars
            && points_eq(&self.points, &other.points)
            && match (&self.expected, &other.expected) {
                (None, None) => true,
                (Some(a), Some(b)) => cv.affine_equal(a, b),
                _ => false,
            }
    }
}

/// Uniform in `[1, n)` via rejection-free wide reduction.
fn random_below(rng: &mut ChaCha8Rng, n: &BigUint) -> BigUint {
    let bytes = (n.bits() as usize).div_ceil(8) + 8;
    let mut buf = vec![0u8; bytes];
    rng.fill_bytes(&mut buf);
    BigUint::from_bytes_le(&buf) % (n - 1u32) + 1u32
}

/// Deterministic vectors: scalars uniform in `[0, 2^N)`, points `h_i * G`
/// with `h_i` uniform in `[1, r)`, both from one seeded generator.
pub fn generate_vectors(curve: &CurveParams, m: usize, seed: u64) -> VectorSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = curve.scalar_bits();
    let mut scalars = Vec::with_capacity(m);
    let mut multiples = Vec::with_capacity(m);
    for _ in 0..m {
        scalars.push(Scalar::random(&mut rng, n));
        multiples.push(random_below(&mut rng, curve.order()));
    }
    #[cfg(feature = "parallel")]
    let jac: Vec<_> = {
        use rayon::prelude::*;
        multiples.par_iter().map(|h| curve.mul_generator(h)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let jac: Vec<_> = multiples.iter().map(|h| curve.mul_generator(h)).collect();
    let points = curve.batch_to_affine(&jac);
    VectorSet { curve: curve.name().to_string(), scalars, points, expected: None }
}

fn scalar_digits(curve: &CurveParams) -> usize {
    (curve.scalar_bits() as usize).div_ceil(4)
}

pub fn format_vectors(vs: &VectorSet) -> Result<String, VectorError> {
    let cv = vs.curve_params()?;
    let width = scalar_digits(cv);
    let mut out = String::with_capacity(vs.len() * (width + 2 * cv.field().hex_width() + 3) + 64);
    writeln!(out, "curve={} m={}", vs.curve, vs.len()).unwrap();
    for s in &vs.scalars {
        writeln!(out, "{}", s.to_hex(width)).unwrap();
    }
    for p in &vs.points {
        writeln!(out, "{}", cv.format_affine(p)).unwrap();
    }
    if let Some(r) = &vs.expected {
        writeln!(out, "result {}", cv.format_affine(r)).unwrap();
    }
    Ok(out)
}

pub fn write_vectors(vs: &VectorSet, path: &Path) -> Result<(), VectorError> {
    fs::write(path, format_vectors(vs)?)?;
    Ok(())
}

fn parse_header(line: &str) -> Result<(String, usize), VectorError> {
    let bad = || VectorError::MalformedHeader(line.to_string());
    let mut it = line.split_whitespace();
    let (Some(c), Some(m), None) = (it.next(), it.next(), it.next()) else {
        return Err(bad());
    };
    let curve = c.strip_prefix("curve=").ok_or_else(bad)?;
    let m = m.strip_prefix("m=").and_then(|v| v.parse().ok()).ok_or_else(bad)?;
    Ok((curve.to_string(), m))
}

fn point_error(line: usize, e: CurveError) -> VectorError {
    match e {
        CurveError::OffCurve => VectorError::OffCurve { line },
        other => VectorError::Malformed { line, message: other.to_string() },
    }
}

pub fn parse_vectors(text: &str) -> Result<VectorSet, VectorError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| VectorError::MalformedHeader(String::new()))?;
    let (curve_name, m) = parse_header(header)?;
    let cv = curves::by_name(&curve_name).ok_or_else(|| VectorError::UnknownCurve(curve_name.clone()))?;

    let mut body: Vec<(usize, &str)> = lines.collect();
    let result_line = match body.last() {
        Some((_, l)) if l.starts_with("result") => body.pop(),
        _ => None,
    };
    if body.len() != 2 * m {
        return Err(VectorError::CountMismatch { expected: 2 * m, found: body.len() });
    }

    let n = cv.scalar_bits();
    let mut scalars = Vec::with_capacity(m);
    for &(line, l) in &body[..m] {
        let s = Scalar::from_hex(l).map_err(|e| VectorError::Malformed { line, message: e.to_string() })?;
        if s.bit_len() > n {
            return Err(VectorError::Malformed { line, message: format!("scalar wider than {n} bits") });
        }
        scalars.push(s);
    }
    let mut points = Vec::with_capacity(m);
    for &(line, l) in &body[m..] {
        if l == "inf" {
            return Err(VectorError::Malformed { line, message: "input points must be finite".into() });
        }
        points.push(cv.parse_affine(l).map_err(|e| point_error(line, e))?);
    }
    let expected = match result_line {
        None => None,
        Some((line, l)) => {
            let rest = l["result".len()..].trim();
            if !l["result".len()..].starts_with(char::is_whitespace) {
                return Err(VectorError::Malformed { line, message: format!("bad result line {l:?}") });
            }
            Some(cv.parse_affine(rest).map_err(|e| point_error(line, e))?)
        }
    };
    Ok(VectorSet { curve: curve_name, scalars, points, expected })
}

pub fn read_vectors(path: &Path) -> Result<VectorSet, VectorError> {
    parse_vectors(&fs::read_to_string(path)?)
}

/// One timed run in the benchmark CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub curve: String,
    pub algo: String,
    pub m: usize,
    pub k: u32,
    pub seconds: f64,
    pub mpps: f64,
    /// Multiplications plus squarings.
    pub mod_muls: u64,
    /// Additions including unified double-adds.
    pub point_adds: u64,
    pub point_doubles: u64,
}

impl BenchRow {
    pub fn new(curve: &str, algo: &str, m: usize, k: u32, seconds: f64, c: &crate::curve::OpCounters) -> Self {
        BenchRow {
            curve: curve.to_string(),
            algo: algo.to_string(),
            m,
            k,
            seconds,
            mpps: m as f64 / seconds / 1e6,
            mod_muls: c.mults(),
            point_adds: c.point_adds + c.uda_ops,
            point_doubles: c.point_doubles,
        }
    }
}

pub const BENCH_CSV_HEADER: [&str; 9] =
    ["curve", "algo", "m", "k", "seconds", "mpps", "mod_muls", "point_adds", "point_doubles"];

pub fn write_bench_csv_to<W: std::io::Write>(out: W, rows: &[BenchRow]) -> Result<(), VectorError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(BENCH_CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_bench_csv(rows: &[BenchRow], path: &Path) -> Result<(), VectorError> {
    write_bench_csv_to(fs::File::create(path)?, rows)
}
