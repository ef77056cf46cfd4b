//! Short-Weierstrass group law `y^2 = x^3 + ax + b` in Jacobian coordinates.
//!
//! Every operation takes a caller-owned [`OpCounters`] so that parallel
//! callers can count independently and merge afterwards. Addition uses the
//! generic 11M + 5S formula, doubling the 1M + 8S formula, and
//! [`CurveParams::unified_double_add`] shares the addition prelude with the
//! equality test so that one call covers every case.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Domain, FieldError, FieldParams, Fp, MulBackend};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("curve is singular (4a^3 + 27b^2 = 0)")]
    Singular,
    #[error("generator is not on the curve")]
    GeneratorOffCurve,
    #[error("point addition called with equal inputs; use doubling")]
    EqualInputs,
    #[error("point is not on the curve")]
    OffCurve,
    #[error("malformed point {0:?}")]
    MalformedPoint(String),
}

/// Operation tallies. Field counts reflect work actually performed; point
/// counts are invocations, including infinity shortcuts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct OpCounters {
    pub mod_muls: u64,
    pub mod_sqrs: u64,
    pub mod_adds: u64,
    pub point_adds: u64,
    pub point_doubles: u64,
    pub uda_ops: u64,
}

impl OpCounters {
    /// Multiplications plus squarings.
    pub fn mults(&self) -> u64 {
        self.mod_muls + self.mod_sqrs
    }

    pub fn point_ops(&self) -> u64 {
        self.point_adds + self.point_doubles + self.uda_ops
    }

    /// Modular multiplications when every point operation is charged a flat
    /// `per_op` (16 reproduces the accounting used for the double-and-add
    /// and bucket-method comparison tables).
    pub fn charged_mod_muls(&self, per_op: u64) -> u64 {
        self.point_ops() * per_op
    }
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, o: Self) {
        self.mod_muls += o.mod_muls;
        self.mod_sqrs += o.mod_sqrs;
        self.mod_adds += o.mod_adds;
        self.point_adds += o.point_adds;
        self.point_doubles += o.point_doubles;
        self.uda_ops += o.uda_ops;
    }
}

impl Add for OpCounters {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AffinePoint {
    x: Fp,
    y: Fp,
    infinity: bool,
}

impl AffinePoint {
    pub fn x(&self) -> &Fp {
        &self.x
    }

    pub fn y(&self) -> &Fp {
        &self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.infinity
    }
}

/// `(X, Y, Z)` representing `(X/Z^2, Y/Z^3)`; `Z = 0` is the identity.
#[derive(Clone, Copy, Debug)]
pub struct JacobianPoint {
    x: Fp,
    y: Fp,
    z: Fp,
}

impl JacobianPoint {
    pub fn x(&self) -> &Fp {
        &self.x
    }

    pub fn y(&self) -> &Fp {
        &self.y
    }

    pub fn z(&self) -> &Fp {
        &self.z
    }
}

/// Counting wrapper around the field operations.
struct Ops<'a> {
    f: &'a FieldParams,
    be: MulBackend,
    c: &'a mut OpCounters,
}

impl Ops<'_> {
    #[inline(always)]
    fn mul(&mut self, a: &Fp, b: &Fp) -> Fp {
        self.c.mod_muls += 1;
        self.f.mul_in(a, b, self.be)
    }

    #[inline(always)]
    fn sqr(&mut self, a: &Fp) -> Fp {
        self.c.mod_sqrs += 1;
        self.f.mul_in(a, a, self.be)
    }

    #[inline(always)]
    fn add(&mut self, a: &Fp, b: &Fp) -> Fp {
        self.c.mod_adds += 1;
        self.f.lazy_add(a, b)
    }

    #[inline(always)]
    fn sub(&mut self, a: &Fp, b: &Fp) -> Fp {
        self.c.mod_adds += 1;
        self.f.lazy_sub(a, b)
    }

    #[inline(always)]
    fn dbl(&mut self, a: &Fp) -> Fp {
        self.c.mod_adds += 1;
        self.f.lazy_dbl(a)
    }
}

/// Shared first half of addition: the cross-multiplied equality test.
struct AddPrelude {
    z1z1: Fp,
    z2z2: Fp,
    u1: Fp,
    s1: Fp,
    h: Fp,
    r: Fp,
}

/// Fixed-base table: entry `c` of block `i` is `c * 2^(8i) * G`.
struct GeneratorTable {
    blocks: usize,
    points: Vec<JacobianPoint>,
}

pub struct CurveParams {
    name: String,
    field: FieldParams,
    backend: MulBackend,
    a: Fp,
    b: Fp,
    a_is_zero: bool,
    generator: AffinePoint,
    order: BigUint,
    scalar_bits: u32,
    generator_table: OnceLock<GeneratorTable>,
}

impl Clone for CurveParams {
    fn clone(&self) -> Self {
        CurveParams {
            name: self.name.clone(),
            field: self.field.clone(),
            backend: self.backend,
            a: self.a,
            b: self.b,
            a_is_zero: self.a_is_zero,
            generator: self.generator,
            order: self.order.clone(),
            scalar_bits: self.scalar_bits,
            generator_table: OnceLock::new(),
        }
    }
}

impl fmt::Debug for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveParams")
            .field("name", &self.name)
            .field("field", &self.field)
            .field("backend", &self.backend)
            .field("scalar_bits", &self.scalar_bits)
            .finish()
    }
}

/// Plain integer description of a curve, used to build [`CurveParams`].
#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub name: String,
    pub modulus: BigUint,
    pub a: BigUint,
    pub b: BigUint,
    pub gx: BigUint,
    pub gy: BigUint,
    pub order: BigUint,
    pub scalar_bits: u32,
}

impl CurveParams {
    pub fn new(spec: &CurveSpec, backend: MulBackend) -> Result<Self, CurveError> {
        let field = FieldParams::new(&spec.modulus)?;
        let d = backend.domain();
        let a = field.from_biguint(&spec.a, d);
        let b = field.from_biguint(&spec.b, d);
        let p = &spec.modulus;
        let disc = (BigUint::from(4u32) * spec.a.modpow(&BigUint::from(3u32), p)
            + BigUint::from(27u32) * spec.b.modpow(&BigUint::from(2u32), p))
            % p;
        if disc.is_zero() {
            return Err(CurveError::Singular);
        }
        let generator =
            AffinePoint { x: field.from_biguint(&spec.gx, d), y: field.from_biguint(&spec.gy, d), infinity: false };
        let curve = CurveParams {
            name: spec.name.clone(),
            a_is_zero: field.is_zero(&a),
            field,
            backend,
            a,
            b,
            generator,
            order: spec.order.clone(),
            scalar_bits: spec.scalar_bits,
            generator_table: OnceLock::new(),
        };
        if !curve.is_on_curve_affine(&curve.generator) {
            return Err(CurveError::GeneratorOffCurve);
        }
        Ok(curve)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn backend(&self) -> MulBackend {
        self.backend
    }

    pub fn domain(&self) -> Domain {
        self.backend.domain()
    }

    pub fn a(&self) -> &Fp {
        &self.a
    }

    pub fn b(&self) -> &Fp {
        &self.b
    }

    pub fn generator(&self) -> &AffinePoint {
        &self.generator
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Scalar width `N` used for slicing and accounting.
    pub fn scalar_bits(&self) -> u32 {
        self.scalar_bits
    }

    fn ops<'a>(&'a self, c: &'a mut OpCounters) -> Ops<'a> {
        Ops { f: &self.field, be: self.backend, c }
    }

    pub fn fe(&self, v: &BigUint) -> Fp {
        self.field.from_biguint(v, self.domain())
    }

    pub fn fe_u64(&self, v: u64) -> Fp {
        self.field.from_u64(v, self.domain())
    }

    // ---- construction and conversion ----

    pub fn affine_infinity(&self) -> AffinePoint {
        let z = self.field.zero(self.domain());
        AffinePoint { x: z, y: z, infinity: true }
    }

    /// Builds an affine point without checking the curve equation.
    pub fn affine_unchecked(&self, x: &BigUint, y: &BigUint) -> AffinePoint {
        AffinePoint { x: self.fe(x), y: self.fe(y), infinity: false }
    }

    pub fn affine(&self, x: &BigUint, y: &BigUint) -> Result<AffinePoint, CurveError> {
        let p = self.affine_unchecked(x, y);
        if self.is_on_curve_affine(&p) {
            Ok(p)
        } else {
            Err(CurveError::OffCurve)
        }
    }

    /// Plain integer coordinates, `None` for infinity.
    pub fn affine_coords(&self, p: &AffinePoint) -> Option<(BigUint, BigUint)> {
        if p.infinity {
            None
        } else {
            Some((self.field.to_biguint(&p.x), self.field.to_biguint(&p.y)))
        }
    }

    pub fn infinity(&self) -> JacobianPoint {
        let d = self.domain();
        let one = self.field.one(d);
        JacobianPoint { x: one, y: one, z: self.field.zero(d) }
    }

    pub fn jacobian_from_parts(&self, x: Fp, y: Fp, z: Fp) -> JacobianPoint {
        JacobianPoint { x, y, z }
    }

    pub fn to_jacobian(&self, p: &AffinePoint) -> JacobianPoint {
        if p.infinity {
            self.infinity()
        } else {
            JacobianPoint { x: p.x, y: p.y, z: self.field.one(self.domain()) }
        }
    }

    pub fn is_infinity(&self, p: &JacobianPoint) -> bool {
        self.field.is_zero(&p.z)
    }

    pub fn to_affine(&self, p: &JacobianPoint) -> AffinePoint {
        if self.is_infinity(p) {
            return self.affine_infinity();
        }
        let f = &self.field;
        let be = self.backend;
        let zinv = f.inv(&p.z).expect("non-zero Z");
        let zinv2 = f.mul_in(&zinv, &zinv, be);
        let zinv3 = f.mul_in(&zinv2, &zinv, be);
        AffinePoint { x: f.mul_in(&p.x, &zinv2, be), y: f.mul_in(&p.y, &zinv3, be), infinity: false }
    }

    /// Converts many points with a single inversion.
    pub fn batch_to_affine(&self, points: &[JacobianPoint]) -> Vec<AffinePoint> {
        let f = &self.field;
        let be = self.backend;
        let one = f.one(self.domain());
        let mut prefix = Vec::with_capacity(points.len());
        let mut acc = one;
        for p in points {
            prefix.push(acc);
            if !self.is_infinity(p) {
                acc = f.mul_in(&acc, &p.z, be);
            }
        }
        let mut inv = f.inv(&acc).expect("product of non-zero Z values");
        let mut out = vec![self.affine_infinity(); points.len()];
        for (i, p) in points.iter().enumerate().rev() {
            if self.is_infinity(p) {
                continue;
            }
            let zinv = f.mul_in(&inv, &prefix[i], be);
            inv = f.mul_in(&inv, &p.z, be);
            let zinv2 = f.mul_in(&zinv, &zinv, be);
            let zinv3 = f.mul_in(&zinv2, &zinv, be);
            out[i] = AffinePoint { x: f.mul_in(&p.x, &zinv2, be), y: f.mul_in(&p.y, &zinv3, be), infinity: false };
        }
        out
    }

    // ---- predicates ----

    pub fn is_on_curve_affine(&self, p: &AffinePoint) -> bool {
        if p.infinity {
            return true;
        }
        let f = &self.field;
        let be = self.backend;
        let y2 = f.mul_in(&p.y, &p.y, be);
        let x2 = f.mul_in(&p.x, &p.x, be);
        let x3 = f.mul_in(&x2, &p.x, be);
        let ax = f.mul_in(&self.a, &p.x, be);
        let rhs = f.lazy_add(&f.lazy_add(&x3, &ax), &self.b);
        f.equal(&y2, &rhs)
    }

    /// Checks `Y^2 = X^3 + a X Z^4 + b Z^6`.
    pub fn is_on_curve(&self, p: &JacobianPoint) -> bool {
        if self.is_infinity(p) {
            return true;
        }
        let f = &self.field;
        let be = self.backend;
        let m = |a: &Fp, b: &Fp| f.mul_in(a, b, be);
        let z2 = m(&p.z, &p.z);
        let z4 = m(&z2, &z2);
        let z6 = m(&z4, &z2);
        let lhs = m(&p.y, &p.y);
        let x3 = m(&m(&p.x, &p.x), &p.x);
        let axz4 = m(&m(&self.a, &p.x), &z4);
        let bz6 = m(&self.b, &z6);
        let rhs = f.lazy_add(&f.lazy_add(&x3, &axz4), &bz6);
        f.equal(&lhs, &rhs)
    }

    /// Group-element equality by cross multiplication (no inversion).
    pub fn points_equal(&self, p: &JacobianPoint, q: &JacobianPoint) -> bool {
        match (self.is_infinity(p), self.is_infinity(q)) {
            (true, true) => return true,
            (true, false) | (false, true) => return false,
            _ => {}
        }
        let f = &self.field;
        let be = self.backend;
        let m = |a: &Fp, b: &Fp| f.mul_in(a, b, be);
        let z1z1 = m(&p.z, &p.z);
        let z2z2 = m(&q.z, &q.z);
        f.equal(&m(&p.x, &z2z2), &m(&q.x, &z1z1)) && f.equal(&m(&m(&p.y, &q.z), &z2z2), &m(&m(&q.y, &p.z), &z1z1))
    }

    pub fn affine_equal(&self, p: &AffinePoint, q: &AffinePoint) -> bool {
        match (p.infinity, q.infinity) {
            (true, true) => true,
            (false, false) => self.field.equal(&p.x, &q.x) && self.field.equal(&p.y, &q.y),
            _ => false,
        }
    }

    // ---- group law ----

    pub fn negate(&self, p: &JacobianPoint) -> JacobianPoint {
        if self.is_infinity(p) {
            return self.infinity();
        }
        JacobianPoint { x: p.x, y: self.field.neg(&p.y), z: p.z }
    }

    pub fn negate_affine(&self, p: &AffinePoint) -> AffinePoint {
        if p.infinity {
            return *p;
        }
        AffinePoint { x: p.x, y: self.field.neg(&p.y), infinity: false }
    }

    fn normalize_identity(&self, p: &JacobianPoint) -> JacobianPoint {
        if self.is_infinity(p) {
            self.infinity()
        } else {
            *p
        }
    }

    fn prelude(&self, o: &mut Ops<'_>, p: &JacobianPoint, q: &JacobianPoint) -> AddPrelude {
        let z1z1 = o.sqr(&p.z);
        let z2z2 = o.sqr(&q.z);
        let u1 = o.mul(&p.x, &z2z2);
        let u2 = o.mul(&q.x, &z1z1);
        let t = o.mul(&p.y, &q.z);
        let s1 = o.mul(&t, &z2z2);
        let t = o.mul(&q.y, &p.z);
        let s2 = o.mul(&t, &z1z1);
        let h = o.sub(&u2, &u1);
        let d = o.sub(&s2, &s1);
        let r = o.dbl(&d);
        AddPrelude { z1z1, z2z2, u1, s1, h, r }
    }

    fn add_tail(&self, o: &mut Ops<'_>, p: &JacobianPoint, q: &JacobianPoint, pre: &AddPrelude) -> JacobianPoint {
        let h2 = o.dbl(&pre.h);
        let i = o.sqr(&h2);
        let j = o.mul(&pre.h, &i);
        let v = o.mul(&pre.u1, &i);
        let r2 = o.sqr(&pre.r);
        let t = o.sub(&r2, &j);
        let v2 = o.dbl(&v);
        let x3 = o.sub(&t, &v2);
        let t = o.sub(&v, &x3);
        let t = o.mul(&pre.r, &t);
        let s1j = o.mul(&pre.s1, &j);
        let s1j2 = o.dbl(&s1j);
        let y3 = o.sub(&t, &s1j2);
        let zs = o.add(&p.z, &q.z);
        let zs2 = o.sqr(&zs);
        let t = o.sub(&zs2, &pre.z1z1);
        let t = o.sub(&t, &pre.z2z2);
        let z3 = o.mul(&t, &pre.h);
        JacobianPoint { x: x3, y: y3, z: z3 }
    }

    /// Doubling; `zz` may carry an already computed `Z^2`.
    fn double_with(&self, o: &mut Ops<'_>, p: &JacobianPoint, zz: Option<Fp>) -> JacobianPoint {
        let f = &self.field;
        if f.is_zero(&p.z) || f.is_zero(&p.y) {
            return self.infinity();
        }
        let xx = o.sqr(&p.x);
        let yy = o.sqr(&p.y);
        let yyyy = o.sqr(&yy);
        let zz = match zz {
            Some(zz) => zz,
            None => o.sqr(&p.z),
        };
        let t = o.add(&p.x, &yy);
        let t = o.sqr(&t);
        let t = o.sub(&t, &xx);
        let t = o.sub(&t, &yyyy);
        let s = o.dbl(&t);
        let xx2 = o.dbl(&xx);
        let mut m = o.add(&xx2, &xx);
        let zzzz = o.sqr(&zz);
        if !self.a_is_zero {
            let azzzz = o.mul(&self.a, &zzzz);
            m = o.add(&m, &azzzz);
        }
        let m2 = o.sqr(&m);
        let s2 = o.dbl(&s);
        let x3 = o.sub(&m2, &s2);
        let t = o.sub(&s, &x3);
        let t = o.mul(&m, &t);
        let y8 = o.dbl(&yyyy);
        let y8 = o.dbl(&y8);
        let y8 = o.dbl(&y8);
        let y3 = o.sub(&t, &y8);
        let t = o.add(&p.y, &p.z);
        let t = o.sqr(&t);
        let t = o.sub(&t, &yy);
        let z3 = o.sub(&t, &zz);
        JacobianPoint { x: x3, y: y3, z: z3 }
    }

    /// `P + Q` for distinct inputs. Costs 11 multiplications and 5 squarings
    /// in the generic case; returns [`CurveError::EqualInputs`] when `P = Q`.
    pub fn point_add(
        &self,
        p: &JacobianPoint,
        q: &JacobianPoint,
        c: &mut OpCounters,
    ) -> Result<JacobianPoint, CurveError> {
        c.point_adds += 1;
        if self.is_infinity(p) {
            return Ok(self.normalize_identity(q));
        }
        if self.is_infinity(q) {
            return Ok(*p);
        }
        let mut o = self.ops(c);
        let pre = self.prelude(&mut o, p, q);
        if self.field.is_zero(&pre.h) {
            if self.field.is_zero(&pre.r) {
                return Err(CurveError::EqualInputs);
            }
            return Ok(self.infinity());
        }
        Ok(self.add_tail(&mut o, p, q, &pre))
    }

    /// `2P`. Costs 1 multiplication and 8 squarings in the generic case
    /// (one more multiplication when `a != 0`).
    pub fn point_double(&self, p: &JacobianPoint, c: &mut OpCounters) -> JacobianPoint {
        c.point_doubles += 1;
        let mut o = self.ops(c);
        self.double_with(&mut o, p, None)
    }

    /// `P + Q` for any inputs. The equality test reuses the addition prelude,
    /// and the doubling path reuses `Z1^2`, so either path costs 16
    /// multiplications on an `a = 0` curve.
    pub fn unified_double_add(&self, p: &JacobianPoint, q: &JacobianPoint, c: &mut OpCounters) -> JacobianPoint {
        c.uda_ops += 1;
        if self.is_infinity(p) {
            return self.normalize_identity(q);
        }
        if self.is_infinity(q) {
            return *p;
        }
        let mut o = self.ops(c);
        let pre = self.prelude(&mut o, p, q);
        if self.field.is_zero(&pre.h) {
            if self.field.is_zero(&pre.r) {
                return self.double_with(&mut o, p, Some(pre.z1z1));
            }
            return self.infinity();
        }
        self.add_tail(&mut o, p, q, &pre)
    }

    /// MSB-first double-and-add over exactly `bits` bits of `s`.
    pub fn scalar_mul_double_and_add(
        &self,
        s: &Scalar,
        p: &JacobianPoint,
        bits: u32,
        c: &mut OpCounters,
    ) -> JacobianPoint {
        let mut q = self.infinity();
        for i in (0..bits).rev() {
            q = self.point_double(&q, c);
            if s.bit(i) {
                q = match self.point_add(&q, p, c) {
                    Ok(r) => r,
                    Err(_) => self.point_double(&q, c),
                };
            }
        }
        q
    }

    /// Uncounted multiple of an arbitrary point (test oracles, vector generation).
    pub fn mul_big(&self, k: &BigUint, p: &JacobianPoint) -> JacobianPoint {
        let mut c = OpCounters::default();
        let mut q = self.infinity();
        for i in (0..k.bits()).rev() {
            q = self.point_double(&q, &mut c);
            if k.bit(i) {
                q = self.unified_double_add(&q, p, &mut c);
            }
        }
        q
    }

    fn generator_table(&self) -> &GeneratorTable {
        self.generator_table.get_or_init(|| {
            let mut c = OpCounters::default();
            let blocks = (self.order.bits() as usize).div_ceil(8);
            let mut points = Vec::with_capacity(blocks * 256);
            let mut base = self.to_jacobian(&self.generator);
            for _ in 0..blocks {
                let mut acc = self.infinity();
                for _ in 0..256 {
                    points.push(acc);
                    acc = self.unified_double_add(&acc, &base, &mut c);
                }
                // acc is now 256 * base.
                base = acc;
            }
            GeneratorTable { blocks, points }
        })
    }

    /// `k * G` for `k < 2^(8 * ceil(bits(order) / 8))` using a byte-indexed table.
    pub fn mul_generator(&self, k: &BigUint) -> JacobianPoint {
        let k = k % &self.order;
        let table = self.generator_table();
        let mut c = OpCounters::default();
        let mut acc = self.infinity();
        for (i, byte) in k.to_bytes_le().into_iter().enumerate().take(table.blocks) {
            if byte != 0 {
                acc = self.unified_double_add(&acc, &table.points[i * 256 + byte as usize], &mut c);
            }
        }
        acc
    }

    // ---- text form ----

    /// `"x_hex y_hex"` or `"inf"`.
    pub fn format_affine(&self, p: &AffinePoint) -> String {
        if p.infinity {
            "inf".to_string()
        } else {
            format!("{} {}", self.field.to_hex(&p.x), self.field.to_hex(&p.y))
        }
    }

    /// Parses `"x_hex y_hex"` or `"inf"` and checks the curve equation.
    pub fn parse_affine(&self, s: &str) -> Result<AffinePoint, CurveError> {
        let s = s.trim();
        if s == "inf" {
            return Ok(self.affine_infinity());
        }
        let mut it = s.split_whitespace();
        let (Some(x), Some(y), None) = (it.next(), it.next(), it.next()) else {
            return Err(CurveError::MalformedPoint(s.to_string()));
        };
        let d = self.domain();
        let p = AffinePoint { x: self.field.from_hex(x, d)?, y: self.field.from_hex(y, d)?, infinity: false };
        if !self.is_on_curve_affine(&p) {
            return Err(CurveError::OffCurve);
        }
        Ok(p)
    }
}
