//! Fixed-modulus prime field arithmetic.
//!
//! Elements are stored as little-endian 64-bit limbs (at most [`MAX_LIMBS`])
//! and carry two tags: the representation [`Domain`] (plain residue or
//! Montgomery form) and the [`Range`] class. Addition, subtraction and
//! doubling are *lazy*: for operands in `[0, 2p)` they return a value in
//! `[0, 2p)` without a full reduction. Multiplication accepts lazy operands
//! and always returns a fully reduced value.
//!
//! Two multiplication backends are provided:
//!
//! * [`MulBackend::Montgomery`] computes `a * b * R^-1 mod p` with word-serial
//!   CIOS reduction; operands live in the Montgomery domain.
//! * [`MulBackend::Standard`] computes the plain double-width product and
//!   folds its high half back with 8-bit lookup tables of `c * 2^(s + 8i) mod p`
//!   (where `s` is the modulus bit width), followed by a second small table
//!   for the residual carry bits and at most two conditional subtractions.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Maximum number of 64-bit limbs per element (enough for 382-bit moduli).
pub const MAX_LIMBS: usize = 6;

/// Bits per table index in the standard-domain reduction.
pub const CHUNK_BITS: u32 = 8;

const CHUNK_ENTRIES: usize = 1 << CHUNK_BITS;
const PER_WORD: usize = 64 / CHUNK_BITS as usize;

/// Calls a limb-count-generic kernel with the count known at compile time.
macro_rules! by_limbs {
    ($n:expr, $($f:ident).+ ($($arg:expr),*)) => {
        match $n {
            1 => $($f).+::<1>($($arg),*),
            2 => $($f).+::<2>($($arg),*),
            3 => $($f).+::<3>($($arg),*),
            4 => $($f).+::<4>($($arg),*),
            5 => $($f).+::<5>($($arg),*),
            _ => $($f).+::<6>($($arg),*),
        }
    };
}
const CARRY_ENTRIES: usize = 64;

pub type Limbs = [u64; MAX_LIMBS];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus must be an odd prime greater than 2")]
    NotOddPrime,
    #[error("modulus of {bits} bits does not fit the {max} bit limit")]
    ModulusTooWide { bits: u64, max: u32 },
    #[error("domain mismatch: {left:?} vs {right:?}")]
    DomainMismatch { left: Domain, right: Domain },
    #[error("{backend:?} backend cannot multiply {domain:?}-domain operands")]
    BackendMismatch { backend: MulBackend, domain: Domain },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("invalid field element hex {0:?}")]
    InvalidHex(String),
    #[error("value is not below the modulus")]
    OutOfRange,
}

/// Representation domain of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Standard,
    Montgomery,
}

/// Value range class: `Reduced` means `[0, p)`, `Lazy` means `[0, 2p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Range {
    Reduced,
    Lazy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MulBackend {
    Montgomery,
    Standard,
}

impl MulBackend {
    /// The operand domain this backend works in.
    pub fn domain(self) -> Domain {
        match self {
            MulBackend::Montgomery => Domain::Montgomery,
            MulBackend::Standard => Domain::Standard,
        }
    }
}

impl fmt::Display for MulBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MulBackend::Montgomery => f.write_str("montgomery"),
            MulBackend::Standard => f.write_str("standard"),
        }
    }
}

/// A field element. Meaningful only together with the [`FieldParams`] that
/// produced it.
#[derive(Debug, Clone, Copy)]
pub struct Fp {
    limbs: Limbs,
    domain: Domain,
    range: Range,
}

impl Fp {
    pub fn limbs(&self) -> &Limbs {
        &self.limbs
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn range(&self) -> Range {
        self.range
    }
}

/// Precomputed constants for one odd prime modulus.
#[derive(Clone)]
pub struct FieldParams {
    modulus: BigUint,
    bit_width: u32,
    limb_count: usize,
    p: Limbs,
    two_p: Limbs,
    /// R mod p with R = 2^(64 * limb_count).
    r: Limbs,
    /// R^2 mod p.
    r2: Limbs,
    /// -p^-1 mod 2^64.
    pinv: u64,
    /// `chunk_count` blocks of 256 entries: entry `c` of block `i` is
    /// `c * 2^(bit_width + 8i) mod p`.
    reduction_tables: Vec<Limbs>,
    chunk_count: usize,
    /// Entry `c` is `c * 2^bit_width mod p`.
    carry_table: Vec<Limbs>,
}

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldParams")
            .field("modulus", &format_args!("{:x}", self.modulus))
            .field("bit_width", &self.bit_width)
            .field("limb_count", &self.limb_count)
            .finish()
    }
}

#[inline(always)]
fn mac(acc: u64, a: u64, b: u64, carry: u64) -> (u64, u64) {
    let t = acc as u128 + (a as u128) * (b as u128) + carry as u128;
    (t as u64, (t >> 64) as u64)
}

#[inline(always)]
fn adc(a: u64, b: u64, carry: u64) -> (u64, u64) {
    let t = a as u128 + b as u128 + carry as u128;
    (t as u64, (t >> 64) as u64)
}

#[inline(always)]
fn sbb(a: u64, b: u64, borrow: u64) -> (u64, u64) {
    let t = (a as u128).wrapping_sub(b as u128 + borrow as u128);
    (t as u64, (t >> 127) as u64)
}

#[inline(always)]
fn geq(a: &[u64], b: &[u64], n: usize) -> bool {
    for i in (0..n).rev() {
        if a[i] != b[i] {
            return a[i] > b[i];
        }
    }
    true
}

/// `a -= b` over the first `n` limbs, returning the final borrow.
#[inline(always)]
fn sub_assign(a: &mut [u64], b: &[u64], n: usize) -> u64 {
    let mut borrow = 0;
    for i in 0..n {
        let (d, br) = sbb(a[i], b[i], borrow);
        a[i] = d;
        borrow = br;
    }
    borrow
}

/// `a += b` over the first `n` limbs, returning the final carry.
#[inline(always)]
fn add_assign(a: &mut [u64], b: &[u64], n: usize) -> u64 {
    let mut carry = 0;
    for i in 0..n {
        let (s, c) = adc(a[i], b[i], carry);
        a[i] = s;
        carry = c;
    }
    carry
}

/// Reads `width <= 57` bits starting at bit `pos`.
#[inline(always)]
fn bits_at(words: &[u64], pos: u32, width: u32) -> u64 {
    let word = (pos / 64) as usize;
    let shift = pos % 64;
    if word >= words.len() {
        return 0;
    }
    let mut v = words[word] >> shift;
    if shift + width > 64 && word + 1 < words.len() {
        v |= words[word + 1] << (64 - shift);
    }
    v & ((1u64 << width) - 1)
}

fn limbs_from_biguint(x: &BigUint) -> Limbs {
    let mut out = [0u64; MAX_LIMBS];
    for (slot, d) in out.iter_mut().zip(x.to_u64_digits()) {
        *slot = d;
    }
    out
}

fn limbs_to_biguint(limbs: &[u64]) -> BigUint {
    let mut digits = Vec::with_capacity(limbs.len() * 2);
    for &l in limbs {
        digits.push(l as u32);
        digits.push((l >> 32) as u32);
    }
    BigUint::new(digits)
}

const SMALL_PRIMES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Miller-Rabin with the first sixteen primes as fixed witnesses.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &sp in &SMALL_PRIMES {
        let sp = BigUint::from(sp);
        if *n == sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl FieldParams {
    /// Builds parameters for an odd prime modulus of at most 382 bits.
    pub fn new(modulus: &BigUint) -> Result<Self, FieldError> {
        let bits = modulus.bits();
        let max_bits = (MAX_LIMBS * 64 - 2) as u32;
        if bits > max_bits as u64 {
            return Err(FieldError::ModulusTooWide { bits, max: max_bits });
        }
        if !is_probable_prime(modulus) || (modulus % 2u32).is_zero() {
            return Err(FieldError::NotOddPrime);
        }
        let bit_width = bits as u32;
        // Room for 4p keeps lazy sums and Montgomery outputs below 2p.
        let limb_count = ((bit_width + 2) as usize).div_ceil(64);
        let word = BigUint::one() << 64u32;
        let r_big = (BigUint::one() << (64 * limb_count)) % modulus;
        let r2_big = (&r_big * &r_big) % modulus;
        let p0 = modulus.to_u64_digits()[0];
        // Newton iteration for p0^-1 mod 2^64.
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p0.wrapping_mul(inv)));
        }
        debug_assert_eq!(p0.wrapping_mul(inv), 1);
        let pinv = inv.wrapping_neg();
        debug_assert!(((BigUint::from(p0) * BigUint::from(pinv)) + 1u32) % &word == BigUint::zero());

        // The high half of a product of two lazy operands has at most bit_width + 2 bits.
        let chunk_count = ((bit_width + 2) as usize).div_ceil(CHUNK_BITS as usize);
        let mut reduction_tables = Vec::with_capacity(chunk_count * CHUNK_ENTRIES);
        for i in 0..chunk_count {
            let base = (BigUint::one() << (bit_width as usize + i * CHUNK_BITS as usize)) % modulus;
            let mut acc = BigUint::zero();
            for _ in 0..CHUNK_ENTRIES {
                reduction_tables.push(limbs_from_biguint(&acc));
                acc = (acc + &base) % modulus;
            }
        }
        let base = (BigUint::one() << bit_width as usize) % modulus;
        let mut carry_table = Vec::with_capacity(CARRY_ENTRIES);
        let mut acc = BigUint::zero();
        for _ in 0..CARRY_ENTRIES {
            carry_table.push(limbs_from_biguint(&acc));
            acc = (acc + &base) % modulus;
        }

        Ok(FieldParams {
            modulus: modulus.clone(),
            bit_width,
            limb_count,
            p: limbs_from_biguint(modulus),
            two_p: limbs_from_biguint(&(modulus << 1u32)),
            r: limbs_from_biguint(&r_big),
            r2: limbs_from_biguint(&r2_big),
            pinv,
            reduction_tables,
            chunk_count,
            carry_table,
        })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn bit_width(&self) -> u32 {
        self.bit_width
    }

    pub fn limb_count(&self) -> usize {
        self.limb_count
    }

    /// R mod p as an integer.
    pub fn montgomery_r(&self) -> BigUint {
        limbs_to_biguint(&self.r)
    }

    /// R^2 mod p as an integer.
    pub fn montgomery_r2(&self) -> BigUint {
        limbs_to_biguint(&self.r2)
    }

    /// -p^-1 mod 2^64.
    pub fn montgomery_pinv(&self) -> u64 {
        self.pinv
    }

    /// All standard-reduction table entries as integers (tests and diagnostics).
    pub fn reduction_table_values(&self) -> impl Iterator<Item = BigUint> + '_ {
        self.reduction_tables.iter().chain(self.carry_table.iter()).map(|l| limbs_to_biguint(l))
    }

    /// Number of lowercase hex digits used when serializing an element.
    pub fn hex_width(&self) -> usize {
        (self.bit_width as usize).div_ceil(4)
    }

    fn elem(&self, limbs: Limbs, domain: Domain, range: Range) -> Fp {
        Fp { limbs, domain, range }
    }

    #[inline(always)]
    fn in_lazy_range(&self, a: &Fp) -> bool {
        !geq(&a.limbs, &self.two_p, self.limb_count)
    }

    #[inline(always)]
    fn check_tags(&self, a: &Fp) {
        debug_assert!(self.in_lazy_range(a), "operand outside [0, 2p)");
        debug_assert!(
            a.range == Range::Lazy || !geq(&a.limbs, &self.p, self.limb_count),
            "operand tagged reduced but not below p"
        );
    }

    pub fn zero(&self, domain: Domain) -> Fp {
        self.elem([0; MAX_LIMBS], domain, Range::Reduced)
    }

    pub fn one(&self, domain: Domain) -> Fp {
        match domain {
            Domain::Standard => {
                let mut l = [0; MAX_LIMBS];
                l[0] = 1;
                self.elem(l, domain, Range::Reduced)
            }
            Domain::Montgomery => self.elem(self.r, domain, Range::Reduced),
        }
    }

    /// Encodes the residue of `x` in the requested domain.
    pub fn from_biguint(&self, x: &BigUint, domain: Domain) -> Fp {
        let v = self.elem(limbs_from_biguint(&(x % &self.modulus)), Domain::Standard, Range::Reduced);
        self.convert(&v, domain)
    }

    pub fn from_u64(&self, x: u64, domain: Domain) -> Fp {
        self.from_biguint(&BigUint::from(x), domain)
    }

    /// The plain integer value in `[0, p)`, leaving the Montgomery domain if needed.
    pub fn to_biguint(&self, a: &Fp) -> BigUint {
        let std = self.convert(a, Domain::Standard);
        limbs_to_biguint(&self.reduce(&std).limbs[..self.limb_count])
    }

    /// Full reduction of a lazy value into `[0, p)`.
    #[inline]
    pub fn reduce(&self, a: &Fp) -> Fp {
        self.check_tags(a);
        let mut l = a.limbs;
        if geq(&l, &self.p, self.limb_count) {
            sub_assign(&mut l, &self.p, self.limb_count);
        }
        self.elem(l, a.domain, Range::Reduced)
    }

    pub fn is_zero(&self, a: &Fp) -> bool {
        self.reduce(a).limbs.iter().all(|&l| l == 0)
    }

    /// Residue equality. Elements from different domains never compare equal.
    pub fn equal(&self, a: &Fp, b: &Fp) -> bool {
        a.domain == b.domain && self.reduce(a).limbs == self.reduce(b).limbs
    }

    fn same_domain(a: &Fp, b: &Fp) -> Result<(), FieldError> {
        if a.domain != b.domain {
            return Err(FieldError::DomainMismatch { left: a.domain, right: b.domain });
        }
        Ok(())
    }

    /// `a + b` as a lazy value in `[0, 2p)`.
    pub fn add(&self, a: &Fp, b: &Fp) -> Result<Fp, FieldError> {
        Self::same_domain(a, b)?;
        Ok(self.lazy_add(a, b))
    }

    /// `a - b` as a lazy value in `[0, 2p)`.
    pub fn sub(&self, a: &Fp, b: &Fp) -> Result<Fp, FieldError> {
        Self::same_domain(a, b)?;
        Ok(self.lazy_sub(a, b))
    }

    /// `2a` as a lazy value in `[0, 2p)`.
    pub fn shl1(&self, a: &Fp) -> Fp {
        self.lazy_dbl(a)
    }

    pub fn neg(&self, a: &Fp) -> Fp {
        let z = self.zero(a.domain);
        self.reduce(&self.lazy_sub(&z, a))
    }

    /// Fully reduced product using the chosen backend. Operands must already be
    /// in the backend's domain.
    pub fn mul(&self, a: &Fp, b: &Fp, backend: MulBackend) -> Result<Fp, FieldError> {
        Self::same_domain(a, b)?;
        if a.domain != backend.domain() {
            return Err(FieldError::BackendMismatch { backend, domain: a.domain });
        }
        Ok(self.mul_in(a, b, backend))
    }

    /// Multiplicative inverse by exponentiation with `p - 2`.
    pub fn inv(&self, a: &Fp) -> Result<Fp, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::ZeroInverse);
        }
        let backend = match a.domain {
            Domain::Standard => MulBackend::Standard,
            Domain::Montgomery => MulBackend::Montgomery,
        };
        let exp = &self.modulus - 2u32;
        let mut acc = self.one(a.domain);
        let base = self.reduce(a);
        for i in (0..exp.bits()).rev() {
            acc = self.mul_in(&acc, &acc, backend);
            if exp.bit(i) {
                acc = self.mul_in(&acc, &base, backend);
            }
        }
        Ok(acc)
    }

    /// Moves a value between the standard and Montgomery domains.
    pub fn convert(&self, a: &Fp, to: Domain) -> Fp {
        if a.domain == to {
            return *a;
        }
        match to {
            Domain::Montgomery => {
                let l = self.mont_mul(&a.limbs, &self.r2);
                self.elem(l, Domain::Montgomery, Range::Reduced)
            }
            Domain::Standard => {
                let mut one = [0; MAX_LIMBS];
                one[0] = 1;
                let l = self.mont_mul(&a.limbs, &one);
                self.elem(l, Domain::Standard, Range::Reduced)
            }
        }
    }

    pub fn to_hex(&self, a: &Fp) -> String {
        format!("{:0width$x}", self.to_biguint(a), width = self.hex_width())
    }

    pub fn from_hex(&self, s: &str, domain: Domain) -> Result<Fp, FieldError> {
        let v = parse_hex(s).ok_or_else(|| FieldError::InvalidHex(s.to_string()))?;
        if v >= self.modulus {
            return Err(FieldError::OutOfRange);
        }
        Ok(self.from_biguint(&v, domain))
    }

    // ---- unchecked internals used by the curve formulas ----

    #[inline]
    pub(crate) fn lazy_add(&self, a: &Fp, b: &Fp) -> Fp {
        self.check_tags(a);
        self.check_tags(b);
        debug_assert_eq!(a.domain, b.domain);
        let l = by_limbs!(self.limb_count, lazy_add_n(&a.limbs, &b.limbs, &self.two_p));
        self.elem(l, a.domain, Range::Lazy)
    }

    #[inline]
    pub(crate) fn lazy_sub(&self, a: &Fp, b: &Fp) -> Fp {
        self.check_tags(a);
        self.check_tags(b);
        debug_assert_eq!(a.domain, b.domain);
        let l = by_limbs!(self.limb_count, lazy_sub_n(&a.limbs, &b.limbs, &self.two_p));
        self.elem(l, a.domain, Range::Lazy)
    }

    #[inline]
    pub(crate) fn lazy_dbl(&self, a: &Fp) -> Fp {
        self.check_tags(a);
        let l = by_limbs!(self.limb_count, lazy_add_n(&a.limbs, &a.limbs, &self.two_p));
        self.elem(l, a.domain, Range::Lazy)
    }

    #[inline]
    pub(crate) fn mul_in(&self, a: &Fp, b: &Fp, backend: MulBackend) -> Fp {
        self.check_tags(a);
        self.check_tags(b);
        debug_assert_eq!(a.domain, backend.domain());
        debug_assert_eq!(b.domain, backend.domain());
        let l = match backend {
            MulBackend::Montgomery => self.mont_mul(&a.limbs, &b.limbs),
            MulBackend::Standard => self.table_mul(&a.limbs, &b.limbs),
        };
        self.elem(l, a.domain, Range::Reduced)
    }

    /// CIOS Montgomery product; inputs below 2p, output below p.
    #[inline]
    fn mont_mul(&self, a: &Limbs, b: &Limbs) -> Limbs {
        by_limbs!(self.limb_count, mont_mul_n(a, b, &self.p, self.pinv))
    }

    /// Plain product followed by table-driven folding of the high half.
    #[inline]
    fn table_mul(&self, a: &Limbs, b: &Limbs) -> Limbs {
        by_limbs!(self.limb_count, self.table_mul_n(a, b))
    }

    #[inline(always)]
    fn table_mul_n<const N: usize>(&self, a: &Limbs, b: &Limbs) -> Limbs {
        let mut t = [0u64; 2 * MAX_LIMBS];
        for i in 0..N {
            let mut c = 0;
            for j in 0..N {
                let (lo, hi) = mac(t[i + j], a[j], b[i], c);
                t[i + j] = lo;
                c = hi;
            }
            t[i + N] = c;
        }
        let s = self.bit_width;

        // High part `t >> s`, realigned so that chunks are whole bytes.
        let (w, sh) = ((s / 64) as usize, s % 64);
        let mut hi = [0u64; MAX_LIMBS + 1];
        for (k, h) in hi.iter_mut().enumerate().take(N + 1) {
            let lo = t.get(w + k).copied().unwrap_or(0);
            let up = t.get(w + k + 1).copied().unwrap_or(0);
            *h = if sh == 0 { lo } else { (lo >> sh) | (up << (64 - sh)) };
        }

        // Low part: bits [0, s).
        let mut acc = [0u64; MAX_LIMBS + 1];
        acc[..N].copy_from_slice(&t[..N]);
        mask_low_bits(&mut acc[..N], s);
        for i in 0..self.chunk_count {
            let c = (hi[i / PER_WORD] >> (CHUNK_BITS as usize * (i % PER_WORD))) as usize & (CHUNK_ENTRIES - 1);
            if c != 0 {
                let entry = &self.reduction_tables[i * CHUNK_ENTRIES + c];
                let carry = add_assign(&mut acc, entry, N);
                acc[N] += carry;
            }
        }

        // acc < (chunk_count + 1) * 2^s, so its bits above s index the carry table.
        let top = bits_at(&acc[..N + 1], s, 8) as usize;
        debug_assert!(top < CARRY_ENTRIES);
        mask_low_bits(&mut acc[..N + 1], s);
        let carry = add_assign(&mut acc, &self.carry_table[top], N);
        acc[N] += carry;

        // acc < 2^s + p < 3p.
        let mut out = [0u64; MAX_LIMBS];
        out[..N].copy_from_slice(&acc[..N]);
        debug_assert_eq!(acc[N], 0);
        while geq(&out, &self.p, N) {
            sub_assign(&mut out, &self.p, N);
        }
        out
    }
}

#[inline(always)]
fn lazy_add_n<const N: usize>(a: &Limbs, b: &Limbs, two_p: &Limbs) -> Limbs {
    let mut l = *a;
    add_assign(&mut l, b, N);
    if geq(&l, two_p, N) {
        sub_assign(&mut l, two_p, N);
    }
    l
}

#[inline(always)]
fn lazy_sub_n<const N: usize>(a: &Limbs, b: &Limbs, two_p: &Limbs) -> Limbs {
    let mut l = *a;
    if sub_assign(&mut l, b, N) != 0 {
        add_assign(&mut l, two_p, N);
    }
    l
}

#[inline(always)]
fn mont_mul_n<const N: usize>(a: &Limbs, b: &Limbs, p: &Limbs, pinv: u64) -> Limbs {
    let mut t = [0u64; MAX_LIMBS + 2];
    for &bi in b.iter().take(N) {
        let mut c = 0;
        for j in 0..N {
            let (lo, hi) = mac(t[j], a[j], bi, c);
            t[j] = lo;
            c = hi;
        }
        let (s, c1) = adc(t[N], c, 0);
        t[N] = s;
        t[N + 1] = c1;

        let m = t[0].wrapping_mul(pinv);
        let (_, mut c) = mac(t[0], m, p[0], 0);
        for j in 1..N {
            let (lo, hi) = mac(t[j], m, p[j], c);
            t[j - 1] = lo;
            c = hi;
        }
        let (s, c1) = adc(t[N], c, 0);
        t[N - 1] = s;
        t[N] = t[N + 1] + c1;
    }
    let mut out = [0u64; MAX_LIMBS];
    out[..N].copy_from_slice(&t[..N]);
    debug_assert_eq!(t[N], 0);
    if geq(&out, p, N) {
        sub_assign(&mut out, p, N);
    }
    out
}

#[inline(always)]
fn mask_low_bits(words: &mut [u64], bits: u32) {
    let word = (bits / 64) as usize;
    let shift = bits % 64;
    if word < words.len() {
        if shift == 0 {
            words[word] = 0;
        } else {
            words[word] &= (1u64 << shift) - 1;
        }
        for w in words.iter_mut().skip(word + 1) {
            *w = 0;
        }
    }
}

/// Parses lowercase or uppercase hex without prefix.
pub(crate) fn parse_hex(s: &str) -> Option<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
        return None;
    }
    BigUint::parse_bytes(s.as_bytes(), 16)
}
