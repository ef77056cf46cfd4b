//! Independent oracles: affine group law over plain integers and curve
//! enumeration for small fields.

#![allow(dead_code)]

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sabmsm::curve::{AffinePoint, CurveParams, JacobianPoint};

/// `None` is the point at infinity.
pub type Aff = Option<(BigUint, BigUint)>;

pub struct Oracle {
    pub p: BigUint,
    pub a: BigUint,
    pub b: BigUint,
}

impl Oracle {
    pub fn of(curve: &CurveParams) -> Self {
        let f = curve.field();
        Oracle { p: f.modulus().clone(), a: f.to_biguint(curve.a()), b: f.to_biguint(curve.b()) }
    }

    fn sub(&self, x: &BigUint, y: &BigUint) -> BigUint {
        ((x + &self.p) - (y % &self.p)) % &self.p
    }

    fn inv(&self, x: &BigUint) -> BigUint {
        x.modpow(&(&self.p - 2u32), &self.p)
    }

    pub fn on_curve(&self, pt: &Aff) -> bool {
        match pt {
            None => true,
            Some((x, y)) => (y * y) % &self.p == (x * x * x + &self.a * x + &self.b) % &self.p,
        }
    }

    pub fn neg(&self, pt: &Aff) -> Aff {
        pt.as_ref().map(|(x, y)| (x.clone(), self.sub(&BigUint::zero(), y)))
    }

    /// Chord-and-tangent addition.
    pub fn add(&self, p1: &Aff, p2: &Aff) -> Aff {
        let (Some((x1, y1)), Some((x2, y2))) = (p1, p2) else {
            return p1.clone().or_else(|| p2.clone());
        };
        let p = &self.p;
        let s = if x1 == x2 {
            if ((y1 + y2) % p).is_zero() {
                return None;
            }
            // Tangent slope (3x^2 + a) / 2y.
            (BigUint::from(3u32) * x1 * x1 + &self.a) % p * self.inv(&((BigUint::from(2u32) * y1) % p)) % p
        } else {
            self.sub(y2, y1) * self.inv(&self.sub(x2, x1)) % p
        };
        let x3 = self.sub(&self.sub(&(&s * &s % p), x1), x2);
        let y3 = self.sub(&(&s * self.sub(x1, &x3) % p), y1);
        Some((x3, y3))
    }

    pub fn mul(&self, k: u64, pt: &Aff) -> Aff {
        let mut acc = None;
        for _ in 0..k {
            acc = self.add(&acc, pt);
        }
        acc
    }

    pub fn mul_big(&self, k: &BigUint, pt: &Aff) -> Aff {
        let mut acc = None;
        for i in (0..k.bits()).rev() {
            acc = self.add(&acc, &acc);
            if k.bit(i) {
                acc = self.add(&acc, pt);
            }
        }
        acc
    }

    /// Every point of a curve over a small prime field, infinity first.
    pub fn enumerate(&self) -> Vec<Aff> {
        let p = u64::try_from(&self.p).expect("small field");
        let a = u64::try_from(&self.a).unwrap();
        let b = u64::try_from(&self.b).unwrap();
        let mut roots: Vec<Vec<u64>> = vec![Vec::new(); p as usize];
        for y in 0..p {
            roots[(y * y % p) as usize].push(y);
        }
        let mut out = vec![None];
        for x in 0..p {
            let rhs = (x * x % p * x + a * x + b) % p;
            for &y in &roots[rhs as usize] {
                out.push(Some((BigUint::from(x), BigUint::from(y))));
            }
        }
        out
    }
}

pub fn to_aff(curve: &CurveParams, pt: &JacobianPoint) -> Aff {
    curve.affine_coords(&curve.to_affine(pt))
}

pub fn affine_to_aff(curve: &CurveParams, pt: &AffinePoint) -> Aff {
    curve.affine_coords(pt)
}

pub fn from_aff(curve: &CurveParams, pt: &Aff) -> JacobianPoint {
    match pt {
        None => curve.infinity(),
        Some((x, y)) => curve.to_jacobian(&curve.affine_unchecked(x, y)),
    }
}

/// Same group element with Jacobian coordinates scaled by `lambda`.
pub fn rescale(curve: &CurveParams, pt: &JacobianPoint, lambda: &BigUint) -> JacobianPoint {
    if curve.is_infinity(pt) {
        return *pt;
    }
    let f = curve.field();
    let be = curve.backend();
    let l = curve.fe(lambda);
    let l2 = f.mul(&l, &l, be).unwrap();
    let l3 = f.mul(&l2, &l, be).unwrap();
    curve.jacobian_from_parts(
        f.mul(pt.x(), &l2, be).unwrap(),
        f.mul(pt.y(), &l3, be).unwrap(),
        f.mul(pt.z(), &l, be).unwrap(),
    )
}

pub fn random_below(rng: &mut ChaCha8Rng, n: &BigUint) -> BigUint {
    let mut buf = vec![0u8; (n.bits() as usize).div_ceil(8) + 8];
    rng.fill_bytes(&mut buf);
    BigUint::from_bytes_le(&buf) % n
}

pub fn random_nonzero_below(rng: &mut ChaCha8Rng, n: &BigUint) -> BigUint {
    random_below(rng, &(n - BigUint::one())) + 1u32
}

/// Random multiples of the generator.
pub fn random_points(curve: &CurveParams, count: usize, seed: u64) -> Vec<JacobianPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| curve.mul_generator(&random_nonzero_below(&mut rng, curve.order()))).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
