//! Curve presets: BN128 (alt_bn128), BLS12-381 G1 and a small toy curve.

use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::curve::{CurveParams, CurveSpec};
use crate::field::MulBackend;

pub const BN128: &str = "bn128";
pub const BLS12_381: &str = "bls12-381";
pub const TOY: &str = "toy";

pub const NAMES: [&str; 3] = [BN128, BLS12_381, TOY];

fn dec(s: &str) -> BigUint {
    BigUint::parse_bytes(s.as_bytes(), 10).expect("decimal constant")
}

fn hex(s: &str) -> BigUint {
    BigUint::parse_bytes(s.as_bytes(), 16).expect("hex constant")
}

pub fn bn128_spec() -> CurveSpec {
    CurveSpec {
        name: BN128.into(),
        modulus: dec("21888242871839275222246405745257275088696311157297823662689037894645226208583"),
        a: 0u32.into(),
        b: 3u32.into(),
        gx: 1u32.into(),
        gy: 2u32.into(),
        order: dec("21888242871839275222246405745257275088548364400416034343698204186575808495617"),
        scalar_bits: 254,
    }
}

pub fn bls12_381_spec() -> CurveSpec {
    CurveSpec {
        name: BLS12_381.into(),
        modulus: hex(
            "1a0111ea397fe69a4b1ba7b6434bacd764774b84f38512bf6730d2a0f6b0f6241eabfffeb153ffffb9feffffffffaaab",
        ),
        a: 0u32.into(),
        b: 4u32.into(),
        gx: hex("17f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aeffb3af00adb22c6bb"),
        gy: hex("08b3f481e3aaa0f1a09e30ed741d8ae4fcf5e095d5d00af600db18cb2c04b3edd03cc744a2888ae40caa232946c5e7e1"),
        order: hex("73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001"),
        // Accounting width; the scalar field itself is 255 bits.
        scalar_bits: 381,
    }
}

/// `y^2 = x^3 + 3` over F_1009. The group has 948 points and is not cyclic;
/// `(1, 2)` generates a subgroup of order 237. Three points have `y = 0`.
pub fn toy_spec() -> CurveSpec {
    CurveSpec {
        name: TOY.into(),
        modulus: 1009u32.into(),
        a: 0u32.into(),
        b: 3u32.into(),
        gx: 1u32.into(),
        gy: 2u32.into(),
        order: 237u32.into(),
        scalar_bits: 10,
    }
}

/// Default backend per curve: Montgomery for BN128 and the toy curve,
/// table-driven standard form for BLS12-381.
pub fn default_backend(name: &str) -> Option<MulBackend> {
    match name {
        BN128 | TOY => Some(MulBackend::Montgomery),
        BLS12_381 => Some(MulBackend::Standard),
        _ => None,
    }
}

pub fn spec_by_name(name: &str) -> Option<CurveSpec> {
    match name {
        BN128 => Some(bn128_spec()),
        BLS12_381 => Some(bls12_381_spec()),
        TOY => Some(toy_spec()),
        _ => None,
    }
}

macro_rules! preset {
    ($fn:ident, $spec:ident, $name:expr) => {
        pub fn $fn() -> &'static CurveParams {
            static CELL: OnceLock<CurveParams> = OnceLock::new();
            CELL.get_or_init(|| CurveParams::new(&$spec(), default_backend($name).unwrap()).expect("preset curve"))
        }
    };
}

preset!(bn128, bn128_spec, BN128);
preset!(bls12_381, bls12_381_spec, BLS12_381);
preset!(toy, toy_spec, TOY);

/// Shared preset with its default backend.
pub fn by_name(name: &str) -> Option<&'static CurveParams> {
    match name {
        BN128 => Some(bn128()),
        BLS12_381 => Some(bls12_381()),
        TOY => Some(toy()),
        _ => None,
    }
}

/// Fresh instance of a preset with an explicit multiplication backend.
pub fn with_backend(name: &str, backend: MulBackend) -> Option<CurveParams> {
    spec_by_name(name).map(|s| CurveParams::new(&s, backend).expect("preset curve"))
}
