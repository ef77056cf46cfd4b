mod common;

use num_bigint::BigUint;
use proptest::prelude::*;

use sabmsm::curves;
use sabmsm::field::{Domain, FieldParams, MulBackend, Range};

fn fields() -> Vec<&'static FieldParams> {
    vec![curves::toy().field(), curves::bn128().field(), curves::bls12_381().field()]
}

fn biguint(bytes: Vec<u8>) -> BigUint {
    BigUint::from_bytes_le(&bytes)
}

fn element() -> impl Strategy<Value = (usize, BigUint, BigUint)> {
    (0usize..3, prop::collection::vec(any::<u8>(), 56), prop::collection::vec(any::<u8>(), 56))
        .prop_map(|(i, a, b)| (i, biguint(a), biguint(b)))
}

fn mul_via(f: &FieldParams, a: &BigUint, b: &BigUint, backend: MulBackend) -> BigUint {
    let d = backend.domain();
    let x = f.from_biguint(a, d);
    let y = f.from_biguint(b, d);
    f.to_biguint(&f.mul(&x, &y, backend).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn backends_agree_with_oracle((i, a, b) in element()) {
        let f = fields()[i];
        let p = f.modulus();
        let (a, b) = (a % p, b % p);
        let want = &a * &b % p;
        prop_assert_eq!(mul_via(f, &a, &b, MulBackend::Montgomery), want.clone());
        prop_assert_eq!(mul_via(f, &a, &b, MulBackend::Standard), want);
    }

    #[test]
    fn ring_axioms((i, a, b) in element(), c in prop::collection::vec(any::<u8>(), 56)) {
        let f = fields()[i];
        let p = f.modulus();
        for backend in [MulBackend::Montgomery, MulBackend::Standard] {
            let d = backend.domain();
            let [x, y, z] = [&a, &b, &biguint(c.clone())].map(|v| f.from_biguint(&(v % p), d));
            let add = |u: &_, v: &_| f.add(u, v).unwrap();
            let mul = |u: &_, v: &_| f.mul(u, v, backend).unwrap();
            let (xy, yx) = (mul(&x, &y), mul(&y, &x));
            prop_assert!(f.equal(&add(&x, &y), &add(&y, &x)));
            prop_assert!(f.equal(&xy, &yx));
            prop_assert!(f.equal(&mul(&xy, &z), &mul(&x, &mul(&y, &z))));
            let lhs = mul(&x, &add(&y, &z));
            let rhs = add(&xy, &mul(&x, &z));
            prop_assert!(f.equal(&lhs, &rhs));
            prop_assert!(f.equal(&mul(&x, &f.one(d)), &x));
            let neg = f.neg(&x);
            prop_assert!(f.is_zero(&add(&x, &neg)));
            let sum = add(&x, &y);
            prop_assert!(f.equal(&f.sub(&sum, &y).unwrap(), &x));
        }
    }

    #[test]
    fn lazy_results_stay_below_twice_modulus((i, a, b) in element()) {
        let f = fields()[i];
        let p = f.modulus();
        let x = f.from_biguint(&(a % p), Domain::Montgomery);
        let y = f.from_biguint(&(b % p), Domain::Montgomery);
        let twice = p * 2u32;
        // Chains of lazy operations must keep every intermediate in [0, 2p).
        let s = f.shl1(&f.add(&x, &y).unwrap());
        let t = f.sub(&s, &f.shl1(&y)).unwrap();
        for v in [&s, &t] {
            prop_assert!(BigUint::from_slice(
                &v.limbs().iter().flat_map(|l| [*l as u32, (*l >> 32) as u32]).collect::<Vec<_>>()
            ) < twice);
            prop_assert!(matches!(v.range(), Range::Reduced | Range::Lazy));
        }
        prop_assert!(f.equal(&t, &f.shl1(&x)));
        let m = f.mul(&t, &s, MulBackend::Montgomery).unwrap();
        prop_assert_eq!(m.range(), Range::Reduced);
    }

    #[test]
    fn inversion_is_two_sided((i, a, _b) in element()) {
        let f = fields()[i];
        let p = f.modulus();
        let a = a % p;
        prop_assume!(a != BigUint::from(0u32));
        for backend in [MulBackend::Montgomery, MulBackend::Standard] {
            let x = f.from_biguint(&a, backend.domain());
            let inv = f.inv(&x).unwrap();
            prop_assert!(f.equal(&f.mul(&x, &inv, backend).unwrap(), &f.one(backend.domain())));
            prop_assert!(f.equal(&f.mul(&inv, &x, backend).unwrap(), &f.one(backend.domain())));
        }
    }

    #[test]
    fn domain_conversion_round_trips((i, a, _b) in element()) {
        let f = fields()[i];
        let a = a % f.modulus();
        let x = f.from_biguint(&a, Domain::Standard);
        let m = f.convert(&x, Domain::Montgomery);
        prop_assert_eq!(f.to_biguint(&m), a.clone());
        prop_assert_eq!(f.to_biguint(&f.convert(&m, Domain::Standard)), a);
        prop_assert!(f.equal(&f.convert(&m, Domain::Standard), &x));
    }

    #[test]
    fn hex_round_trips((i, a, _b) in element()) {
        let f = fields()[i];
        let x = f.from_biguint(&(a % f.modulus()), Domain::Montgomery);
        let h = f.to_hex(&x);
        prop_assert_eq!(h.len(), f.hex_width());
        prop_assert!(f.equal(&f.from_hex(&h, Domain::Montgomery).unwrap(), &x));
    }
}

#[test]
fn montgomery_constants_match_definitions() {
    for f in fields() {
        let p = f.modulus();
        let r = BigUint::from(1u32) << (64 * f.limb_count());
        assert_eq!(f.montgomery_r(), &r % p);
        assert_eq!(f.montgomery_r2(), &r * &r % p);
        // p * p' = -1 mod 2^64
        let low = (p % (BigUint::from(1u32) << 64u32)).to_u64_digits()[0];
        assert_eq!(low.wrapping_mul(f.montgomery_pinv()), u64::MAX);
    }
}

#[test]
fn reduction_table_entries_are_chunk_multiples() {
    let f = curves::bls12_381().field();
    let p = f.modulus();
    let s = f.bit_width();
    let values: Vec<BigUint> = f.reduction_table_values().collect();
    assert!(!values.is_empty());
    for (idx, v) in values.iter().enumerate().take(512) {
        let (i, c) = (idx / 256, idx % 256);
        let want = (BigUint::from(c) << (s as usize + 8 * i)) % p;
        assert_eq!(v, &want, "entry {idx}");
    }
}

#[test]
fn mixed_domains_are_rejected() {
    let f = curves::bn128().field();
    let a = f.from_u64(3, Domain::Standard);
    let b = f.from_u64(5, Domain::Montgomery);
    assert!(f.add(&a, &b).is_err());
    assert!(f.mul(&a, &b, MulBackend::Montgomery).is_err());
    assert!(f.mul(&b, &b, MulBackend::Standard).is_err());
    assert!(f.inv(&f.zero(Domain::Standard)).is_err());
}
