use crate::curve::{AffinePoint, CurveParams, JacobianPoint, OpCounters};
use crate::scalar::Scalar;

use super::{check_inputs, MsmError};

/// `sum s_i P_i` with one full-width double-and-add per term.
pub fn msm_naive(
    scalars: &[Scalar],
    points: &[AffinePoint],
    curve: &CurveParams,
    counters: &mut OpCounters,
) -> Result<JacobianPoint, MsmError> {
    check_inputs(scalars, points, curve)?;
    let n = curve.scalar_bits();
    let mut acc = curve.infinity();
    for (s, p) in scalars.iter().zip(points) {
        let term = curve.scalar_mul_double_and_add(s, &curve.to_jacobian(p), n, counters);
        acc = curve.unified_double_add(&acc, &term, counters);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves;

    #[test]
    fn single_unit_scalar_returns_point() {
        let cv = curves::bn128();
        let g = *cv.generator();
        let mut c = OpCounters::default();
        let r = msm_naive(&[Scalar::from_u64(1)], &[g], cv, &mut c).unwrap();
        assert!(cv.affine_equal(&cv.to_affine(&r), &g));
    }

    #[test]
    fn zero_scalars_give_identity() {
        let cv = curves::toy();
        let g = *cv.generator();
        let mut c = OpCounters::default();
        let r = msm_naive(&[Scalar::ZERO, Scalar::ZERO], &[g, g], cv, &mut c).unwrap();
        assert!(cv.is_infinity(&r));
    }

    #[test]
    fn input_errors() {
        let cv = curves::toy();
        let g = *cv.generator();
        let mut c = OpCounters::default();
        assert_eq!(msm_naive(&[], &[], cv, &mut c).unwrap_err(), MsmError::Empty);
        assert!(matches!(msm_naive(&[Scalar::ZERO], &[g, g], cv, &mut c), Err(MsmError::LengthMismatch { .. })));
        let bad = cv.affine_unchecked(&1u32.into(), &3u32.into());
        assert_eq!(msm_naive(&[Scalar::ZERO], &[bad], cv, &mut c).unwrap_err(), MsmError::OffCurve { index: 0 });
        assert!(matches!(
            msm_naive(&[Scalar::from_u64(1 << 12)], &[g], cv, &mut c),
            Err(MsmError::ScalarTooWide { .. })
        ));
    }
}
