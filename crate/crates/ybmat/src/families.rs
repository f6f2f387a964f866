//! Closed-form solution families at sizes 2 and 3.
//!
//! For `D = diag(1, -1)` the full solution set is `{D}` plus a one-parameter
//! family; for `D = diag(1, 1, -1)` it is `{D}` plus two explicitly
//! parameterized families. These serve as ground truth for the generic
//! machinery and as a cheap way to walk the parameter space.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// A point in one of the closed-form families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyPoint {
    /// The trivial solution `diag(1, -1)`.
    D2,
    /// 2x2 family member `[[-1/2, t], [3/(4t), 1/2]]`, `t != 0`.
    K { t: Complex64 },
    /// The trivial solution `diag(1, 1, -1)`.
    D3,
    /// 3x3 family with a fixed +1 eigenvector in the first coordinate.
    K2 { u: Complex64, t2: Complex64 },
    /// 3x3 family covering the generic position.
    K3 {
        b2: Complex64,
        c2: Complex64,
        t3: Complex64,
    },
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn is_zero(z: Complex64) -> bool {
    z == Complex64::new(0.0, 0.0)
}

/// `[[-1/2, t], [3/(4t), 1/2]]` for `t != 0`; solves the equation for
/// `D = diag(1, -1)`.
///
/// The lower-left entry is evaluated as `(1/t) * 3/4` so the result is
/// bit-identical to the generic construction with parameter block `[t]`.
pub fn family_k_2x2(t: Complex64) -> Result<CMatrix> {
    if is_zero(t) {
        return Err(Error::InvalidParameter("t must be nonzero".into()));
    }
    CMatrix::from_rows(&[
        vec![real(-0.5), t],
        vec![(real(1.0) / t) * real(0.75), real(0.5)],
    ])
}

/// 3x3 family member
/// `[[1, 0, 0], [-3u/2, -1/2, t2], [3u/(4 t2), 3/(4 t2), 1/2]]`
/// for `u != 0`, `t2 != 0`; solves the equation for `D = diag(1, 1, -1)`.
pub fn family_k2_3x3(u: Complex64, t2: Complex64) -> Result<CMatrix> {
    if is_zero(u) || is_zero(t2) {
        return Err(Error::InvalidParameter("u and t2 must be nonzero".into()));
    }
    CMatrix::from_rows(&[
        vec![real(1.0), real(0.0), real(0.0)],
        vec![real(-1.5) * u, real(-0.5), t2],
        vec![real(0.75) * u / t2, real(0.75) / t2, real(0.5)],
    ])
}

/// 3x3 family member
///
/// ```text
/// [ -1/2 - 3 b2 c2 / 2          3 b2 / 2            t3    ]
/// [ -3 c2 (1 + b2 c2) / 2       1 + 3 b2 c2 / 2     c2 t3 ]
/// [ 3 (1 + b2 c2) / (4 t3)      -3 b2 / (4 t3)      1/2   ]
/// ```
///
/// for `t3 != 0`; solves the equation for `D = diag(1, 1, -1)`.
pub fn family_k3_3x3(b2: Complex64, c2: Complex64, t3: Complex64) -> Result<CMatrix> {
    if is_zero(t3) {
        return Err(Error::InvalidParameter("t3 must be nonzero".into()));
    }
    let bc = b2 * c2;
    let one_plus = real(1.0) + bc;
    CMatrix::from_rows(&[
        vec![real(-0.5) - real(1.5) * bc, real(1.5) * b2, t3],
        vec![real(-1.5) * c2 * one_plus, real(1.0) + real(1.5) * bc, c2 * t3],
        vec![
            real(0.75) * one_plus / t3,
            real(-0.75) * b2 / t3,
            real(0.5),
        ],
    ])
}

/// Matches a 2x2 matrix against `{D} ∪ K`, reading `t` off the `(0, 1)`
/// entry. Comparison is entrywise within `tol` in Frobenius norm.
///
/// Panics when `y` is not 2x2.
pub fn membership_2x2(y: &CMatrix, tol: f64) -> Option<FamilyPoint> {
    assert!(y.rows() == 2 && y.cols() == 2, "membership_2x2 needs a 2x2 matrix");
    let d = CMatrix::diag(&[real(1.0), real(-1.0)]);
    if y.sub(&d).unwrap().fro_norm() <= tol {
        return Some(FamilyPoint::D2);
    }
    let t = y.get(0, 1);
    if !is_zero(t) {
        let candidate = family_k_2x2(t).expect("t is nonzero");
        if y.sub(&candidate).unwrap().fro_norm() <= tol {
            return Some(FamilyPoint::K { t });
        }
    }
    None
}

/// Matches a 3x3 matrix against `{D} ∪ K2 ∪ K3`, fitting parameters from the
/// designated entries and verifying the whole matrix within `tol`.
///
/// Panics when `y` is not 3x3.
pub fn membership_3x3(y: &CMatrix, tol: f64) -> Option<FamilyPoint> {
    assert!(y.rows() == 3 && y.cols() == 3, "membership_3x3 needs a 3x3 matrix");
    let d = CMatrix::diag(&[real(1.0), real(1.0), real(-1.0)]);
    if y.sub(&d).unwrap().fro_norm() <= tol {
        return Some(FamilyPoint::D3);
    }
    // K2: first row pinned to (1, 0, 0), u from (1, 0), t2 from (1, 2)
    let u = y.get(1, 0) * real(-2.0 / 3.0);
    let t2 = y.get(1, 2);
    if !is_zero(u) && !is_zero(t2) {
        let candidate = family_k2_3x3(u, t2).expect("parameters are nonzero");
        if y.sub(&candidate).unwrap().fro_norm() <= tol {
            return Some(FamilyPoint::K2 { u, t2 });
        }
    }
    // K3: t3 from (0, 2), c2 from (1, 2) / t3, b2 from (0, 1)
    let t3 = y.get(0, 2);
    if !is_zero(t3) {
        let c2 = y.get(1, 2) / t3;
        let b2 = y.get(0, 1) * real(2.0 / 3.0);
        let candidate = family_k3_3x3(b2, c2, t3).expect("t3 is nonzero");
        if y.sub(&candidate).unwrap().fro_norm() <= tol {
            return Some(FamilyPoint::K3 { b2, c2, t3 });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::check_block_identities;
    use crate::solver::{build_y_alg1, verify_solution};
    use proptest::prelude::*;

    fn r(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const TOL: f64 = 1e-8;

    #[test]
    fn family_k_reference_points() {
        let y = family_k_2x2(r(1.0)).unwrap();
        let expected = CMatrix::from_real_rows(&[vec![-0.5, 1.0], vec![0.75, 0.5]]).unwrap();
        assert!(y.sub(&expected).unwrap().fro_norm() < 1e-15);

        // t = i: 3 / (4i) = -3i/4
        let y = family_k_2x2(c(0.0, 1.0)).unwrap();
        assert!((y.get(1, 0) - c(0.0, -0.75)).norm() < 1e-15);
        let d = CMatrix::diag(&[r(1.0), r(-1.0)]);
        let ydy = y.mul(&d).unwrap().mul(&y).unwrap();
        let dyd = d.mul(&y).unwrap().mul(&d).unwrap();
        assert!(ydy.sub(&dyd).unwrap().fro_norm() < 1e-15);
    }

    #[test]
    fn family_k_rejects_zero() {
        assert!(matches!(
            family_k_2x2(r(0.0)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn family_k2_reference_points() {
        let y = family_k2_3x3(r(1.0), r(1.0)).unwrap();
        let expected = CMatrix::from_real_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![-1.5, -0.5, 1.0],
            vec![0.75, 0.75, 0.5],
        ])
        .unwrap();
        assert!(y.sub(&expected).unwrap().fro_norm() < 1e-15);

        let y = family_k2_3x3(r(2.0), r(1.0)).unwrap();
        let expected = CMatrix::from_real_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![-3.0, -0.5, 1.0],
            vec![1.5, 0.75, 0.5],
        ])
        .unwrap();
        assert!(y.sub(&expected).unwrap().fro_norm() < 1e-15);

        let d = CMatrix::diag(&[r(1.0), r(1.0), r(-1.0)]);
        let report = verify_solution(&d, &y, TOL).unwrap();
        assert!(report.ybe_residual < 1e-15);
        assert!(report.involution_residual < 1e-15);
    }

    #[test]
    fn family_k3_reference_points() {
        // b2 = c2 = 0 collapses to the basic embedded member
        let y = family_k3_3x3(r(0.0), r(0.0), r(1.0)).unwrap();
        let expected = CMatrix::from_real_rows(&[
            vec![-0.5, 0.0, 1.0],
            vec![0.0, 1.0, 0.0],
            vec![0.75, 0.0, 0.5],
        ])
        .unwrap();
        assert!(y.sub(&expected).unwrap().fro_norm() < 1e-15);

        let y = family_k3_3x3(r(1.0), r(0.0), r(1.0)).unwrap();
        let expected = CMatrix::from_real_rows(&[
            vec![-0.5, 1.5, 1.0],
            vec![0.0, 1.0, 0.0],
            vec![0.75, -0.75, 0.5],
        ])
        .unwrap();
        assert!(y.sub(&expected).unwrap().fro_norm() < 1e-15);
    }

    #[test]
    fn family_k3_trace_is_fixed() {
        for (b2, c2, t3) in [
            (r(0.0), r(0.0), r(1.0)),
            (r(2.0), r(-1.0), r(0.5)),
            (c(1.0, 1.0), c(0.0, -2.0), c(0.0, 3.0)),
        ] {
            let y = family_k3_3x3(b2, c2, t3).unwrap();
            // trace = 2p - n = 1 for p = 2, n = 3
            assert!((y.trace() - r(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn membership_accepts_d_and_k() {
        let d = CMatrix::diag(&[r(1.0), r(-1.0)]);
        assert_eq!(membership_2x2(&d, TOL), Some(FamilyPoint::D2));

        let y = CMatrix::from_real_rows(&[vec![-0.5, 5.0], vec![0.15, 0.5]]).unwrap();
        match membership_2x2(&y, TOL) {
            Some(FamilyPoint::K { t }) => assert!((t - r(5.0)).norm() < 1e-15),
            other => panic!("expected K membership, got {other:?}"),
        }
    }

    #[test]
    fn membership_rejects_identity() {
        assert_eq!(membership_2x2(&CMatrix::identity(2), TOL), None);
    }

    #[test]
    fn membership_is_exclusive() {
        // D and K are disjoint: no input can match both, since K members have
        // Y[0][0] = -1/2
        let d = CMatrix::diag(&[r(1.0), r(-1.0)]);
        assert!(membership_2x2(&d, TOL) == Some(FamilyPoint::D2));
        for t in [r(1.0), r(-2.0), c(0.0, 1.0)] {
            let y = family_k_2x2(t).unwrap();
            assert!(matches!(membership_2x2(&y, TOL), Some(FamilyPoint::K { .. })));
        }
    }

    #[test]
    fn membership_3x3_fits_both_families() {
        let y = family_k2_3x3(r(2.0), r(-1.5)).unwrap();
        assert!(matches!(membership_3x3(&y, 1e-10), Some(FamilyPoint::K2 { .. })));
        let y = family_k3_3x3(r(1.0), r(2.0), r(-0.5)).unwrap();
        assert!(matches!(membership_3x3(&y, 1e-10), Some(FamilyPoint::K3 { .. })));
        let d = CMatrix::diag(&[r(1.0), r(1.0), r(-1.0)]);
        assert_eq!(membership_3x3(&d, 1e-10), Some(FamilyPoint::D3));
    }

    #[test]
    fn family_matches_solver_output_exactly() {
        for t in [r(1.0), r(2.0), r(-0.5), c(1.0, 2.0), r(1e6)] {
            let family = family_k_2x2(t).unwrap();
            let y2 = CMatrix::from_rows(&[vec![t]]).unwrap();
            let built = build_y_alg1(1, &y2).unwrap();
            assert_eq!(family, built);
        }
    }

    proptest! {
        #[test]
        fn three_dimensional_families_satisfy_block_identities(
            (u_re, u_im, t_re, t_im) in (0.1..4.0, -2.0..2.0f64, 0.1..4.0, -2.0..2.0f64),
        ) {
            let u = c(u_re, u_im);
            let t2 = c(t_re, t_im);
            let y = family_k2_3x3(u, t2).unwrap();
            let report = check_block_identities(&y, 2).unwrap();
            prop_assert!(report.max_residual() <= 1e-12);

            let y = family_k3_3x3(u, t2, c(t_re, u_im)).unwrap();
            let report = check_block_identities(&y, 2).unwrap();
            prop_assert!(report.max_residual() <= 1e-12);
        }

        #[test]
        fn two_dimensional_family_is_always_involutive(
            (re, im) in (-3.0..3.0f64, -3.0..3.0f64),
        ) {
            prop_assume!(re.abs() > 1e-3 || im.abs() > 1e-3);
            let y = family_k_2x2(c(re, im)).unwrap();
            prop_assert!(y.mul(&y).unwrap().identity_distance() <= 1e-10 * y.fro_norm().max(1.0));
        }
    }
}
