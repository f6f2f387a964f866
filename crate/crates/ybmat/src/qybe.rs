//! Bridge to the quantum Yang-Baxter equation on `C^m ⊗ C^m`.
//!
//! An involutive `Z` satisfying the tensor identity
//! `(I ⊗ Z)(Z ⊗ I)(I ⊗ Z) = (Z ⊗ I)(I ⊗ Z)(Z ⊗ I)` yields the involutive
//! pair `A = I ⊗ Z`, `X = Z ⊗ I` with `A X A = X A X`.

use crate::error::{Error, Result};
use crate::involution::is_involution;
use crate::matrix::CMatrix;
use num_complex::Complex64;

/// Normalized residual of the tensor identity for `z` of size `m² x m²`:
/// `‖lhs - rhs‖_F / max(1, ‖z‖_F³)`.
pub fn qybe_residual(z: &CMatrix, m: usize) -> Result<f64> {
    check_size(z, m)?;
    let eye = CMatrix::identity(m);
    let left_factor = eye.kron(z);
    let right_factor = z.kron(&eye);
    let lhs = left_factor.mul(&right_factor)?.mul(&left_factor)?;
    let rhs = right_factor.mul(&left_factor)?.mul(&right_factor)?;
    let norm = z.fro_norm();
    Ok(lhs.sub(&rhs)?.fro_norm() / (norm * norm * norm).max(1.0))
}

/// Lifts a braid-compatible involution to the matrix-equation pair
/// `(A, X) = (I_m ⊗ Z, Z ⊗ I_m)`.
///
/// Fails when `z` is not an involution or does not satisfy the tensor
/// identity within `tol`.
pub fn lift_to_pair(z: &CMatrix, m: usize, tol: f64) -> Result<(CMatrix, CMatrix)> {
    check_size(z, m)?;
    let (ok, residual) = is_involution(z, tol)?;
    if !ok {
        return Err(Error::NotInvolutory { residual });
    }
    let residual = qybe_residual(z, m)?;
    if residual > tol {
        return Err(Error::NotASolution {
            ybe_residual: residual,
            involution_residual: 0.0,
        });
    }
    let eye = CMatrix::identity(m);
    Ok((eye.kron(z), z.kron(&eye)))
}

/// The swap operator on `C^m ⊗ C^m`: the permutation sending `e_i ⊗ e_j` to
/// `e_j ⊗ e_i`. It is an involution and satisfies the tensor identity
/// exactly.
pub fn swap_operator(m: usize) -> CMatrix {
    let n = m * m;
    let mut s = CMatrix::zeros(n, n);
    for i in 0..m {
        for j in 0..m {
            s.set(i * m + j, j * m + i, Complex64::new(1.0, 0.0));
        }
    }
    s
}

fn check_size(z: &CMatrix, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if z.rows() != m * m || z.cols() != m * m {
        return Err(Error::DimensionMismatch(format!(
            "z must be {0}x{0} for m = {m}, got {1}x{2}",
            m * m,
            z.rows(),
            z.cols()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::verify_solution;

    const TOL: f64 = 1e-8;

    #[test]
    fn identity_has_zero_residual() {
        assert_eq!(qybe_residual(&CMatrix::identity(4), 2).unwrap(), 0.0);
    }

    #[test]
    fn swap_operator_solves_the_tensor_identity() {
        let s = swap_operator(2);
        // permutation exchanging the two middle basis vectors
        let expected = CMatrix::from_real_rows(&[
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(s, expected);
        assert_eq!(qybe_residual(&s, 2).unwrap(), 0.0);
    }

    #[test]
    fn diagonal_sign_matrix_residual_is_computable() {
        let z = CMatrix::diag(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ]);
        // the factors commute and square to I, so the two triple products
        // collapse to Z ⊗ I and I ⊗ Z; those differ in two diagonal slots,
        // giving ‖diff‖_F = sqrt(8) against the normalization ‖z‖³ = 8
        let residual = qybe_residual(&z, 2).unwrap();
        assert!((residual - 8.0_f64.sqrt() / 8.0).abs() < 1e-15);
    }

    #[test]
    fn wrong_size_is_rejected() {
        assert!(matches!(
            qybe_residual(&CMatrix::identity(5), 2),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn lift_of_identity() {
        let (a, x) = lift_to_pair(&CMatrix::identity(4), 2, TOL).unwrap();
        assert_eq!(a, CMatrix::identity(8));
        assert_eq!(x, CMatrix::identity(8));
    }

    #[test]
    fn lift_of_swap_passes_verification() {
        let s = swap_operator(2);
        let (a, x) = lift_to_pair(&s, 2, TOL).unwrap();
        // bit-for-bit the Kronecker products
        assert_eq!(a, CMatrix::identity(2).kron(&s));
        assert_eq!(x, s.kron(&CMatrix::identity(2)));
        let report = verify_solution(&a, &x, TOL).unwrap();
        assert!(report.ybe_residual <= 1e-10);
        assert!(report.involution_residual <= 1e-10);
    }

    #[test]
    fn lift_rejects_non_involution() {
        let shear = CMatrix::from_real_rows(&[
            vec![1.0, 1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert!(matches!(
            lift_to_pair(&shear, 2, TOL),
            Err(Error::NotInvolutory { .. })
        ));
    }
}
