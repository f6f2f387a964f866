//! Diagonalization of quadratic matrices: `M` with `(M - aI)(M - bI) = 0`.
//!
//! For distinct roots the matrix is diagonalizable with spectrum in `{a, b}`,
//! and `(M - bI) / (a - b)` is the spectral projector onto the `a`-eigenspace.
//! The split is extracted straight from the projector columns.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Similarity `M = P diag(alpha I_k, beta I_{m-k}) P⁻¹` for a quadratic `M`.
///
/// `k == m` means `M = alpha I`; `k == 0` means `M = beta I`.
#[derive(Debug, Clone)]
pub struct QuadraticSplit {
    p_mat: CMatrix,
    p_inv: CMatrix,
    k: usize,
    alpha: Complex64,
    beta: Complex64,
}

impl QuadraticSplit {
    pub fn p_matrix(&self) -> &CMatrix {
        &self.p_mat
    }

    pub fn p_inverse(&self) -> &CMatrix {
        &self.p_inv
    }

    /// Multiplicity of `alpha` in the spectrum.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// Rebuilds `P diag(alpha I_k, beta I_{m-k}) P⁻¹`.
    pub fn reconstruct(&self) -> CMatrix {
        let m = self.p_mat.rows();
        let d = CMatrix::two_block_diag(self.alpha, self.k, self.beta, m - self.k);
        self.p_mat
            .mul(&d)
            .and_then(|pd| pd.mul(&self.p_inv))
            .expect("split blocks conform")
    }
}

/// Residual of the quadratic identity:
/// `‖(M - aI)(M - bI)‖_F / max(1, ‖M‖_F²)`.
///
/// Panics when `m` is not square.
pub fn verify_quadratic(m: &CMatrix, alpha: Complex64, beta: Complex64) -> f64 {
    assert!(m.is_square(), "verify_quadratic requires a square matrix");
    let n = m.rows();
    let shift_a = m.sub(&CMatrix::two_block_diag(alpha, n, alpha, 0)).unwrap();
    let shift_b = m.sub(&CMatrix::two_block_diag(beta, n, beta, 0)).unwrap();
    let product = shift_a.mul(&shift_b).unwrap();
    let scale = m.fro_norm();
    product.fro_norm() / (scale * scale).max(1.0)
}

/// Splits a quadratic matrix into its `alpha` and `beta` eigenspaces.
///
/// The first `k` columns of `P` are a basis of the column space of
/// `(M - bI) / (a - b)`, the remaining columns a basis of
/// `(M - aI) / (b - a)`; `tol` doubles as the quadratic-residual gate and the
/// rank threshold.
pub fn diagonalize_quadratic(
    m: &CMatrix,
    alpha: Complex64,
    beta: Complex64,
    tol: f64,
) -> Result<QuadraticSplit> {
    if alpha == beta {
        return Err(Error::EqualRoots);
    }
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let residual = verify_quadratic(m, alpha, beta);
    if residual > tol {
        return Err(Error::NotQuadratic { residual });
    }
    let n = m.rows();
    let scale = m.fro_norm().max(1.0);
    let alpha_eye = CMatrix::two_block_diag(alpha, n, alpha, 0);
    let beta_eye = CMatrix::two_block_diag(beta, n, beta, 0);

    // scalar cases first: no basis extraction needed
    if m.sub(&alpha_eye)?.fro_norm() <= tol * scale {
        return Ok(QuadraticSplit {
            p_mat: CMatrix::identity(n),
            p_inv: CMatrix::identity(n),
            k: n,
            alpha,
            beta,
        });
    }
    if m.sub(&beta_eye)?.fro_norm() <= tol * scale {
        return Ok(QuadraticSplit {
            p_mat: CMatrix::identity(n),
            p_inv: CMatrix::identity(n),
            k: 0,
            alpha,
            beta,
        });
    }

    let gap = alpha - beta;
    let proj_alpha = m.sub(&beta_eye)?.scale(gap.inv());
    let proj_beta = m.sub(&alpha_eye)?.scale((-gap).inv());
    let basis_alpha = proj_alpha.column_space_basis(tol);
    let basis_beta = proj_beta.column_space_basis(tol);
    if basis_alpha.cols() + basis_beta.cols() != n {
        return Err(Error::Inconsistent(format!(
            "eigenspace bases span {} + {} columns, expected {}",
            basis_alpha.cols(),
            basis_beta.cols(),
            n
        )));
    }
    let k = basis_alpha.cols();
    let p_mat = CMatrix::hconcat(&[&basis_alpha, &basis_beta])?;
    let p_inv = p_mat.inverse()?;
    Ok(QuadraticSplit {
        p_mat,
        p_inv,
        k,
        alpha,
        beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::random_nonsingular;
    use proptest::prelude::*;

    fn r(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    const TOL: f64 = 1e-8;

    #[test]
    fn residual_of_exact_splits() {
        let m = CMatrix::diag(&[r(1.0), r(-0.5)]);
        assert_eq!(verify_quadratic(&m, r(1.0), r(-0.5)), 0.0);
        // one factor vanishing is enough
        assert_eq!(verify_quadratic(&CMatrix::identity(2), r(1.0), r(5.0)), 0.0);
    }

    #[test]
    fn residual_of_triangular_example() {
        let m = CMatrix::from_real_rows(&[vec![1.0, 3.0], vec![0.0, -0.5]]).unwrap();
        assert!(verify_quadratic(&m, r(1.0), r(-0.5)) < 1e-15);
    }

    #[test]
    fn diagonalize_diagonal_input() {
        let m = CMatrix::diag(&[r(-0.5), r(1.0)]);
        let split = diagonalize_quadratic(&m, r(-0.5), r(1.0), TOL).unwrap();
        assert_eq!(split.k(), 1);
        assert!(split.p_matrix().sub(&CMatrix::identity(2)).unwrap().fro_norm() < 1e-15);
    }

    #[test]
    fn diagonalize_scalar_input() {
        let alpha = r(2.5);
        let m = CMatrix::diag(&[alpha, alpha, alpha]);
        let split = diagonalize_quadratic(&m, alpha, r(0.0), TOL).unwrap();
        assert_eq!(split.k(), 3);
        assert!(split.p_matrix().sub(&CMatrix::identity(3)).unwrap().fro_norm() < 1e-15);
    }

    #[test]
    fn diagonalize_triangular_example() {
        let m = CMatrix::from_real_rows(&[vec![1.0, 3.0], vec![0.0, -0.5]]).unwrap();
        let split = diagonalize_quadratic(&m, r(1.0), r(-0.5), TOL).unwrap();
        assert_eq!(split.k(), 1);
        // columns span (1, 0)^T and (2, -1)^T
        assert!(split.p_matrix().get(1, 0).norm() < 1e-12);
        let ratio = split.p_matrix().get(0, 1) / split.p_matrix().get(1, 1);
        assert!((ratio - r(-2.0)).norm() < 1e-12);
        // M P = P diag(1, -1/2)
        let mp = m.mul(split.p_matrix()).unwrap();
        let pd = split
            .p_matrix()
            .mul(&CMatrix::diag(&[r(1.0), r(-0.5)]))
            .unwrap();
        assert!(mp.sub(&pd).unwrap().fro_norm() < 1e-12);
    }

    #[test]
    fn equal_roots_are_rejected() {
        let m = CMatrix::identity(2);
        assert!(matches!(
            diagonalize_quadratic(&m, r(1.0), r(1.0), TOL),
            Err(Error::EqualRoots)
        ));
    }

    #[test]
    fn non_quadratic_is_rejected() {
        let m = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        // nilpotent shear is quadratic for alpha = beta = 0 only
        assert!(matches!(
            diagonalize_quadratic(&m, r(1.0), r(-0.5), TOL),
            Err(Error::NotQuadratic { .. })
        ));
    }

    proptest! {
        #[test]
        fn split_recovers_constructed_multiplicity(
            (m, k, seed) in (2usize..9).prop_flat_map(|m| {
                (Just(m), 0..=m, any::<u64>())
            }),
        ) {
            let alpha = Complex64::new(-0.5, 0.0);
            let beta = Complex64::new(1.0, 0.0);
            let pm = random_nonsingular(m, seed).unwrap();
            let pi = pm.inverse().unwrap();
            let d = CMatrix::two_block_diag(alpha, k, beta, m - k);
            let quad = pm.mul(&d).unwrap().mul(&pi).unwrap();

            let split = diagonalize_quadratic(&quad, alpha, beta, TOL).unwrap();
            prop_assert_eq!(split.k(), k);
            let err = split.reconstruct().sub(&quad).unwrap().fro_norm();
            prop_assert!(err <= 1e-8 * quad.fro_norm().max(1.0));
        }

        #[test]
        fn projector_idempotency(
            (m, k, seed) in (2usize..9).prop_flat_map(|m| {
                (Just(m), 1..m, any::<u64>())
            }),
        ) {
            let alpha = Complex64::new(-0.5, 0.0);
            let beta = Complex64::new(1.0, 0.0);
            let pm = random_nonsingular(m, seed).unwrap();
            let pi = pm.inverse().unwrap();
            let d = CMatrix::two_block_diag(alpha, k, beta, m - k);
            let quad = pm.mul(&d).unwrap().mul(&pi).unwrap();

            let eye = CMatrix::identity(m);
            let beta_eye = eye.scale(beta);
            let proj = quad.sub(&beta_eye).unwrap().scale((alpha - beta).inv());
            let diff = proj.mul(&proj).unwrap().sub(&proj).unwrap();
            prop_assert!(diff.fro_norm() <= 1e-10 * proj.fro_norm().max(1.0).powi(2));
        }

        #[test]
        fn split_at_size_32(k in 1usize..32, seed in any::<u64>()) {
            let alpha = Complex64::new(0.5, 0.0);
            let beta = Complex64::new(-1.0, 0.0);
            let pm = random_nonsingular(32, seed).unwrap();
            let pi = pm.inverse().unwrap();
            let d = CMatrix::two_block_diag(alpha, k, beta, 32 - k);
            let quad = pm.mul(&d).unwrap().mul(&pi).unwrap();
            let split = diagonalize_quadratic(&quad, alpha, beta, TOL).unwrap();
            prop_assert_eq!(split.k(), k);
            let err = split.reconstruct().sub(&quad).unwrap().fro_norm();
            prop_assert!(err <= 1e-8 * quad.fro_norm().max(1.0));
        }
    }
}
