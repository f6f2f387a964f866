//! Involution testing and the spectral decomposition `A = ±P D P⁻¹` with
//! `D = diag(I_p, -I_{n-p})`.
//!
//! The eigenspaces of an involution are recovered from the spectral projectors
//! `(I ± A) / 2`, whose ranks are exact integers in exact arithmetic; no
//! general eigensolver is involved. The working convention keeps `n <= 2p`:
//! when the +1 eigenspace of `A` is too small, the decomposition is taken of
//! `-A` instead and flagged with `sign_flip`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Default tolerance for the involution test.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Tag for the two matrices whose solution set is a single point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrivialInvolution {
    /// `A = I_n`.
    Identity,
    /// `A = -I_n`.
    NegIdentity,
}

/// Spectral decomposition of an involution: `(-1)^sign_flip * A = P D P⁻¹`
/// with `D = diag(I_p, -I_{n-p})` and `n <= 2p`.
#[derive(Debug, Clone)]
pub struct InvolutionDecomposition {
    n: usize,
    p: usize,
    p_mat: CMatrix,
    p_inv: CMatrix,
    sign_flip: bool,
    trivial: Option<TrivialInvolution>,
}

impl InvolutionDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the +1 eigenspace of the working matrix.
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn p_matrix(&self) -> &CMatrix {
        &self.p_mat
    }

    pub fn p_inverse(&self) -> &CMatrix {
        &self.p_inv
    }

    /// True when the decomposition is of `-A` rather than `A`.
    pub fn sign_flip(&self) -> bool {
        self.sign_flip
    }

    /// Set when `A = ±I_n`; such matrices admit only the solution `X = A`.
    pub fn trivial_case(&self) -> Option<TrivialInvolution> {
        self.trivial
    }

    /// The canonical form `D = diag(I_p, -I_{n-p})`.
    pub fn d_matrix(&self) -> CMatrix {
        CMatrix::two_block_diag(
            Complex64::new(1.0, 0.0),
            self.p,
            Complex64::new(-1.0, 0.0),
            self.n - self.p,
        )
    }

    /// Reconstructs the decomposed matrix `A = (-1)^sign_flip * P D P⁻¹`.
    pub fn matrix(&self) -> CMatrix {
        let a = self
            .p_mat
            .mul(&self.d_matrix())
            .and_then(|pd| pd.mul(&self.p_inv))
            .expect("decomposition blocks conform");
        if self.sign_flip {
            a.neg()
        } else {
            a
        }
    }
}

/// Tests `A^2 = I` and returns `(verdict, residual)` with
/// `residual = ‖A² - I‖_F / max(1, ‖A‖_F)`.
pub fn is_involution(a: &CMatrix, tol: f64) -> Result<(bool, f64)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let square = a.mul(a)?;
    let residual = square.identity_distance() / a.fro_norm().max(1.0);
    Ok((residual <= tol, residual))
}

/// Computes the spectral decomposition of an involution.
///
/// `±I` inputs are tagged [`TrivialInvolution`] and decomposed as `P = I`,
/// `p = n`. Otherwise the +1 and -1 eigenspace bases are the pivot columns of
/// the projectors `(I ± A_w) / 2`, where `A_w = ±A` is chosen so that
/// `n <= 2p` (ties keep `A` itself).
pub fn decompose_involution(a: &CMatrix, tol: f64) -> Result<InvolutionDecomposition> {
    let (ok, residual) = is_involution(a, tol)?;
    if !ok {
        return Err(Error::NotInvolutory { residual });
    }
    let n = a.rows();
    let scale = a.fro_norm().max(1.0);
    if a.identity_distance() <= tol * scale {
        return Ok(InvolutionDecomposition {
            n,
            p: n,
            p_mat: CMatrix::identity(n),
            p_inv: CMatrix::identity(n),
            sign_flip: false,
            trivial: Some(TrivialInvolution::Identity),
        });
    }
    if a.neg().identity_distance() <= tol * scale {
        return Ok(InvolutionDecomposition {
            n,
            p: n,
            p_mat: CMatrix::identity(n),
            p_inv: CMatrix::identity(n),
            sign_flip: true,
            trivial: Some(TrivialInvolution::NegIdentity),
        });
    }

    let identity = CMatrix::identity(n);
    let half = Complex64::new(0.5, 0.0);
    let proj_plus = identity.add(a)?.scale(half);
    let proj_minus = identity.sub(a)?.scale(half);
    let basis_plus = proj_plus.column_space_basis(tol);
    let basis_minus = proj_minus.column_space_basis(tol);
    let p_plus = basis_plus.cols();

    let (p, basis_pos, basis_neg, sign_flip) = if 2 * p_plus >= n {
        (p_plus, &basis_plus, &basis_minus, false)
    } else {
        // decompose -A: its +1 eigenspace is the -1 eigenspace of A
        (n - p_plus, &basis_minus, &basis_plus, true)
    };

    if basis_pos.cols() + basis_neg.cols() != n {
        return Err(Error::Inconsistent(format!(
            "eigenspace bases span {} + {} columns, expected {}",
            basis_pos.cols(),
            basis_neg.cols(),
            n
        )));
    }
    if p == 0 || p >= n {
        return Err(Error::Inconsistent(format!(
            "eigenspace split p = {p} out of range for non-scalar involution of size {n}"
        )));
    }

    let p_mat = CMatrix::hconcat(&[basis_pos, basis_neg])?;
    let p_inv = p_mat.inverse()?;
    Ok(InvolutionDecomposition {
        n,
        p,
        p_mat,
        p_inv,
        sign_flip,
        trivial: None,
    })
}
