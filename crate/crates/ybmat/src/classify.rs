//! Case recovery: given an involutive solution `X` of `A X A = X A X`,
//! decide which construction produced it and extract its parameters.
//!
//! This is the inverse of the solver. The candidate is pulled back to
//! canonical coordinates, its diagonal blocks are tested against their three
//! possible spectra (`Y1` equal to `I`, equal to `-I/2`, or mixed), and the
//! free parameters are read off the off-diagonal blocks. Recovered parameters
//! always re-synthesize the input; that cross-check is part of the call.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::involution::InvolutionDecomposition;
use crate::matrix::CMatrix;
use crate::quadratic::diagonalize_quadratic;
use crate::solver::{lift_solution, pull_back, verify_solution_with, SolutionParams};

/// Bound on `‖resynthesized - X‖_F / max(1, ‖X‖_F)` accepted when checking
/// recovered parameters. Looser than the case-detection tolerance because two
/// conjugation round-trips accumulate error.
const RESYNTHESIS_TOL: f64 = 1e-6;

/// Residuals of the identities tying the blocks of `Y = [Y1 Y2; Y3 Y4]` to
/// the canonical form `D = diag(I_p, -I_{n-p})`.
///
/// The first group restates `D Y D = Y D Y` blockwise, the second `Y² = I`,
/// and the third holds the derived quadratic and coupling identities that are
/// jointly equivalent to the first two. Every residual is normalized by
/// `max(1, ‖Y‖_F²)`.
#[derive(Debug, Clone, Copy)]
pub struct BlockIdentityReport {
    /// `‖Y1² - Y1 - Y2 Y3‖`
    pub braid_y1: f64,
    /// `‖Y4² + Y4 - Y3 Y2‖`
    pub braid_y4: f64,
    /// `‖(Y1 + I) Y2 - Y2 Y4‖`
    pub braid_y2: f64,
    /// `‖Y3 (Y1 + I) - Y4 Y3‖`
    pub braid_y3: f64,
    /// `‖I - Y1² - Y2 Y3‖`
    pub involution_y1: f64,
    /// `‖I - Y4² - Y3 Y2‖`
    pub involution_y4: f64,
    /// `‖Y1 Y2 + Y2 Y4‖`
    pub involution_y2: f64,
    /// `‖Y3 Y1 + Y4 Y3‖`
    pub involution_y3: f64,
    /// `‖(2 Y1 + I)(Y1 - I)‖`
    pub quadratic_y1: f64,
    /// `‖(2 Y4 - I)(Y4 + I)‖`
    pub quadratic_y4: f64,
    /// `‖(2 Y1 + I) Y2‖`
    pub annihilator_y2: f64,
    /// `‖Y3 (2 Y1 + I)‖`
    pub annihilator_y3: f64,
    /// `‖I - Y1 - 2 Y2 Y3‖`
    pub coupling_y1: f64,
    /// `‖I + Y4 - 2 Y3 Y2‖`
    pub coupling_y4: f64,
}

impl BlockIdentityReport {
    /// Largest of the fourteen residuals.
    pub fn max_residual(&self) -> f64 {
        [
            self.braid_y1,
            self.braid_y4,
            self.braid_y2,
            self.braid_y3,
            self.involution_y1,
            self.involution_y4,
            self.involution_y2,
            self.involution_y3,
            self.quadratic_y1,
            self.quadratic_y4,
            self.annihilator_y2,
            self.annihilator_y3,
            self.coupling_y1,
            self.coupling_y4,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Evaluates every block identity residual for the partition at `p`.
///
/// Requires `1 <= p < n`; see [`block_identity_report`] for the internal
/// variant that also accepts the degenerate `p = n` split.
pub fn check_block_identities(y: &CMatrix, p: usize) -> Result<BlockIdentityReport> {
    if p == 0 || p >= y.rows() {
        return Err(Error::BadPartition { n: y.rows(), p });
    }
    block_identity_report(y, p)
}

/// [`check_block_identities`] extended to `p = n`, where the off-diagonal
/// blocks are empty and the identities collapse to `Y1 = I`.
pub(crate) fn block_identity_report(y: &CMatrix, p: usize) -> Result<BlockIdentityReport> {
    if !y.is_square() {
        return Err(Error::NotSquare {
            rows: y.rows(),
            cols: y.cols(),
        });
    }
    let n = y.rows();
    if p == 0 || p > n {
        return Err(Error::BadPartition { n, p });
    }
    let q = n - p;
    let y1 = y.submatrix(0, p, 0, p);
    let y2 = y.submatrix(0, p, p, n);
    let y3 = y.submatrix(p, n, 0, p);
    let y4 = y.submatrix(p, n, p, n);
    let eye_p = CMatrix::identity(p);
    let eye_q = CMatrix::identity(q);

    let norm = y.fro_norm();
    let scale = (norm * norm).max(1.0);
    let res = |m: CMatrix| m.fro_norm() / scale;

    let y1_sq = y1.mul(&y1)?;
    let y4_sq = y4.mul(&y4)?;
    let y2y3 = y2.mul(&y3)?;
    let y3y2 = y3.mul(&y2)?;
    let two_y1_plus = y1.scale(real(2.0)).add(&eye_p)?;

    Ok(BlockIdentityReport {
        braid_y1: res(y1_sq.sub(&y1)?.sub(&y2y3)?),
        braid_y4: res(y4_sq.add(&y4)?.sub(&y3y2)?),
        braid_y2: res(y1.add(&eye_p)?.mul(&y2)?.sub(&y2.mul(&y4)?)?),
        braid_y3: res(y3.mul(&y1.add(&eye_p)?)?.sub(&y4.mul(&y3)?)?),
        involution_y1: res(eye_p.sub(&y1_sq)?.sub(&y2y3)?),
        involution_y4: res(eye_q.sub(&y4_sq)?.sub(&y3y2)?),
        involution_y2: res(y1.mul(&y2)?.add(&y2.mul(&y4)?)?),
        involution_y3: res(y3.mul(&y1)?.add(&y4.mul(&y3)?)?),
        quadratic_y1: res(two_y1_plus.mul(&y1.sub(&eye_p)?)?),
        quadratic_y4: res(
            y4.scale(real(2.0))
                .sub(&eye_q)?
                .mul(&y4.add(&eye_q)?)?,
        ),
        annihilator_y2: res(two_y1_plus.mul(&y2)?),
        annihilator_y3: res(y3.mul(&two_y1_plus)?),
        coupling_y1: res(eye_p.sub(&y1)?.sub(&y2y3.scale(real(2.0)))?),
        coupling_y4: res(eye_q.add(&y4)?.sub(&y3y2.scale(real(2.0)))?),
    })
}

/// Recovers the construction case and parameters of a verified solution.
///
/// Branch order: `Y1 = I` (the trivial solution is the only one), then
/// `Y1 = -I/2`, then the mixed-spectrum constructions. The recovered
/// parameters are re-synthesized and compared against `x` before returning.
pub fn classify_solution(
    dec: &InvolutionDecomposition,
    x: &CMatrix,
    tol: f64,
) -> Result<SolutionParams> {
    let report = verify_solution_with(dec, x)?;
    if !report.is_solution(tol) {
        return Err(Error::NotASolution {
            ybe_residual: report.ybe_residual,
            involution_residual: report.involution_residual,
        });
    }
    if dec.trivial_case().is_some() {
        return Ok(SolutionParams::Trivial);
    }

    let n = dec.n();
    let p = dec.p();
    let q = n - p;
    let y = pull_back(dec, x)?;
    let y1 = y.submatrix(0, p, 0, p);
    let y2 = y.submatrix(0, p, p, n);
    let y4 = y.submatrix(p, n, p, n);
    let scale = y.fro_norm().max(1.0);
    let eye_p = CMatrix::identity(p);
    let half = real(0.5);

    let params = if y1.sub(&eye_p)?.fro_norm() <= tol * scale {
        // Y1 = I forces Y = D
        let d = dec.d_matrix();
        if y.sub(&d)?.fro_norm() > tol * scale {
            return Err(Error::Inconsistent(
                "Y1 = I admits only the trivial solution Y = D, but Y differs from D".into(),
            ));
        }
        SolutionParams::Trivial
    } else if y1.add(&eye_p.scale(half))?.fro_norm() <= tol * scale {
        // Y1 = -I/2 forces n = 2p and Y4 = I/2
        if n != 2 * p {
            return Err(Error::Inconsistent(format!(
                "Y1 = -I/2 forces n = 2p, but (n, p) = ({n}, {p})"
            )));
        }
        if y4.sub(&CMatrix::identity(q).scale(half))?.fro_norm() > tol * scale {
            return Err(Error::Inconsistent(
                "Y1 = -I/2 forces Y4 = I/2, but Y4 deviates".into(),
            ));
        }
        SolutionParams::Alg1 { y2 }
    } else {
        // mixed spectrum: split Y1 into its -1/2 and 1 eigenspaces
        let split1 = diagonalize_quadratic(&y1, real(-0.5), real(1.0), tol)?;
        let r = split1.k();
        if r == 0 || r >= p {
            return Err(Error::Inconsistent(format!(
                "mixed-case Y1 must carry both eigenvalues, found multiplicity {r} of -1/2"
            )));
        }
        if y4.sub(&CMatrix::identity(q).scale(half))?.fro_norm() <= tol * scale {
            // Y4 = I/2 forces r = n - p
            if r != q {
                return Err(Error::Inconsistent(format!(
                    "Y4 = I/2 forces the -1/2 multiplicity of Y1 to equal n - p = {q}, got {r}"
                )));
            }
            let b2 = split1.p_inverse().mul(&y2)?.submatrix(0, q, 0, q);
            SolutionParams::Alg2 {
                p1: split1.p_matrix().clone(),
                b2,
            }
        } else {
            let split4 = diagonalize_quadratic(&y4, real(0.5), real(-1.0), tol)?;
            let s = split4.k();
            if s != r {
                return Err(Error::Inconsistent(format!(
                    "the trace identity forces equal split sizes in Y1 and Y4, got {r} and {s}"
                )));
            }
            if r >= q {
                return Err(Error::Inconsistent(format!(
                    "mixed Y4 requires r < n - p, got r = {r}, n - p = {q}"
                )));
            }
            let f1 = split1
                .p_inverse()
                .mul(&y2)?
                .mul(split4.p_matrix())?
                .submatrix(0, r, 0, r);
            SolutionParams::Alg3 {
                p1: split1.p_matrix().clone(),
                p4: split4.p_matrix().clone(),
                f1,
                r,
            }
        }
    };

    // recovered parameters must reproduce the input
    let resynth = lift_solution(dec, &params.synthesize(n, p)?)?;
    let err = resynth.sub(x)?.fro_norm() / x.fro_norm().max(1.0);
    if err > RESYNTHESIS_TOL {
        return Err(Error::Inconsistent(format!(
            "recovered parameters re-synthesize with residual {err:.3e}"
        )));
    }
    Ok(params)
}
