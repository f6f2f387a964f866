//! Construction of involutive solutions `Y` of `D Y D = Y D Y` for
//! `D = diag(I_p, -I_{n-p})`, and lifting them to solutions `X` of
//! `A X A = X A X` through an [`InvolutionDecomposition`].
//!
//! Besides the trivial solution `Y = D`, every solution falls into one of
//! three constructions, distinguished by the spectra of the diagonal blocks
//! `Y1` and `Y4`:
//!
//! * `alg1` (`n = 2p`): `Y1 = -I/2`, `Y4 = I/2`, off-diagonal blocks coupled
//!   through an arbitrary nonsingular `Y2`;
//! * `alg2` (`n - p < p`): `Y1` similar to `diag(-I_{n-p}/2, I_{2p-n})`,
//!   `Y4 = I/2`, freedom in a nonsingular `P1` and `B2`;
//! * `alg3` (`r < n - p`): both `Y1` and `Y4` non-scalar quadratic blocks,
//!   freedom in `P1`, `P4` and an `r x r` block `F1`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::block_identity_report;
use crate::error::{Error, Result};
use crate::involution::{decompose_involution, is_involution, InvolutionDecomposition};
use crate::matrix::{random_nonsingular_with, CMatrix};

/// Normalized residual above which a freshly assembled `Y` is rejected as
/// numerically unusable (parameters too close to singular).
const BUILD_CHECK_TOL: f64 = 1e-6;

/// Which construction to use when sampling a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionCase {
    Trivial,
    Alg1,
    Alg2,
    Alg3 { r: usize },
}

impl SolutionCase {
    pub fn name(&self) -> &'static str {
        match self {
            SolutionCase::Trivial => "trivial",
            SolutionCase::Alg1 => "alg1",
            SolutionCase::Alg2 => "alg2",
            SolutionCase::Alg3 { .. } => "alg3",
        }
    }
}

/// Parameters pinning down one constructed solution.
#[derive(Debug, Clone)]
pub enum SolutionParams {
    /// `Y = D` itself.
    Trivial,
    /// `Y2` is `p x p` nonsingular.
    Alg1 { y2: CMatrix },
    /// `P1` is `p x p`, `B2` is `(n-p) x (n-p)`, both nonsingular.
    Alg2 { p1: CMatrix, b2: CMatrix },
    /// `P1`, `P4`, `F1` nonsingular of sizes `p`, `n-p`, `r`.
    Alg3 {
        p1: CMatrix,
        p4: CMatrix,
        f1: CMatrix,
        r: usize,
    },
}

impl SolutionParams {
    pub fn case(&self) -> SolutionCase {
        match self {
            SolutionParams::Trivial => SolutionCase::Trivial,
            SolutionParams::Alg1 { .. } => SolutionCase::Alg1,
            SolutionParams::Alg2 { .. } => SolutionCase::Alg2,
            SolutionParams::Alg3 { r, .. } => SolutionCase::Alg3 { r: *r },
        }
    }

    /// Rebuilds `Y` for the `(n, p)` partition these parameters belong to.
    pub fn synthesize(&self, n: usize, p: usize) -> Result<CMatrix> {
        match self {
            SolutionParams::Trivial => build_y_trivial(n, p),
            SolutionParams::Alg1 { y2 } => {
                if n != 2 * p || y2.rows() != p {
                    return Err(Error::DimensionMismatch(format!(
                        "alg1 parameters sized for p = {}, not (n, p) = ({n}, {p})",
                        y2.rows()
                    )));
                }
                build_y_alg1(p, y2)
            }
            SolutionParams::Alg2 { p1, b2 } => {
                if p1.rows() != p || b2.rows() != n - p {
                    return Err(Error::DimensionMismatch(format!(
                        "alg2 parameters sized {} and {}, not (n, p) = ({n}, {p})",
                        p1.rows(),
                        b2.rows()
                    )));
                }
                build_y_alg2(n, p, p1, b2)
            }
            SolutionParams::Alg3 { p1, p4, f1, r } => {
                if p1.rows() != p || p4.rows() != n - p {
                    return Err(Error::DimensionMismatch(format!(
                        "alg3 parameters sized {} and {}, not (n, p) = ({n}, {p})",
                        p1.rows(),
                        p4.rows()
                    )));
                }
                build_y_alg3(n, p, *r, p1, p4, f1)
            }
        }
    }
}

/// Residual evidence that `X` solves `A X A = X A X` and is an involution.
#[derive(Debug, Clone, Copy)]
pub struct ResidualReport {
    /// `‖AXA - XAX‖_F / max(1, ‖A‖_F² ‖X‖_F)`.
    pub ybe_residual: f64,
    /// `‖X² - I‖_F / max(1, ‖X‖_F)`.
    pub involution_residual: f64,
    /// `|tr X - tr A|`; similar matrices share traces.
    pub trace_gap: f64,
    /// Largest residual over the block identities of the pulled-back `Y`.
    pub max_block_identity_residual: f64,
}

impl ResidualReport {
    /// True when both defining residuals are at most `tol`.
    pub fn is_solution(&self, tol: f64) -> bool {
        self.ybe_residual <= tol && self.involution_residual <= tol
    }
}

impl std::fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "yang-baxter residual:     {:.17e}", self.ybe_residual)?;
        writeln!(f, "involution residual:      {:.17e}", self.involution_residual)?;
        writeln!(f, "trace gap:                {:.17e}", self.trace_gap)?;
        write!(
            f,
            "max block identity resid: {:.17e}",
            self.max_block_identity_residual
        )
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The trivial solution `Y = D = diag(I_p, -I_{n-p})`.
pub fn build_y_trivial(n: usize, p: usize) -> Result<CMatrix> {
    check_partition(n, p)?;
    Ok(CMatrix::two_block_diag(real(1.0), p, real(-1.0), n - p))
}

/// Solution with `Y1 = -I_p/2` (forces `n = 2p`):
///
/// ```text
///     [ -1/2 I_p      Y2     ]
/// Y = [ 3/4 Y2⁻¹    1/2 I_p  ]
/// ```
pub fn build_y_alg1(p: usize, y2: &CMatrix) -> Result<CMatrix> {
    if p == 0 {
        return Err(Error::BadPartition { n: 0, p });
    }
    if y2.rows() != p || y2.cols() != p {
        return Err(Error::DimensionMismatch(format!(
            "Y2 must be {p}x{p}, got {}x{}",
            y2.rows(),
            y2.cols()
        )));
    }
    let y2_inv = y2.inverse()?;
    let y1 = CMatrix::two_block_diag(real(-0.5), p, real(0.0), 0);
    let y4 = CMatrix::two_block_diag(real(0.5), p, real(0.0), 0);
    let y3 = y2_inv.scale(real(0.75));
    let y = CMatrix::from_block_2x2(&y1, y2, &y3, &y4)?;
    check_built_solution(&y, p)?;
    Ok(y)
}

/// Solution with `Y1` non-scalar and `Y4 = I/2` (needs `1 <= n-p < p`):
///
/// ```text
/// Y1 = P1 diag(-1/2 I_{n-p}, I_{2p-n}) P1⁻¹      Y2 = P1 [B2; 0]
/// Y3 = [3/4 B2⁻¹, 0] P1⁻¹                        Y4 = 1/2 I_{n-p}
/// ```
pub fn build_y_alg2(n: usize, p: usize, p1: &CMatrix, b2: &CMatrix) -> Result<CMatrix> {
    check_partition(n, p)?;
    let q = n - p;
    if q >= p {
        return Err(Error::InadmissibleCase {
            requested: "alg2".into(),
            admissible: admissible_cases(n, p),
        });
    }
    if p1.rows() != p || p1.cols() != p {
        return Err(Error::DimensionMismatch(format!(
            "P1 must be {p}x{p}, got {}x{}",
            p1.rows(),
            p1.cols()
        )));
    }
    if b2.rows() != q || b2.cols() != q {
        return Err(Error::DimensionMismatch(format!(
            "B2 must be {q}x{q}, got {}x{}",
            b2.rows(),
            b2.cols()
        )));
    }
    let p1_inv = p1.inverse()?;
    let b2_inv = b2.inverse()?;

    let d1 = CMatrix::two_block_diag(real(-0.5), q, real(1.0), p - q);
    let y1 = p1.mul(&d1)?.mul(&p1_inv)?;

    let mut y2_hat = CMatrix::zeros(p, q);
    y2_hat.place(b2, 0, 0);
    let y2 = p1.mul(&y2_hat)?;

    let mut y3_hat = CMatrix::zeros(q, p);
    y3_hat.place(&b2_inv.scale(real(0.75)), 0, 0);
    let y3 = y3_hat.mul(&p1_inv)?;

    let y4 = CMatrix::two_block_diag(real(0.5), q, real(0.0), 0);
    let y = CMatrix::from_block_2x2(&y1, &y2, &y3, &y4)?;
    check_built_solution(&y, p)?;
    Ok(y)
}

/// Solution with both `Y1` and `Y4` non-scalar (needs `1 <= r < n-p <= p`):
///
/// ```text
/// Y1 = P1 diag(-1/2 I_r, I_{p-r}) P1⁻¹           Y2 = P1 diag(F1, 0) P4⁻¹
/// Y3 = P4 diag(3/4 F1⁻¹, 0) P1⁻¹                 Y4 = P4 diag(1/2 I_r, -I_{n-p-r}) P4⁻¹
/// ```
pub fn build_y_alg3(
    n: usize,
    p: usize,
    r: usize,
    p1: &CMatrix,
    p4: &CMatrix,
    f1: &CMatrix,
) -> Result<CMatrix> {
    check_partition(n, p)?;
    let q = n - p;
    if r == 0 || r >= q {
        return Err(Error::InadmissibleCase {
            requested: format!("alg3 with r = {r}"),
            admissible: admissible_cases(n, p),
        });
    }
    if p1.rows() != p || p1.cols() != p {
        return Err(Error::DimensionMismatch(format!(
            "P1 must be {p}x{p}, got {}x{}",
            p1.rows(),
            p1.cols()
        )));
    }
    if p4.rows() != q || p4.cols() != q {
        return Err(Error::DimensionMismatch(format!(
            "P4 must be {q}x{q}, got {}x{}",
            p4.rows(),
            p4.cols()
        )));
    }
    if f1.rows() != r || f1.cols() != r {
        return Err(Error::DimensionMismatch(format!(
            "F1 must be {r}x{r}, got {}x{}",
            f1.rows(),
            f1.cols()
        )));
    }
    let p1_inv = p1.inverse()?;
    let p4_inv = p4.inverse()?;
    let f1_inv = f1.inverse()?;

    let d1 = CMatrix::two_block_diag(real(-0.5), r, real(1.0), p - r);
    let y1 = p1.mul(&d1)?.mul(&p1_inv)?;

    let mut y2_hat = CMatrix::zeros(p, q);
    y2_hat.place(f1, 0, 0);
    let y2 = p1.mul(&y2_hat)?.mul(&p4_inv)?;

    let mut y3_hat = CMatrix::zeros(q, p);
    y3_hat.place(&f1_inv.scale(real(0.75)), 0, 0);
    let y3 = p4.mul(&y3_hat)?.mul(&p1_inv)?;

    let d4 = CMatrix::two_block_diag(real(0.5), r, real(-1.0), q - r);
    let y4 = p4.mul(&d4)?.mul(&p4_inv)?;

    let y = CMatrix::from_block_2x2(&y1, &y2, &y3, &y4)?;
    check_built_solution(&y, p)?;
    Ok(y)
}

/// Conjugates a solution of the canonical form back to the original matrix:
/// `X = ±P Y P⁻¹`, negated when the decomposition carries a sign flip.
pub fn lift_solution(dec: &InvolutionDecomposition, y: &CMatrix) -> Result<CMatrix> {
    if y.rows() != dec.n() || y.cols() != dec.n() {
        return Err(Error::DimensionMismatch(format!(
            "Y must be {0}x{0}, got {1}x{2}",
            dec.n(),
            y.rows(),
            y.cols()
        )));
    }
    let x = dec.p_matrix().mul(y)?.mul(dec.p_inverse())?;
    Ok(if dec.sign_flip() { x.neg() } else { x })
}

/// Full residual report for a candidate pair `(A, X)`.
///
/// `A` must be an involution within `tol`; the block identities are evaluated
/// on the pull-back `Y = ±P⁻¹ X P` of its decomposition.
pub fn verify_solution(a: &CMatrix, x: &CMatrix, tol: f64) -> Result<ResidualReport> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != x.rows() || a.cols() != x.cols() {
        return Err(Error::DimensionMismatch(format!(
            "A is {}x{}, X is {}x{}",
            a.rows(),
            a.cols(),
            x.rows(),
            x.cols()
        )));
    }
    let dec = decompose_involution(a, tol)?;
    report_against(a, &dec, x)
}

/// [`verify_solution`] against an already computed decomposition.
pub fn verify_solution_with(dec: &InvolutionDecomposition, x: &CMatrix) -> Result<ResidualReport> {
    let a = dec.matrix();
    if x.rows() != dec.n() || x.cols() != dec.n() {
        return Err(Error::DimensionMismatch(format!(
            "X must be {0}x{0}, got {1}x{2}",
            dec.n(),
            x.rows(),
            x.cols()
        )));
    }
    report_against(&a, dec, x)
}

fn report_against(
    a: &CMatrix,
    dec: &InvolutionDecomposition,
    x: &CMatrix,
) -> Result<ResidualReport> {
    let axa = a.mul(x)?.mul(a)?;
    let xax = x.mul(a)?.mul(x)?;
    let a_norm = a.fro_norm();
    let x_norm = x.fro_norm();
    let ybe_residual = axa.sub(&xax)?.fro_norm() / (a_norm * a_norm * x_norm).max(1.0);

    let involution_residual = x.mul(x)?.identity_distance() / x_norm.max(1.0);
    let trace_gap = (x.trace() - a.trace()).norm();

    let y = pull_back(dec, x)?;
    let report = block_identity_report(&y, dec.p())?;
    let max_block_identity_residual = report.max_residual();

    Ok(ResidualReport {
        ybe_residual,
        involution_residual,
        trace_gap,
        max_block_identity_residual,
    })
}

/// `Y = (-1)^sign_flip P⁻¹ X P`: the candidate in canonical coordinates.
pub(crate) fn pull_back(dec: &InvolutionDecomposition, x: &CMatrix) -> Result<CMatrix> {
    let y = dec.p_inverse().mul(x)?.mul(dec.p_matrix())?;
    Ok(if dec.sign_flip() { y.neg() } else { y })
}

/// Draws parameters for the requested case, builds `Y` and lifts it.
///
/// Parameter matrices are drawn in declaration order from a ChaCha8 stream
/// seeded with `seed`, each through the conditioned rejection loop of
/// [`crate::matrix::random_nonsingular`]; the result is deterministic per
/// seed.
pub fn sample_solution(
    dec: &InvolutionDecomposition,
    case: SolutionCase,
    seed: u64,
) -> Result<(SolutionParams, CMatrix)> {
    if dec.trivial_case().is_some() {
        return Err(Error::InadmissibleCase {
            requested: case.name().into(),
            admissible: "A = ±I admits only the trivial solution X = A".into(),
        });
    }
    let n = dec.n();
    let p = dec.p();
    let q = n - p;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let params = match case {
        SolutionCase::Trivial => SolutionParams::Trivial,
        SolutionCase::Alg1 => {
            if n != 2 * p {
                return Err(Error::InadmissibleCase {
                    requested: "alg1".into(),
                    admissible: admissible_cases(n, p),
                });
            }
            SolutionParams::Alg1 {
                y2: random_nonsingular_with(p, &mut rng)?,
            }
        }
        SolutionCase::Alg2 => {
            if q == 0 || q >= p {
                return Err(Error::InadmissibleCase {
                    requested: "alg2".into(),
                    admissible: admissible_cases(n, p),
                });
            }
            SolutionParams::Alg2 {
                p1: random_nonsingular_with(p, &mut rng)?,
                b2: random_nonsingular_with(q, &mut rng)?,
            }
        }
        SolutionCase::Alg3 { r } => {
            if r == 0 || r >= q {
                return Err(Error::InadmissibleCase {
                    requested: format!("alg3 with r = {r}"),
                    admissible: admissible_cases(n, p),
                });
            }
            SolutionParams::Alg3 {
                p1: random_nonsingular_with(p, &mut rng)?,
                p4: random_nonsingular_with(q, &mut rng)?,
                f1: random_nonsingular_with(r, &mut rng)?,
                r,
            }
        }
    };
    let y = params.synthesize(n, p)?;
    let x = lift_solution(dec, &y)?;
    Ok((params, x))
}

/// Human-readable list of the cases available at this `(n, p)`.
pub fn admissible_cases(n: usize, p: usize) -> String {
    let mut cases = vec!["trivial".to_string()];
    if n == 2 * p {
        cases.push("alg1 (requires n = 2p)".into());
    }
    if n - p >= 1 && n - p < p {
        cases.push("alg2 (requires 1 <= n-p < p)".into());
    }
    if n - p >= 2 {
        cases.push(format!(
            "alg3 with 1 <= r < {} (requires 1 <= r < n-p <= p)",
            n - p
        ));
    }
    format!("admissible for (n, p) = ({n}, {p}): {}", cases.join(", "))
}

fn check_partition(n: usize, p: usize) -> Result<()> {
    if p == 0 || p >= n || n > 2 * p {
        return Err(Error::BadPartition { n, p });
    }
    Ok(())
}

/// Rejects assembled solutions whose residuals blew up, which only happens
/// for parameters within a hair of singularity.
fn check_built_solution(y: &CMatrix, p: usize) -> Result<()> {
    let report = block_identity_report(y, p)?;
    let max = report.max_residual();
    if max > BUILD_CHECK_TOL {
        return Err(Error::Inconsistent(format!(
            "assembled Y violates its defining identities (max residual {max:.3e}); \
             parameters are too ill-conditioned"
        )));
    }
    let (ok, _) = is_involution(y, BUILD_CHECK_TOL)?;
    if !ok {
        return Err(Error::Inconsistent(
            "assembled Y is not an involution at working precision".into(),
        ));
    }
    Ok(())
}
