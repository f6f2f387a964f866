//! Involutive solutions of the Yang-Baxter-like matrix equation
//! `A X A = X A X`.
//!
//! For an involutory matrix `A` (`A² = I`) this crate constructs, verifies
//! and classifies every involutory solution `X` of `A X A = X A X`:
//!
//! * [`matrix`] — dense complex matrices, LU-based inversion, Kronecker
//!   products, rank-revealing elimination, seeded random sampling;
//! * [`involution`] — the spectral decomposition `A = ±P diag(I_p, -I_{n-p}) P⁻¹`;
//! * [`quadratic`] — diagonalization of matrices annihilated by a quadratic;
//! * [`solver`] — the three solution constructions plus lifting and residual
//!   verification;
//! * [`classify`] — recovering the construction and parameters of a given
//!   solution;
//! * [`families`] — closed-form families at sizes 2 and 3;
//! * [`qybe`] — the tensor lift connecting to the quantum Yang-Baxter
//!   equation;
//! * [`oracle`] — independent brute-force checks used by the test suite and
//!   the CLI self-test.

pub mod classify;
pub mod error;
pub mod families;
pub mod involution;
pub mod matrix;
pub mod oracle;
pub mod qybe;
pub mod quadratic;
pub mod solver;

pub use classify::BlockIdentityReport;
pub use error::{Error, Result};
pub use families::FamilyPoint;
pub use involution::{InvolutionDecomposition, TrivialInvolution};
pub use matrix::CMatrix;
pub use num_complex::Complex64;
pub use quadratic::QuadraticSplit;
pub use solver::{ResidualReport, SolutionCase, SolutionParams};

/// Default tolerance for involution tests, solution verification and case
/// detection.
pub const DEFAULT_TOL: f64 = 1e-8;
