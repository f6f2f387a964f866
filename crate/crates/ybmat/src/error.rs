//! Crate-wide error type.

use std::fmt;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes are incompatible for the requested operation.
    DimensionMismatch(String),
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// Entry count does not match `rows * cols`.
    EntryCountMismatch { expected: usize, got: usize },
    /// A NaN or infinite entry was supplied at construction.
    NonFiniteEntry { row: usize, col: usize },
    /// LU factorization found a pivot below the singularity threshold.
    Singular { smallest_pivot: f64 },
    /// The matrix fails the involution test `A^2 = I` at the given tolerance.
    NotInvolutory { residual: f64 },
    /// The matrix fails the quadratic test `(M - aI)(M - bI) = 0`.
    NotQuadratic { residual: f64 },
    /// `diagonalize_quadratic` needs two distinct scalars.
    EqualRoots,
    /// The block partition parameter is out of range.
    BadPartition { n: usize, p: usize },
    /// A parameter value is rejected (zero denominator, bad size, ...).
    InvalidParameter(String),
    /// The requested construction is not available for these dimensions.
    InadmissibleCase { requested: String, admissible: String },
    /// The candidate matrix is not a solution at the given tolerance.
    NotASolution {
        ybe_residual: f64,
        involution_residual: f64,
    },
    /// An internal cross-check failed; carries the violated identity.
    Inconsistent(String),
    /// The guarded random sampler ran out of attempts.
    RandomGenerationFailed { attempts: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::EntryCountMismatch { expected, got } => {
                write!(f, "entry count mismatch: expected {expected}, got {got}")
            }
            Error::NonFiniteEntry { row, col } => {
                write!(f, "non-finite entry at ({row}, {col})")
            }
            Error::Singular { smallest_pivot } => {
                write!(f, "matrix is singular to working precision (smallest pivot {smallest_pivot:.3e})")
            }
            Error::NotInvolutory { residual } => {
                write!(f, "matrix is not an involution (residual {residual:.3e})")
            }
            Error::NotQuadratic { residual } => {
                write!(f, "matrix does not satisfy the quadratic identity (residual {residual:.3e})")
            }
            Error::EqualRoots => write!(f, "the two scalars must be distinct"),
            Error::BadPartition { n, p } => {
                write!(f, "invalid block partition: p = {p} for n = {n}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::InadmissibleCase { requested, admissible } => {
                write!(f, "case {requested} is not admissible here; {admissible}")
            }
            Error::NotASolution { ybe_residual, involution_residual } => {
                write!(
                    f,
                    "not a solution: yang-baxter residual {ybe_residual:.3e}, involution residual {involution_residual:.3e}"
                )
            }
            Error::Inconsistent(msg) => write!(f, "internal consistency check failed: {msg}"),
            Error::RandomGenerationFailed { attempts } => {
                write!(f, "no well-conditioned sample found in {attempts} attempts")
            }
        }
    }
}

impl std::error::Error for Error {}
