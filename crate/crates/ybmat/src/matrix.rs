//! Dense complex matrices and the factorizations the rest of the crate builds on.
//!
//! Storage is row-major `Vec<Complex64>` with explicit dimensions. Everything
//! here is sized for matrices up to a few hundred rows; the implementations are
//! plain loops, not BLAS.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A pivot smaller than this fraction of the largest pivot makes the LU
/// factorization singular to working precision.
pub(crate) const SINGULAR_PIVOT_RATIO: f64 = 1e-12;

/// Default relative threshold for numerical rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Smallest acceptable `min_pivot / max(1, max_pivot)` for random draws.
const CONDITION_GUARD: f64 = 1e-3;

/// Attempt bound for the guarded random sampler.
const MAX_DRAW_ATTEMPTS: usize = 100;

/// Dense complex matrix with row-major storage.
///
/// Values are immutable once built; the mutating helpers (`set`, `place`) are
/// meant for construction only. Zero-row or zero-column matrices are legal and
/// show up as empty blocks and rank-zero bases.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl CMatrix {
    /// Builds a matrix from row-major entries, validating length and finiteness.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCountMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for (idx, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                let col = if cols == 0 { 0 } else { idx % cols };
                let row = if cols == 0 { 0 } else { idx / cols };
                return Err(Error::NonFiniteEntry { row, col });
            }
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from complex rows of equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("rows have unequal lengths".into()));
        }
        Self::new(r, c, rows.concat())
    }

    /// Builds a real matrix from rows of `f64`.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from the given diagonal values.
    pub fn diag(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * n + i] = v;
        }
        m
    }

    /// `diag(alpha I_k, beta I_m)` of size `(k + m) x (k + m)`.
    pub(crate) fn two_block_diag(alpha: Complex64, k: usize, beta: Complex64, m: usize) -> Self {
        let mut values = vec![alpha; k];
        values.extend(std::iter::repeat(beta).take(m));
        Self::diag(&values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Entry accessor. Panics when the index is out of range.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        self.entries[i * self.cols + j]
    }

    /// Entry setter for construction. Panics on out-of-range indices or
    /// non-finite values.
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        assert!(
            value.re.is_finite() && value.im.is_finite(),
            "non-finite entry at ({i}, {j})"
        );
        self.entries[i * self.cols + j] = value;
    }

    /// Sum of diagonal entries. Panics when the matrix is not square.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.entries[i * self.cols + i]).sum()
    }

    /// Frobenius norm: square root of the sum of squared entry moduli.
    pub fn fro_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius distance to the identity. Panics when not square.
    pub(crate) fn identity_distance(&self) -> f64 {
        assert!(self.is_square());
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let mut d = self.entries[i * self.cols + j];
                if i == j {
                    d -= Complex64::new(1.0, 0.0);
                }
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.entries[i * self.cols + k];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += aik * other.entries[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product: the block matrix whose `(i, j)` block is
    /// `self[i, j] * other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let factor = self.entries[i * self.cols + j];
                for r in 0..other.rows {
                    for c in 0..other.cols {
                        out.entries[(i * other.rows + r) * cols + (j * other.cols + c)] =
                            factor * other.entries[r * other.cols + c];
                    }
                }
            }
        }
        out
    }

    /// Inverse via LU factorization with row pivoting.
    ///
    /// Declares the matrix singular when the smallest pivot falls below
    /// `1e-12` times the largest pivot; the error carries the smallest pivot
    /// magnitude.
    pub fn inverse(&self) -> Result<Self> {
        let lu = LuFactors::compute(self)?;
        if lu.is_singular() {
            return Err(Error::Singular {
                smallest_pivot: lu.min_pivot,
            });
        }
        Ok(lu.solve_identity())
    }

    /// Basis of the numerical column space, by Gaussian elimination with
    /// complete (column-selecting) pivoting.
    ///
    /// Pivots are accepted while they exceed `tol` times the largest pivot
    /// seen; the basis consists of the pivot columns of the original matrix,
    /// in column order, each scaled to unit Euclidean length. A rank-zero
    /// input yields a matrix with zero columns.
    pub fn column_space_basis(&self, tol: f64) -> Self {
        let m = self.rows;
        let n = self.cols;
        let mut work = self.entries.clone();
        let mut col_used = vec![false; n];
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut largest = 0.0_f64;

        let steps = m.min(n);
        for step in 0..steps {
            // pivot search over remaining rows and unused columns
            let mut best = 0.0_f64;
            let (mut bi, mut bj) = (step, 0);
            for j in 0..n {
                if col_used[j] {
                    continue;
                }
                for (i, row) in work.chunks_exact(n).enumerate().skip(step) {
                    let mag = row[j].norm();
                    if mag > best {
                        best = mag;
                        bi = i;
                        bj = j;
                    }
                }
            }
            largest = largest.max(best);
            if best <= tol * largest {
                break;
            }
            if bi != step {
                for j in 0..n {
                    work.swap(step * n + j, bi * n + j);
                }
            }
            col_used[bj] = true;
            pivot_cols.push(bj);
            let pivot = work[step * n + bj];
            for i in (step + 1)..m {
                let factor = work[i * n + bj] / pivot;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let above = work[step * n + j];
                    work[i * n + j] -= factor * above;
                }
                work[i * n + bj] = Complex64::new(0.0, 0.0);
            }
        }

        pivot_cols.sort_unstable();
        let mut basis = Self::zeros(m, pivot_cols.len());
        for (out_j, &j) in pivot_cols.iter().enumerate() {
            let mut norm = 0.0;
            for i in 0..m {
                norm += self.entries[i * n + j].norm_sqr();
            }
            let norm = norm.sqrt();
            for i in 0..m {
                basis.entries[i * pivot_cols.len() + out_j] = self.entries[i * n + j] / norm;
            }
        }
        basis
    }

    /// Copy of the half-open block `rows r0..r1`, `cols c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.entries[(i - r0) * (c1 - c0) + (j - c0)] = self.entries[i * self.cols + j];
            }
        }
        out
    }

    /// Horizontal concatenation of blocks with equal row counts.
    pub fn hconcat(blocks: &[&Self]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::DimensionMismatch(
                "hconcat blocks have unequal row counts".into(),
            ));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for block in blocks {
            for i in 0..rows {
                for j in 0..block.cols {
                    out.entries[i * cols + offset + j] = block.entries[i * block.cols + j];
                }
            }
            offset += block.cols;
        }
        Ok(out)
    }

    /// Writes `block` into `self` with its top-left corner at `(row, col)`.
    /// Panics when the block does not fit.
    pub fn place(&mut self, block: &Self, row: usize, col: usize) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(row + i) * self.cols + (col + j)] =
                    block.entries[i * block.cols + j];
            }
        }
    }

    /// Assembles `[[a, b], [c, d]]` from conforming blocks.
    pub fn from_block_2x2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch(
                "2x2 block layout does not conform".into(),
            ));
        }
        let mut out = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        out.place(a, 0, 0);
        out.place(b, 0, a.cols);
        out.place(c, a.rows, 0);
        out.place(d, a.rows, a.cols);
        Ok(out)
    }
}

impl std::fmt::Display for CMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self.entries[i * self.cols + j];
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:+.6e}{:+.6e}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// LU factorization with partial (row) pivoting, `P A = L U`.
pub(crate) struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    pub(crate) min_pivot: f64,
    pub(crate) max_pivot: f64,
}

impl LuFactors {
    pub(crate) fn compute(a: &CMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows,
                cols: a.cols,
            });
        }
        let n = a.rows;
        let mut lu = a.entries.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut min_pivot = f64::INFINITY;
        let mut max_pivot = 0.0_f64;

        for k in 0..n {
            let mut best = lu[k * n + k].norm();
            let mut best_row = k;
            for i in (k + 1)..n {
                let mag = lu[i * n + k].norm();
                if mag > best {
                    best = mag;
                    best_row = i;
                }
            }
            min_pivot = min_pivot.min(best);
            max_pivot = max_pivot.max(best);
            if best == 0.0 {
                // exactly singular; leave the trailing block untouched
                min_pivot = 0.0;
                break;
            }
            if best_row != k {
                perm.swap(k, best_row);
                for j in 0..n {
                    lu.swap(k * n + j, best_row * n + j);
                }
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in (k + 1)..n {
                    let above = lu[k * n + j];
                    lu[i * n + j] -= factor * above;
                }
            }
        }
        if n == 0 {
            min_pivot = 0.0;
        }

        Ok(Self {
            n,
            lu,
            perm,
            min_pivot,
            max_pivot,
        })
    }

    pub(crate) fn is_singular(&self) -> bool {
        self.max_pivot == 0.0 || self.min_pivot < SINGULAR_PIVOT_RATIO * self.max_pivot
    }

    /// Conditioning proxy used by the guarded random sampler.
    pub(crate) fn pivot_ratio(&self) -> f64 {
        self.min_pivot / self.max_pivot.max(1.0)
    }

    /// Solves `A X = I`, i.e. computes the inverse.
    fn solve_identity(&self) -> CMatrix {
        let n = self.n;
        let mut inv = CMatrix::zeros(n, n);
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for rhs in 0..n {
            // permuted unit vector, then forward and back substitution
            for i in 0..n {
                col[i] = if self.perm[i] == rhs {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
            }
            for i in 1..n {
                let mut acc = col[i];
                for j in 0..i {
                    acc -= self.lu[i * n + j] * col[j];
                }
                col[i] = acc;
            }
            for i in (0..n).rev() {
                let mut acc = col[i];
                for j in (i + 1)..n {
                    acc -= self.lu[i * n + j] * col[j];
                }
                col[i] = acc / self.lu[i * n + i];
            }
            for i in 0..n {
                inv.set(i, rhs, col[i]);
            }
        }
        inv
    }
}

/// Deterministic random nonsingular matrix for a given seed.
///
/// Entries have real and imaginary parts uniform in `[-1, 1]`; draws are
/// rejected until the LU pivot ratio `min / max(1, max)` exceeds `1e-3`, and
/// the loop gives up after 100 attempts.
pub fn random_nonsingular(n: usize, seed: u64) -> Result<CMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_nonsingular_with(n, &mut rng)
}

/// Same as [`random_nonsingular`], drawing from a caller-supplied stream.
pub(crate) fn random_nonsingular_with<R: Rng>(n: usize, rng: &mut R) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("size must be at least 1".into()));
    }
    for _ in 0..MAX_DRAW_ATTEMPTS {
        let entries: Vec<Complex64> = (0..n * n)
            .map(|_| {
                Complex64::new(
                    rng.random_range(-1.0..=1.0),
                    rng.random_range(-1.0..=1.0),
                )
            })
            .collect();
        let candidate = CMatrix {
            rows: n,
            cols: n,
            entries,
        };
        let lu = LuFactors::compute(&candidate)?;
        if lu.pivot_ratio() > CONDITION_GUARD {
            return Ok(candidate);
        }
    }
    Err(Error::RandomGenerationFailed {
        attempts: MAX_DRAW_ATTEMPTS,
    })
}
