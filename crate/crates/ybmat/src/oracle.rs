//! Brute-force cross-checks at tiny sizes.
//!
//! Everything here evaluates the defining equations with its own naive
//! triple-loop multiplication so that a bug in the main matrix kernels cannot
//! hide itself. The grid enumerator sweeps all real involutions of size 2 and
//! keeps the ones solving the equation for `A = diag(1, -1)` by direct
//! evaluation.

use num_complex::Complex64;

use crate::matrix::CMatrix;

/// Entrywise comparison slack, relative to the magnitude of the products.
const ORACLE_TOL: f64 = 1e-10;

/// Naive `a * b` on raw entries; deliberately separate from the main kernels.
fn naive_mul(a: &CMatrix, b: &CMatrix) -> Vec<Vec<Complex64>> {
    assert_eq!(a.cols(), b.rows());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); b.cols()]; a.rows()];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..a.cols() {
                acc += a.get(i, k) * b.get(k, j);
            }
            *cell = acc;
        }
    }
    out
}

fn naive_mul3(a: &CMatrix, b: &CMatrix, c: &CMatrix) -> Vec<Vec<Complex64>> {
    let ab = naive_mul(a, b);
    let mut out = vec![vec![Complex64::new(0.0, 0.0); c.cols()]; ab.len()];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, abik) in ab[i].iter().enumerate() {
                acc += abik * c.get(k, j);
            }
            *cell = acc;
        }
    }
    out
}

fn max_entry(m: &[Vec<Complex64>]) -> f64 {
    m.iter()
        .flat_map(|row| row.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Direct check that `y` solves `d y d = y d y` and `y² = I`, by naive
/// multiplication only. Panics when the inputs are not square of equal size.
pub fn exhaustive_identity_check(y: &CMatrix, d: &CMatrix) -> bool {
    assert!(y.is_square() && d.is_square() && y.rows() == d.rows());
    let n = y.rows();
    let dyd = naive_mul3(d, y, d);
    let ydy = naive_mul3(y, d, y);
    let slack = ORACLE_TOL * max_entry(&dyd).max(max_entry(&ydy)).max(1.0);
    for i in 0..n {
        for j in 0..n {
            if (dyd[i][j] - ydy[i][j]).norm() > slack {
                return false;
            }
        }
    }
    let ysq = naive_mul(y, y);
    let slack = ORACLE_TOL * max_entry(&ysq).max(1.0);
    for (i, row) in ysq.iter().enumerate() {
        for (j, &value) in row.iter().enumerate() {
            let expected = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            if (value - expected).norm() > slack {
                return false;
            }
        }
    }
    true
}

/// Enumerates real 2x2 involutions over a grid and returns those solving the
/// equation for `A = diag(1, -1)`.
///
/// The trace-zero involutions are `[[a, b], [c, -a]]` with `a² + bc = 1`;
/// `a` and `b` run over `[-3, 3]` in steps of `grid_step` (`b = 0` excluded,
/// `c` solved as `(1 - a²) / b`). The two diagonal sign matrices complete the
/// candidate set. Solutions are kept when the directly-evaluated residual
/// `‖AXA - XAX‖_F` is at most `tol`.
pub fn grid_solutions_2x2(grid_step: f64, tol: f64) -> Vec<CMatrix> {
    assert!(grid_step > 0.0, "grid step must be positive");
    let a_mat = CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
    let mut solutions = Vec::new();
    let mut consider = |x: CMatrix| {
        let axa = naive_mul3(&a_mat, &x, &a_mat);
        let xax = naive_mul3(&x, &a_mat, &x);
        let mut acc = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                acc += (axa[i][j] - xax[i][j]).norm_sqr();
            }
        }
        if acc.sqrt() <= tol {
            solutions.push(x);
        }
    };

    let steps = (6.0 / grid_step).round() as usize;
    for ai in 0..=steps {
        let a = -3.0 + ai as f64 * grid_step;
        for bi in 0..=steps {
            let b = -3.0 + bi as f64 * grid_step;
            if b.abs() < grid_step / 2.0 {
                continue;
            }
            let c = (1.0 - a * a) / b;
            let x = CMatrix::from_real_rows(&[vec![a, b], vec![c, -a]]).unwrap();
            consider(x);
        }
    }
    consider(CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap());
    consider(CMatrix::from_real_rows(&[vec![-1.0, 0.0], vec![0.0, 1.0]]).unwrap());
    solutions
}
