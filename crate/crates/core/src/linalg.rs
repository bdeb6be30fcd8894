//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Sign of `det(m)`, or 0 when the row-equilibrated determinant is below `tol`.
///
/// Each row is divided by its largest absolute entry before factorising, so the
/// threshold does not depend on the scale of individual equations.
pub fn det_sign(m: &DMatrix<f64>, tol: f64) -> i8 {
    let mut eq = m.clone();
    for mut row in eq.row_iter_mut() {
        let s = row.amax();
        if s == 0.0 {
            return 0;
        }
        row /= s;
    }
    // Equilibration divides by positive scalars, so the sign is preserved.
    let det = eq.lu().determinant();
    if !det.is_finite() || det.abs() <= tol {
        0
    } else if det > 0.0 {
        1
    } else {
        -1
    }
}

/// Solves `m x = rhs` by LU with partial pivoting; `None` if singular.
pub fn solve(m: &DMatrix<f64>, rhs: &DVector<f64>) -> Option<DVector<f64>> {
    let x = m.clone().lu().solve(rhs)?;
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Eigenvalues (ascending) of an operator that is self-adjoint in the
/// `μ`-weighted inner product, i.e. `μ_x m_xy = μ_y m_yx`.
pub fn mu_self_adjoint_eigenvalues(m: &DMatrix<f64>, mu: &[f64]) -> Vec<f64> {
    let n = m.nrows();
    let s = DMatrix::from_fn(n, n, |x, y| {
        let v = m[(x, y)] * (mu[x] / mu[y]).sqrt();
        let w = m[(y, x)] * (mu[y] / mu[x]).sqrt();
        0.5 * (v + w)
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(s).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}
