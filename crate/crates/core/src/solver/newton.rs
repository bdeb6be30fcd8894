use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::SolverConfig;
use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::linalg;
use crate::model::{Problem, OVERFLOW_GUARD};

const MAX_HALVINGS: usize = 20;

/// A converged zero of the residual map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub u: VertexFunction,
    pub residual_inf_norm: f64,
    /// `sgn det dF(u)`, 0 when the equilibrated determinant is below `morse_tol`.
    pub det_sign: i8,
    pub iterations: usize,
    pub converged_from: VertexFunction,
    /// ∞-norm of the Newton correction at `u`; an a-posteriori error estimate
    /// that stays large near degenerate zeros.
    pub error_estimate: f64,
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn within_guard(u: &[f64]) -> bool {
    u.iter().all(|v| v.abs() <= OVERFLOW_GUARD)
}

/// Builds a [`Solution`] at a point already known to satisfy the tolerance.
pub(crate) fn finalize(
    p: &Problem,
    u: VertexFunction,
    start: VertexFunction,
    iterations: usize,
    last_step: f64,
    cfg: &SolverConfig,
) -> Solution {
    let f = p.residual_unchecked(&u);
    let j = p.jacobian_unchecked(&u);
    let det_sign = linalg::det_sign(&j, cfg.morse_tol);
    let error_estimate = linalg::solve(&j, &f.to_dvector())
        .map(|s| s.amax())
        .unwrap_or(last_step);
    Solution {
        residual_inf_norm: f.inf_norm(),
        u,
        det_sign,
        iterations,
        converged_from: start,
        error_estimate,
    }
}

/// Damped Newton iteration on `F` from `u0`. Where the Jacobian is exactly
/// singular a regularised least-squares step is taken instead;
/// [`Error::SingularJacobian`] means even that step made no progress.
pub fn newton_solve(p: &Problem, u0: &VertexFunction, cfg: &SolverConfig) -> Result<Solution> {
    cfg.validate()?;
    u0.check_len(p.vertex_count())?;
    if !within_guard(u0) {
        return Err(Error::Diverged);
    }
    let mut u = u0.clone();
    let mut f = p.residual_unchecked(&u);
    let mut last_step = f64::INFINITY;
    for it in 0..cfg.max_iter {
        if f.inf_norm() <= cfg.tol {
            return Ok(finalize(p, u, u0.clone(), it, last_step, cfg));
        }
        let j = p.jacobian_unchecked(&u);
        let rhs = -f.to_dvector();
        let (direction, singular) = match linalg::solve(&j, &rhs) {
            Some(s) => (s, false),
            None => (regularized_step(&j, &rhs).ok_or(Error::SingularJacobian)?, true),
        };
        let mut step = VertexFunction::from(direction);
        let size = step.inf_norm();
        if size > cfg.step_clamp {
            step = step.scaled(cfg.step_clamp / size);
        }
        let f_norm = norm2(&f);
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let trial = u.axpy(t, &step);
            if within_guard(&trial) {
                let ft = p.residual_unchecked(&trial);
                if norm2(&ft) < f_norm {
                    accepted = Some((trial, ft));
                    break;
                }
            }
            t *= 0.5;
        }
        let Some((next, fnext)) = accepted else {
            return Err(if singular { Error::SingularJacobian } else { failure(&u, &f, it) });
        };
        last_step = t * step.inf_norm();
        u = next;
        f = fnext;
    }
    if f.inf_norm() <= cfg.tol {
        return Ok(finalize(p, u, u0.clone(), cfg.max_iter, last_step, cfg));
    }
    Err(failure(&u, &f, cfg.max_iter))
}

/// Least-squares step `(JᵀJ + λI)s = Jᵀrhs` used when `J` itself is singular.
fn regularized_step(j: &DMatrix<f64>, rhs: &DVector<f64>) -> Option<DVector<f64>> {
    let jtj = j.transpose() * j;
    let lambda = 1e-8 * jtj.amax().max(1.0);
    let n = j.nrows();
    linalg::solve(&(jtj + DMatrix::identity(n, n) * lambda), &(j.transpose() * rhs))
}

/// Iterates that wandered past half the overflow guard count as divergent.
fn failure(u: &VertexFunction, f: &VertexFunction, iterations: usize) -> Error {
    if u.inf_norm() > 0.5 * OVERFLOW_GUARD {
        Error::Diverged
    } else {
        Error::NoConvergence {
            iterations,
            residual: f.inf_norm(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn p2(hp: &[f64], hm: &[f64], c: f64) -> Problem {
        Problem::new(
            Graph::path(2).unwrap(),
            hp.to_vec().into(),
            hm.to_vec().into(),
            c,
        )
        .unwrap()
    }

    #[test]
    fn case4_closed_form() {
        // the Jacobian at the start is singular
        let p = p2(&[1.0, 1.0], &[-1.0, -1.0], 1.0);
        let sol = newton_solve(&p, &VertexFunction::zeros(2), &SolverConfig::default()).unwrap();
        let s = (0.5 + 5f64.sqrt() / 2.0).ln();
        assert!((sol.u[0] - s).abs() < 1e-12 && (sol.u[1] - s).abs() < 1e-12);
        assert!(sol.residual_inf_norm <= 1e-12);
        assert_eq!(sol.det_sign, 1);
    }

    #[test]
    fn case1_closed_form() {
        let p = p2(&[1.0, 0.0], &[-1.0, 0.0], 1.0);
        let sol = newton_solve(&p, &VertexFunction::zeros(2), &SolverConfig::default()).unwrap();
        let x = (1.0 + 2f64.sqrt()).ln();
        assert!((sol.u[0] - x).abs() < 1e-12);
        assert!((sol.u[1] - (x - 1.0)).abs() < 1e-12);
        assert_eq!(sol.det_sign, -1);
    }

    #[test]
    fn canonical_instance_from_random_starts() {
        use rand::{Rng, SeedableRng};
        let p = p2(&[-1.0, -1.0], &[1.0, 1.0], 0.0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let u0 = VertexFunction::from_fn(2, |_| rng.gen_range(-2.0..=2.0));
            let sol = newton_solve(&p, &u0, &SolverConfig::default()).unwrap();
            assert!(sol.u.inf_norm() < 1e-12);
        }
    }

    #[test]
    fn failures_are_reported() {
        // Case 2 has no solution.
        let p = p2(&[1.0, 0.0], &[0.0, -1.0], 0.0);
        assert!(newton_solve(&p, &VertexFunction::zeros(2), &SolverConfig::default()).is_err());
        assert_eq!(
            newton_solve(&p, &VertexFunction::constant(2, 800.0), &SolverConfig::default()),
            Err(Error::Diverged)
        );
        // -Δ is singular and F is constant, so no step reduces the residual
        let z = p2(&[0.0, 0.0], &[0.0, 0.0], 1.0);
        assert_eq!(
            newton_solve(&z, &VertexFunction::zeros(2), &SolverConfig::default()),
            Err(Error::SingularJacobian)
        );
    }
}
