use super::{newton_solve, Solution, SolverConfig};
use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::model::Problem;

const PG_MAX_ITER: usize = 200_000;
/// Projected-gradient stationarity needed before handing over to Newton.
const PG_STATIONARITY: f64 = 1e-7;
const ARMIJO: f64 = 1e-4;
const BOX_SLACK: f64 = 1e-8;

fn clamp(u: &VertexFunction, lower: &[f64], upper: &[f64]) -> VertexFunction {
    VertexFunction::from_fn(u.len(), |x| u[x].clamp(lower[x], upper[x]))
}

/// Minimises the energy over `{lower ≤ u ≤ upper}` and polishes the minimiser
/// with Newton. `lower` must be a subsolution (`F(lower) ≤ 0`) and `upper` a
/// supersolution (`F(upper) ≥ 0`); both are checked. The constrained
/// minimiser then solves the unconstrained equation.
pub fn minimize_energy_boxed(
    p: &Problem,
    lower: &VertexFunction,
    upper: &VertexFunction,
    cfg: &SolverConfig,
) -> Result<Solution> {
    cfg.validate()?;
    let n = p.vertex_count();
    lower.check_len(n)?;
    upper.check_len(n)?;
    if let Some(x) = (0..n).find(|&x| lower[x] > upper[x]) {
        return Err(Error::BoxEmpty(x));
    }
    let f_lo = p.residual(lower)?;
    if let Some(x) = (0..n).find(|&x| f_lo[x] > cfg.tol) {
        return Err(Error::NotSubsolution {
            vertex: x,
            residual: f_lo[x],
        });
    }
    let f_up = p.residual(upper)?;
    if let Some(x) = (0..n).find(|&x| f_up[x] < -cfg.tol) {
        return Err(Error::NotSupersolution {
            vertex: x,
            residual: f_up[x],
        });
    }

    let mu = p.graph.mu();
    let mut u = clamp(&lower.add(upper).scaled(0.5), lower, upper);
    let mut energy = p.energy_unchecked(&u);
    let mut t = 1.0;
    let mut converged = false;
    for _ in 0..PG_MAX_ITER {
        let g = p.residual_unchecked(&u);
        let stationarity = clamp(&u.axpy(-1.0, &g), lower, upper).dist_inf(&u);
        if stationarity <= PG_STATIONARITY {
            converged = true;
            break;
        }
        loop {
            let trial = clamp(&u.axpy(-t, &g), lower, upper);
            let e = p.energy_unchecked(&trial);
            // directional term in the Euclidean gradient μ ⊙ F
            let slope: f64 = (0..n).map(|x| mu[x] * g[x] * (trial[x] - u[x])).sum();
            if e <= energy + ARMIJO * slope {
                u = trial;
                energy = e;
                t = (t * 2.0).min(1e6);
                break;
            }
            t *= 0.5;
            if t < 1e-16 {
                // energy differences are below rounding; Newton takes over
                converged = true;
                break;
            }
        }
        if converged {
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations: PG_MAX_ITER,
            residual: p.residual_unchecked(&u).inf_norm(),
        });
    }
    let sol = newton_solve(p, &u, cfg)?;
    let inside = (0..n).all(|x| {
        sol.u[x] >= lower[x] - BOX_SLACK * (1.0 + lower[x].abs())
            && sol.u[x] <= upper[x] + BOX_SLACK * (1.0 + upper[x].abs())
    });
    if !inside {
        return Err(Error::NoConvergence {
            iterations: sol.iterations,
            residual: sol.residual_inf_norm,
        });
    }
    Ok(Solution {
        converged_from: lower.clone(),
        ..sol
    })
}

/// Constant subsolution `A = ln(-c / max|h₊|) - 1` for `c < 0`, verified
/// against the residual before it is returned.
pub fn find_constant_subsolution(p: &Problem) -> Result<f64> {
    let max_abs = p.h_plus.inf_norm();
    if p.c >= 0.0 {
        return Err(Error::PreconditionFailed(format!("need c < 0, got {}", p.c)));
    }
    if max_abs == 0.0 {
        return Err(Error::PreconditionFailed("h_plus vanishes identically".into()));
    }
    let a = (-p.c / max_abs).ln() - 1.0;
    let f = p.residual(&VertexFunction::constant(p.vertex_count(), a))?;
    match (0..f.len()).find(|&x| f[x] > 0.0) {
        Some(vertex) => Err(Error::NotSubsolutionAfterAll { value: a, vertex }),
        None => Ok(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn prob(g: Graph, hp: &[f64], hm: &[f64], c: f64) -> Problem {
        Problem::new(g, hp.to_vec().into(), hm.to_vec().into(), c).unwrap()
    }

    #[test]
    fn canonical_instance_between_constants() {
        let p = prob(Graph::path(3).unwrap(), &[-1.0; 3], &[1.0; 3], 0.0);
        let lo = VertexFunction::constant(3, -1.0);
        let hi = VertexFunction::constant(3, 1.0);
        let s = minimize_energy_boxed(&p, &lo, &hi, &SolverConfig::default()).unwrap();
        assert!(s.u.inf_norm() < 1e-10);
    }

    #[test]
    fn shifted_canonical_instance() {
        // residual of a constant k is 2 sinh k + c, zero at k = -asinh(c/2)
        let p = prob(Graph::path(2).unwrap(), &[-1.0, -1.0], &[1.0, 1.0], 1.0);
        let lo = VertexFunction::constant(2, -2.0);
        let hi = VertexFunction::constant(2, 1.0);
        let s = minimize_energy_boxed(&p, &lo, &hi, &SolverConfig::default()).unwrap();
        let k = -(0.5f64).asinh();
        assert!((s.u[0] - k).abs() < 1e-10 && (s.u[1] - k).abs() < 1e-10);
    }

    #[test]
    fn point_box() {
        let p = prob(Graph::path(2).unwrap(), &[-1.0, -1.0], &[1.0, 1.0], 0.0);
        let z = VertexFunction::zeros(2);
        let s = minimize_energy_boxed(&p, &z, &z, &SolverConfig::default()).unwrap();
        assert_eq!(s.u, z);
        assert_eq!(s.iterations, 0);
    }

    #[test]
    fn box_errors() {
        let p = prob(Graph::path(2).unwrap(), &[-1.0, -1.0], &[1.0, 1.0], 0.0);
        let cfg = SolverConfig::default();
        let lo = VertexFunction::from(vec![0.0, 2.0]);
        let hi = VertexFunction::from(vec![1.0, 1.0]);
        assert_eq!(minimize_energy_boxed(&p, &lo, &hi, &cfg).unwrap_err(), Error::BoxEmpty(1));
        let up = VertexFunction::constant(2, 1.0);
        assert!(matches!(
            minimize_energy_boxed(&p, &up, &up.scaled(2.0), &cfg),
            Err(Error::NotSubsolution { .. })
        ));
        let dn = VertexFunction::constant(2, -1.0);
        assert!(matches!(
            minimize_energy_boxed(&p, &dn.scaled(2.0), &dn, &cfg),
            Err(Error::NotSupersolution { .. })
        ));
    }

    #[test]
    fn constant_subsolutions() {
        let g = Graph::path(2).unwrap();
        let a = find_constant_subsolution(&prob(g.clone(), &[1.0, -0.5], &[0.0, 0.0], -1.0)).unwrap();
        assert!((a + 1.0).abs() < 1e-15);
        let e = std::f64::consts::E;
        let a0 = find_constant_subsolution(&prob(g.clone(), &[1.0, 0.0], &[0.0, 0.0], -e)).unwrap();
        assert!(a0.abs() < 1e-15);
        assert!(matches!(
            find_constant_subsolution(&prob(g.clone(), &[1.0, 0.0], &[0.0, 0.0], 0.0)),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(matches!(
            find_constant_subsolution(&prob(g.clone(), &[0.0, 0.0], &[1.0, 0.0], -1.0)),
            Err(Error::PreconditionFailed(_))
        ));
        // a strongly negative h₋ breaks the constant subsolution
        assert!(matches!(
            find_constant_subsolution(&prob(g, &[1.0, 1.0], &[-5.0, 0.0], -1.0)),
            Err(Error::NotSubsolutionAfterAll { vertex: 0, .. })
        ));
    }
}
