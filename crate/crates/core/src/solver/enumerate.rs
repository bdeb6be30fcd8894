use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::newton::finalize;
use super::{newton_solve, Solution, SolverConfig};
use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::model::Problem;

/// Sign patterns cover at most this many vertices.
const MAX_PATTERN_VERTICES: usize = 9;
/// Merge radius cap for solutions with a large a-posteriori error estimate.
const MAX_MERGE_RADIUS: f64 = 1e-2;

/// Result of a multistart run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Enumeration {
    /// Distinct solutions, sorted lexicographically by value.
    pub solutions: Vec<Solution>,
    pub radius: f64,
    pub starts: usize,
    /// Starts that did not converge, or converged outside the ball.
    pub failures: usize,
    /// `h₊ ≡ h₋ ≡ 0, c = 0`: every constant solves, only `u ≡ 0` is reported.
    pub degenerate_family: bool,
}

/// Deterministic start set: the constants `{-r/2, 0, r/2}` on the first nine
/// vertices in every sign pattern, then uniform points of `[-r, r]^V`.
pub fn start_points(n: usize, radius: f64, n_starts: usize, seed: u64) -> Vec<VertexFunction> {
    let k = n.min(MAX_PATTERN_VERTICES);
    let patterns = 3usize.pow(k as u32);
    let levels = [-0.5 * radius, 0.0, 0.5 * radius];
    let mut starts: Vec<VertexFunction> = (0..patterns.min(n_starts))
        .map(|mut code| {
            VertexFunction::from_fn(n, |x| {
                if x < k {
                    let level = levels[code % 3];
                    code /= 3;
                    level
                } else {
                    0.0
                }
            })
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while starts.len() < n_starts {
        starts.push(VertexFunction::from_fn(n, |_| rng.gen_range(-radius..=radius)));
    }
    starts
}

fn merge_radius(a: &Solution, b: &Solution, cfg: &SolverConfig) -> f64 {
    let est = 8.0 * a.error_estimate.max(b.error_estimate);
    cfg.dedup_tol.max(est.min(MAX_MERGE_RADIUS))
}

/// Keeps one representative per cluster; the one with the smallest residual wins.
pub(crate) fn dedup(found: Vec<Solution>, cfg: &SolverConfig) -> Vec<Solution> {
    let mut kept: Vec<Solution> = Vec::new();
    for s in found {
        match kept
            .iter_mut()
            .find(|k| k.u.dist_inf(&s.u) <= merge_radius(k, &s, cfg))
        {
            Some(k) => {
                if s.residual_inf_norm < k.residual_inf_norm {
                    *k = s;
                }
            }
            None => kept.push(s),
        }
    }
    kept.sort_by(|a, b| {
        a.u.iter()
            .zip(b.u.iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    kept
}

/// Runs Newton from `n_starts` points and collects the distinct zeros with
/// `‖u‖∞ ≤ radius`. Completeness is heuristic.
pub fn enumerate_solutions(
    p: &Problem,
    radius: f64,
    n_starts: usize,
    cfg: &SolverConfig,
    seed: u64,
) -> Result<Enumeration> {
    cfg.validate()?;
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::PreconditionFailed(format!("radius must be positive, got {radius}")));
    }
    let n = p.vertex_count();
    if p.both_zero() && p.c == 0.0 {
        let zero = VertexFunction::zeros(n);
        let rep = finalize(p, zero.clone(), zero, 0, 0.0, cfg);
        return Ok(Enumeration {
            solutions: vec![rep],
            radius,
            starts: 0,
            failures: 0,
            degenerate_family: true,
        });
    }
    let starts = start_points(n, radius, n_starts, seed);
    // collect() on an indexed parallel iterator preserves start order
    let results: Vec<Option<Solution>> = starts
        .par_iter()
        .map(|u0| {
            newton_solve(p, u0, cfg)
                .ok()
                .filter(|s| s.u.inf_norm() <= radius)
        })
        .collect();
    let failures = results.iter().filter(|r| r.is_none()).count();
    let found: Vec<Solution> = results.into_iter().flatten().collect();
    Ok(Enumeration {
        solutions: dedup(found, cfg),
        radius,
        starts: starts.len(),
        failures,
        degenerate_family: false,
    })
}
