use serde::{Deserialize, Serialize};

use super::{newton_solve, Solution, SolverConfig};
use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::model::Problem;

/// Smallest parameter step tried before the branch is declared lost.
pub const MIN_STEP: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub t: f64,
    pub solution: Solution,
}

/// Tracks a zero of `family(t)` from `t = 0` to `t = 1` on a uniform grid of
/// `n_steps` steps, warm-starting Newton from the previous point. A failed
/// step is bisected down to [`MIN_STEP`]; intermediate points are kept.
pub fn continuation<F>(family: F, u0: &VertexFunction, n_steps: usize, cfg: &SolverConfig) -> Result<Vec<BranchPoint>>
where
    F: Fn(f64) -> Problem,
{
    if n_steps == 0 {
        return Err(Error::PreconditionFailed("n_steps must be positive".into()));
    }
    let first = newton_solve(&family(0.0), u0, cfg)?;
    let mut u = first.u.clone();
    let mut t = 0.0;
    let mut branch = vec![BranchPoint { t, solution: first }];
    for k in 1..=n_steps {
        let target = k as f64 / n_steps as f64;
        let mut dt = target - t;
        while t < target {
            let next_t = if t + dt >= target { target } else { t + dt };
            match newton_solve(&family(next_t), &u, cfg) {
                Ok(sol) => {
                    t = next_t;
                    u = sol.u.clone();
                    branch.push(BranchPoint { t, solution: sol });
                }
                Err(_) => {
                    dt *= 0.5;
                    if dt < MIN_STEP {
                        return Err(Error::BranchLost { last_t: t });
                    }
                }
            }
        }
    }
    Ok(branch)
}
