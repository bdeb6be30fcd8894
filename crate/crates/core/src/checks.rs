//! Runtime checks of the discrete maximum principle, Kato's inequality, the
//! Harnack-type bounds, the oscillation estimate and Green's formula.
//!
//! Each check returns a [`CheckOutcome`]; `margin` is the slack in the
//! tightest inequality (negative means violated).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::graph::Graph;
use crate::model::Problem;
use crate::random;
use crate::solver::Solution;

const SLACK: f64 = 1e-10;
const ELLIPTIC_SLACK: f64 = 1e-9;
const CONSTANT_RANGE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub vertex: usize,
    /// The two sides of the violated inequality, left then right.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub margin: f64,
}

/// Tracks the tightest `lhs ≤ rhs + slack` seen so far.
struct Tightest {
    margin: f64,
    at: Option<Witness>,
}

impl Tightest {
    fn new() -> Self {
        Self {
            margin: f64::INFINITY,
            at: None,
        }
    }

    fn record(&mut self, vertex: usize, lhs: f64, rhs: f64) {
        let m = rhs - lhs;
        if m < self.margin {
            self.margin = m;
            self.at = Some(Witness {
                vertex,
                values: vec![lhs, rhs],
            });
        }
    }

    fn finish(self, name: &str, slack: f64) -> CheckOutcome {
        let passed = self.margin >= -slack;
        CheckOutcome {
            name: name.into(),
            passed,
            witness: if passed { None } else { self.at },
            margin: if self.margin.is_finite() { self.margin } else { 0.0 },
        }
    }
}

fn vacuous(name: &str) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        passed: true,
        witness: None,
        margin: 0.0,
    }
}

/// A non-constant `u` has a maximum point where `Δu < 0`.
pub fn check_max_principle(g: &Graph, u: &VertexFunction) -> Result<CheckOutcome> {
    const NAME: &str = "max_principle";
    let lap = g.laplacian(u)?;
    let max = u.max();
    if max - u.min() <= CONSTANT_RANGE {
        return Ok(vacuous(NAME));
    }
    // best (most negative) Laplacian over the maximisers
    let (vertex, best) = (0..u.len())
        .filter(|&x| u[x] == max)
        .map(|x| (x, lap[x]))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("the maximum is attained");
    Ok(CheckOutcome {
        name: NAME.into(),
        passed: best < 0.0,
        witness: (best >= 0.0).then(|| Witness {
            vertex,
            values: vec![best, 0.0],
        }),
        margin: -best,
    })
}

/// `Δ(u⁺) ≥ χ_{u>0} Δu` at every vertex.
pub fn check_kato(g: &Graph, u: &VertexFunction) -> Result<CheckOutcome> {
    let lap = g.laplacian(u)?;
    let lap_plus = g.laplacian_unchecked(&u.map(|v| v.max(0.0)));
    let mut t = Tightest::new();
    for x in 0..u.len() {
        let rhs = if u[x] > 0.0 { lap[x] } else { 0.0 };
        // stated as -Δ(u⁺) ≤ -χΔu so that margin = Δ(u⁺) - χΔu
        t.record(x, -lap_plus[x], -rhs);
    }
    Ok(t.finish("kato", SLACK))
}

/// With `L = max u - u` and `D(x) = Σ_z ω_zx / μ_x`:
/// `L(y) ≤ (μ_x/ω_xy)(D(x)L(x) - Δu(x))` on every edge, and, when
/// `max u + min u ≥ 0`, `-Δu(x) ≤ D(x)(2u(x) + L(x))` at every vertex.
pub fn check_harnack(g: &Graph, u: &VertexFunction) -> Result<CheckOutcome> {
    let lap = g.laplacian(u)?;
    let max = u.max();
    let l = u.map(|v| max - v);
    let mu = g.mu();
    let d: Vec<f64> = (0..u.len()).map(|x| g.degree(x) / mu[x]).collect();
    let mut t = Tightest::new();
    for x in 0..u.len() {
        for y in g.neighbors(x) {
            let w = g.weight(x, y);
            t.record(x, l[y], mu[x] / w * (d[x] * l[x] - lap[x]));
        }
    }
    if max + u.min() >= 0.0 {
        for x in 0..u.len() {
            t.record(x, -lap[x], d[x] * (2.0 * u[x] + l[x]));
        }
    }
    Ok(t.finish("harnack", SLACK))
}

/// `max u - min u ≤ chain_factor · B · max Δu`.
pub fn check_elliptic(g: &Graph, u: &VertexFunction) -> Result<CheckOutcome> {
    if g.vertex_count() < 2 {
        return Err(Error::SingleVertex);
    }
    let k = g.elliptic_constants()?;
    let lap = g.laplacian(u)?;
    let (argmax, _) = (0..u.len())
        .map(|x| (x, lap[x]))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty graph");
    let mut t = Tightest::new();
    t.record(argmax, u.max() - u.min(), k.chain_factor * k.b * lap[argmax]);
    Ok(t.finish("elliptic", ELLIPTIC_SLACK))
}

/// `∫Δu·v dμ = -∫Γ(u, v) dμ`, relative tolerance `1e-9`.
pub fn check_green(g: &Graph, u: &VertexFunction, v: &VertexFunction) -> Result<CheckOutcome> {
    let lap = g.laplacian(u)?;
    v.check_len(g.vertex_count())?;
    let lhs = g.integrate_unchecked(&VertexFunction::from_fn(u.len(), |x| lap[x] * v[x]));
    let gamma = g.integrate_unchecked(&g.gradient_form_unchecked(u, v));
    let tol = 1e-9 * (1.0 + gamma.abs());
    let err = (lhs + gamma).abs();
    Ok(CheckOutcome {
        name: "green".into(),
        passed: err <= tol,
        witness: (err > tol).then(|| Witness {
            vertex: 0,
            values: vec![lhs, -gamma],
        }),
        margin: tol - err,
    })
}

/// Checks the hypotheses of the uniform a-priori bound for a given `K`:
/// `K⁻¹ ≤ max|h±| ≤ K`, `|c| ≤ K` and `h±² ≥ ±K⁻¹h±` entrywise. The bound's
/// constant is not computable, so `margin` is `‖u‖∞ / K`, recorded as data.
pub fn check_solution_bound_heuristic(p: &Problem, sol: &Solution, k: f64) -> Result<CheckOutcome> {
    const NAME: &str = "solution_bound_hypotheses";
    sol.u.check_len(p.vertex_count())?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::PreconditionFailed(format!("K must be positive, got {k}")));
    }
    let margin = sol.u.inf_norm() / k;
    let fail = |vertex: usize, lhs: f64, rhs: f64| CheckOutcome {
        name: NAME.into(),
        passed: false,
        witness: Some(Witness {
            vertex,
            values: vec![lhs, rhs],
        }),
        margin,
    };
    for (h, sign) in [(&p.h_plus, 1.0), (&p.h_minus, -1.0)] {
        if let Some(x) = (0..h.len()).find(|&x| h[x] * h[x] < sign * h[x] / k) {
            return Ok(fail(x, h[x] * h[x], sign * h[x] / k));
        }
    }
    for h in [&p.h_plus, &p.h_minus] {
        let m = h.inf_norm();
        if m < 1.0 / k || m > k {
            let x = (0..h.len()).max_by(|&a, &b| h[a].abs().total_cmp(&h[b].abs())).unwrap_or(0);
            return Ok(fail(x, m, k));
        }
    }
    if p.c.abs() > k {
        return Ok(fail(0, p.c.abs(), k));
    }
    Ok(CheckOutcome {
        name: NAME.into(),
        passed: true,
        witness: None,
        margin,
    })
}

/// Runs every graph check on `trials` random instances: connected graphs of
/// 2 to 10 vertices with weights and measures in `[0.1, 10]` and `u` in
/// `[-5, 5]`. One aggregated outcome per check, carrying the smallest margin
/// and the first violation found. Given a graph, only `u` is randomised.
pub fn run_suite(graph: Option<&Graph>, trials: usize, seed: u64) -> Vec<CheckOutcome> {
    let names = ["max_principle", "kato", "harnack", "elliptic", "green"];
    let per_trial: Vec<Vec<CheckOutcome>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let g = match graph {
                Some(g) => g.clone(),
                None => {
                    let n = rand::Rng::gen_range(&mut rng, 2..=10);
                    random::connected_graph(&mut rng, n, (0.1, 10.0), 0.3)
                }
            };
            let n = g.vertex_count();
            let u = random::uniform_function(&mut rng, n, -5.0, 5.0);
            let v = random::uniform_function(&mut rng, n, -5.0, 5.0);
            // every other trial is shifted so that max + min ≥ 0 and the second bound applies
            let shift = if i % 2 == 0 { (-(u.max() + u.min()) / 2.0).max(0.0) } else { 0.0 };
            let u_shifted = u.map(|x| x + shift);
            let mut out = vec![
                check_max_principle(&g, &u).expect("lengths match"),
                check_kato(&g, &u).expect("lengths match"),
                check_harnack(&g, &u_shifted).expect("lengths match"),
            ];
            out.push(match check_elliptic(&g, &u) {
                Ok(o) => o,
                Err(_) => vacuous("elliptic"),
            });
            out.push(check_green(&g, &u, &v).expect("lengths match"));
            out
        })
        .collect();
    names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let mut agg = vacuous(name);
            agg.margin = f64::INFINITY;
            for o in per_trial.iter().map(|t| &t[k]) {
                agg.margin = agg.margin.min(o.margin);
                if !o.passed && agg.passed {
                    agg.passed = false;
                    agg.witness = o.witness.clone();
                }
            }
            if !agg.margin.is_finite() {
                agg.margin = 0.0;
            }
            agg
        })
        .collect()
}
