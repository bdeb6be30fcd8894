//! Built-in instances with known answers.
//!
//! The four two-vertex cases live on the unit graph `x1 - x2` (`ω = μ = 1`):
//!
//! | case | `h₊`    | `h₋`      | zeros                           | degree |
//! |------|---------|-----------|---------------------------------|--------|
//! | 1    | (1, 0)  | (-1, 0)   | exactly one, for every `c`      | -1     |
//! | 2    | (1, 0)  | (0, -1)   | none                            | 0      |
//! | 3    | (1, 1)  | (-1, 0)   | none at `c = 0`                 | 0      |
//! | 4    | (1, 1)  | (-1, -1)  | exactly one, `(s, s)`           | +1     |

use crate::function::VertexFunction;
use crate::graph::Graph;
use crate::model::{KwProblem, Problem};

fn unit_pair() -> Graph {
    Graph::path(2).expect("two-vertex path is valid")
}

fn two_vertex(hp: [f64; 2], hm: [f64; 2], c: f64) -> Problem {
    Problem::new(unit_pair(), hp.to_vec().into(), hm.to_vec().into(), c).expect("lengths match")
}

pub fn case1(c: f64) -> Problem {
    two_vertex([1.0, 0.0], [-1.0, 0.0], c)
}

pub fn case2(c: f64) -> Problem {
    two_vertex([1.0, 0.0], [0.0, -1.0], c)
}

pub fn case3(c: f64) -> Problem {
    two_vertex([1.0, 1.0], [-1.0, 0.0], c)
}

pub fn case4(c: f64) -> Problem {
    two_vertex([1.0, 1.0], [-1.0, -1.0], c)
}

/// `(x, x - c)` with `x = asinh(c)`.
pub fn case1_solution(c: f64) -> VertexFunction {
    let x = c.asinh();
    vec![x, x - c].into()
}

/// `(s, s)` with `s = asinh(c/2)`.
pub fn case4_solution(c: f64) -> VertexFunction {
    let s = (0.5 * c).asinh();
    vec![s, s].into()
}

/// By name: `case1` to `case4`.
pub fn two_vertex_case(name: &str, c: f64) -> Option<Problem> {
    match name {
        "case1" => Some(case1(c)),
        "case2" => Some(case2(c)),
        "case3" => Some(case3(c)),
        "case4" => Some(case4(c)),
        _ => None,
    }
}

/// `-Δu = -eᵘ + e⁻ᵘ` on `g`, whose only solution is `u ≡ 0`.
pub fn canonical(g: &Graph) -> Problem {
    let n = g.vertex_count();
    Problem::new(g.clone(), VertexFunction::constant(n, -1.0), VertexFunction::constant(n, 1.0), 0.0)
        .expect("lengths match")
}

/// `h₊ ≡ Λ`, `h₋ ≡ -Λ` with `Λ` the largest eigenvalue of `-Δ`.
pub fn top_eigenvalue_instance(g: &Graph, c: f64) -> Problem {
    let n = g.vertex_count();
    let lambda = g.largest_laplacian_eigenvalue();
    Problem::new(
        g.clone(),
        VertexFunction::constant(n, lambda),
        VertexFunction::constant(n, -lambda),
        c,
    )
    .expect("lengths match")
}

/// Sign-changing `h₊` with negative integral and `h₋ ≡ 0` on the unit path
/// `x1 - x2 - x3`: no zeros for `c` below a negative threshold, at least two
/// between the threshold and 0.
pub fn threshold_instance(c: f64) -> Problem {
    Problem::new(
        Graph::path(3).expect("three-vertex path is valid"),
        vec![1.0, -3.0, -3.0].into(),
        VertexFunction::zeros(3),
        c,
    )
    .expect("lengths match")
}

/// One row of the Kazdan-Warner degree table with a representative instance.
#[derive(Debug, Clone)]
pub struct KwRow {
    pub condition: &'static str,
    pub degree: i32,
    pub problem: KwProblem,
}

/// One instance for each row of the Kazdan-Warner table, on the unit pair.
pub fn kw_table_rows() -> Vec<KwRow> {
    let kw = |h: [f64; 2], c: f64| KwProblem::new(unit_pair(), h.to_vec().into(), c).expect("lengths match");
    vec![
        KwRow {
            condition: "c > 0, max h > 0",
            degree: -1,
            problem: kw([1.0, -1.0], 1.0),
        },
        KwRow {
            condition: "c = 0, mean h < 0 < max h",
            degree: -1,
            problem: kw([1.0, -3.0], 0.0),
        },
        KwRow {
            condition: "c < 0, min h < max h <= 0",
            degree: 1,
            problem: kw([-1.0, -2.0], -1.0),
        },
        KwRow {
            condition: "c < 0, h negative constant",
            degree: 1,
            problem: kw([-1.0, -1.0], -1.0),
        },
        KwRow {
            condition: "c > 0, max h <= 0",
            degree: 0,
            problem: kw([-1.0, 0.0], 1.0),
        },
        KwRow {
            condition: "c = 0, not (mean h < 0 < max h)",
            degree: 0,
            problem: kw([1.0, -1.0], 0.0),
        },
        KwRow {
            condition: "c < 0, max h > 0",
            degree: 0,
            problem: kw([1.0, -1.0], -1.0),
        },
    ]
}
