//! Sinh-Gordon and Kazdan-Warner equations on finite weighted graphs.
//!
//! The unknown is a function `u` on the vertices of a connected graph with
//! symmetric edge weights `ω` and vertex measure `μ`, and the equation is
//!
//! ```text
//! -Δu = h₊eᵘ + h₋e⁻ᵘ - c,    Δu(x) = (1/μ_x) Σ_y ω_xy (u(y) - u(x)).
//! ```
//!
//! The crate solves it (damped Newton, multistart enumeration, box-constrained
//! energy minimisation, continuation) and computes the Brouwer degree of the
//! residual map `F(u) = -Δu - h₊eᵘ - h₋e⁻ᵘ + c` twice: from the sign pattern of
//! `(h₊, h₋, c)` and as the signed count of zeros.
//!
//! ```
//! use sinhgordon::{degree_formula, degree_numeric, instances, SolverConfig};
//!
//! let p = instances::case1(1.0);
//! let report = degree_numeric(&p, &SolverConfig::default(), 100, 42).unwrap();
//! assert_eq!(degree_formula(&p).unwrap(), -1);
//! assert_eq!(report.numeric_degree, Some(-1));
//! ```

pub mod checks;
pub mod degree;
pub mod error;
pub mod function;
pub mod graph;
pub mod instances;
pub mod io;
pub mod linalg;
pub mod model;
pub mod random;
pub mod solver;
pub mod sweep;

pub use degree::{
    degree_formula, degree_numeric, harmonic_extension, kw_degree_formula, kw_degree_numeric, schur_operator,
    select_radius, Agreement, DegreeReport,
};
pub use error::{Error, Result};
pub use function::VertexFunction;
pub use graph::{EllipticConstants, Graph};
pub use model::{KwProblem, Problem, SignClass};
pub use solver::{enumerate_solutions, newton_solve, Solution, SolverConfig};

// The guide's code blocks run as doc-tests.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod book_graphs {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/equations.md")]
pub mod book_equations {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/solving.md")]
pub mod book_solving {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/degree.md")]
pub mod book_degree {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/harmonic.md")]
pub mod book_harmonic {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/invariants.md")]
pub mod book_invariants {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/threshold.md")]
pub mod book_threshold {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod book_cli {}
