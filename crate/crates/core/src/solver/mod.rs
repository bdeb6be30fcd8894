//! Root finding and variational machinery for the residual map.
//!
//! - [`newton_solve`]: damped Newton with backtracking and step clamping.
//! - [`enumerate_solutions`]: multistart Newton over a ball, deduplicated.
//! - [`minimize_energy_boxed`]: projected-gradient minimisation of the energy
//!   between a sub- and a supersolution, polished by Newton.
//! - [`continuation`]: warm-started Newton along a one-parameter family.
//! - [`brute_force_2v`]: grid bracketing on two-vertex graphs, independent of Newton.

mod boxed;
mod brute;
mod config;
mod continuation;
mod enumerate;
mod newton;

pub use boxed::{find_constant_subsolution, minimize_energy_boxed};
pub use brute::brute_force_2v;
pub use config::SolverConfig;
pub use continuation::{continuation, BranchPoint};
pub use enumerate::{enumerate_solutions, start_points, Enumeration};
pub use newton::{newton_solve, Solution};
