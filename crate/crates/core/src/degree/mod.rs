//! Brouwer degree of the residual map: closed-form tables and signed zero counts.

mod formula;
mod numeric;
mod schur;

pub use formula::{degree_formula, degree_formula_routed, kw_degree_formula, FormulaRoute};
pub use numeric::{
    degree_numeric, kw_degree_numeric, select_radius, select_radius_with_set, Agreement, DegreeReport,
    DEFAULT_STARTS, INITIAL_RADIUS, MAX_RADIUS, MORSE_PERTURBATIONS,
};
pub use schur::{harmonic_extension, schur_operator, V0Decomposition};
