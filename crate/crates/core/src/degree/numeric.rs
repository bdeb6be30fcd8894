//! Degree as a signed count of zeros, with radius selection and Morse
//! perturbation, cross-checked against the closed-form tables.

use serde::{Deserialize, Serialize};

use super::formula::{degree_formula, degree_formula_routed, kw_degree_formula, FormulaRoute};
use crate::error::{Error, Result};
use crate::model::{KwProblem, Problem, SignClass};
use crate::solver::{enumerate_solutions, Enumeration, Solution, SolverConfig};

pub const INITIAL_RADIUS: f64 = 8.0;
pub const MAX_RADIUS: f64 = 128.0;
/// Default number of multistart points per radius.
pub const DEFAULT_STARTS: usize = 300;
/// Perturbations of `c` tried, in order, when a zero is degenerate.
pub const MORSE_PERTURBATIONS: [f64; 4] = [1e-6, 1e-5, 1e-4, 1e-3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Match,
    Mismatch,
    FormulaOnly,
    NumericOnly,
}

/// Formula degree, numeric degree and the evidence behind the latter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    /// `None` when no closed form applies.
    pub formula_degree: Option<i32>,
    /// `None` when indeterminate (unstable radius or unresolved degeneracy).
    pub numeric_degree: Option<i32>,
    pub solutions: Vec<Solution>,
    pub radius: f64,
    pub radius_stable: bool,
    pub agreement: Agreement,
    pub notes: Vec<String>,
    /// `c` actually used for the signed count, when it was perturbed.
    pub perturbed_c: Option<f64>,
    pub seed: u64,
    pub starts: usize,
    pub failures: usize,
}

impl DegreeReport {
    pub fn formula_only(formula_degree: i32, notes: Vec<String>) -> Self {
        Self {
            formula_degree: Some(formula_degree),
            numeric_degree: None,
            solutions: Vec::new(),
            radius: 0.0,
            radius_stable: false,
            agreement: Agreement::FormulaOnly,
            notes,
            perturbed_c: None,
            seed: 0,
            starts: 0,
            failures: 0,
        }
    }
}

fn agreement(formula: Option<i32>, numeric: Option<i32>) -> Agreement {
    match (formula, numeric) {
        (Some(f), Some(n)) if f == n => Agreement::Match,
        (Some(_), Some(_)) => Agreement::Mismatch,
        (Some(_), None) => Agreement::FormulaOnly,
        (None, _) => Agreement::NumericOnly,
    }
}

fn same_set(a: &Enumeration, b: &Enumeration, cfg: &SolverConfig) -> bool {
    a.solutions.len() == b.solutions.len()
        && a.solutions.iter().all(|s| {
            b.solutions.iter().any(|t| {
                let tol = cfg.dedup_tol.max((8.0 * s.error_estimate.max(t.error_estimate)).min(1e-2));
                s.u.dist_inf(&t.u) <= tol
            })
        })
}

/// Doubles the radius from 8 up to 128 until the solution sets at `R` and
/// `2R` coincide and every zero found lies within `R/2`. Returns the radius,
/// the stability flag and the enumeration at that radius.
pub fn select_radius_with_set(
    p: &Problem,
    cfg: &SolverConfig,
    starts: usize,
    seed: u64,
) -> Result<(f64, bool, Enumeration)> {
    let mut r = INITIAL_RADIUS;
    let mut current = enumerate_solutions(p, r, starts, cfg, seed)?;
    while r < MAX_RADIUS {
        let next = enumerate_solutions(p, 2.0 * r, starts, cfg, seed)?;
        let interior = current.solutions.iter().all(|s| s.u.inf_norm() <= 0.5 * r);
        if interior && same_set(&current, &next, cfg) {
            return Ok((r, true, current));
        }
        r *= 2.0;
        current = next;
    }
    Ok((r, false, current))
}

/// Radius and stability flag only; see [`select_radius_with_set`].
pub fn select_radius(p: &Problem, cfg: &SolverConfig, starts: usize, seed: u64) -> Result<(f64, bool)> {
    select_radius_with_set(p, cfg, starts, seed).map(|(r, s, _)| (r, s))
}

fn numeric_core(
    p: &Problem,
    formula_at: &dyn Fn(f64) -> Option<i32>,
    mut notes: Vec<String>,
    cfg: &SolverConfig,
    starts: usize,
    seed: u64,
) -> Result<DegreeReport> {
    let formula = formula_at(p.c);
    let (radius, stable, mut enumeration) = select_radius_with_set(p, cfg, starts, seed)?;
    let mut report = DegreeReport {
        formula_degree: formula,
        numeric_degree: None,
        solutions: Vec::new(),
        radius,
        radius_stable: stable,
        agreement: Agreement::FormulaOnly,
        notes: Vec::new(),
        perturbed_c: None,
        seed,
        starts: enumeration.starts,
        failures: enumeration.failures,
    };
    if !stable {
        notes.push(format!("solution set did not stabilise up to radius {MAX_RADIUS}"));
    } else if enumeration.solutions.iter().any(|s| s.det_sign == 0) {
        let mut resolved = false;
        'ladder: for delta in MORSE_PERTURBATIONS {
            for c in [p.c + delta, p.c - delta] {
                if formula.is_some() && formula_at(c) != formula {
                    notes.push(format!(
                        "degenerate zero at c = {}, which sits on a table boundary; not perturbed",
                        p.c
                    ));
                    break 'ladder;
                }
                let e = enumerate_solutions(&p.with_c(c), radius, starts, cfg, seed)?;
                if e.solutions.iter().all(|s| s.det_sign != 0) {
                    notes.push(format!("degenerate zero; c perturbed to {c:e} for the signed count"));
                    report.perturbed_c = Some(c);
                    enumeration = e;
                    resolved = true;
                    break 'ladder;
                }
            }
        }
        if !resolved && report.perturbed_c.is_none() && !notes.iter().any(|n| n.contains("boundary")) {
            notes.push("degenerate zero persisted under every perturbation of c".into());
        }
        if resolved {
            report.numeric_degree = Some(enumeration.solutions.iter().map(|s| i32::from(s.det_sign)).sum());
        }
    } else {
        report.numeric_degree = Some(enumeration.solutions.iter().map(|s| i32::from(s.det_sign)).sum());
    }
    report.failures = enumeration.failures;
    report.solutions = enumeration.solutions;
    report.agreement = agreement(report.formula_degree, report.numeric_degree);
    report.notes = notes;
    Ok(report)
}

/// Numeric degree of the sinh-Gordon map, compared with [`degree_formula`].
pub fn degree_numeric(p: &Problem, cfg: &SolverConfig, starts: usize, seed: u64) -> Result<DegreeReport> {
    let (_, route) = degree_formula_routed(p)?;
    let mut notes = vec![format!("formula route: {}", route.describe())];
    if route == FormulaRoute::NonposNonneg && p.classify_signs() == SignClass::HplusNonposHminusNonneg {
        notes.push("V0 is empty; the matched-set formula (-1)^0 = 1 gives the same value".into());
    }
    let formula_at = |c: f64| degree_formula(&p.with_c(c)).ok();
    numeric_core(p, &formula_at, notes, cfg, starts, seed)
}

/// Numeric degree of the Kazdan-Warner map, compared with [`kw_degree_formula`].
pub fn kw_degree_numeric(p: &KwProblem, cfg: &SolverConfig, starts: usize, seed: u64) -> Result<DegreeReport> {
    if p.h.is_zero() {
        return Err(Error::ZeroH);
    }
    let formula_at = |c: f64| kw_degree_formula(&p.with_c(c)).ok();
    numeric_core(&p.to_problem(), &formula_at, Vec::new(), cfg, starts, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn p2(hp: &[f64], hm: &[f64], c: f64) -> Problem {
        Problem::new(Graph::path(2).unwrap(), hp.to_vec().into(), hm.to_vec().into(), c).unwrap()
    }

    #[test]
    fn radius_for_case4_and_case2() {
        let cfg = SolverConfig::default();
        let (r, stable) = select_radius(&p2(&[1.0, 1.0], &[-1.0, -1.0], 1.0), &cfg, 200, 42).unwrap();
        assert_eq!((r, stable), (8.0, true));
        let (r2, stable2) = select_radius(&p2(&[1.0, 0.0], &[0.0, -1.0], 1.0), &cfg, 200, 42).unwrap();
        assert_eq!((r2, stable2), (8.0, true));
    }

    #[test]
    fn case1_and_case2_reports() {
        let cfg = SolverConfig::default();
        let r1 = degree_numeric(&p2(&[1.0, 0.0], &[-1.0, 0.0], 1.0), &cfg, 200, 42).unwrap();
        assert_eq!((r1.formula_degree, r1.numeric_degree), (Some(-1), Some(-1)));
        assert_eq!(r1.agreement, Agreement::Match);
        let r2 = degree_numeric(&p2(&[1.0, 0.0], &[0.0, -1.0], 1.0), &cfg, 200, 42).unwrap();
        assert!(r2.solutions.is_empty());
        assert_eq!((r2.numeric_degree, r2.agreement), (Some(0), Agreement::Match));
    }

    #[test]
    fn degenerate_case4_is_perturbed() {
        let r = degree_numeric(&p2(&[1.0, 1.0], &[-1.0, -1.0], 0.0), &SolverConfig::default(), 200, 42).unwrap();
        assert!(r.perturbed_c.is_some());
        assert_eq!(r.numeric_degree, Some(1));
        assert_eq!(r.agreement, Agreement::Match);
    }

    #[test]
    fn both_zero_rejected() {
        assert_eq!(
            degree_numeric(&p2(&[0.0, 0.0], &[0.0, 0.0], 0.0), &SolverConfig::default(), 10, 0),
            Err(Error::BothZero)
        );
    }
}
