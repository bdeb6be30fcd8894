//! Solution counts along a grid of `c`, and a bisection estimate of the
//! solvability threshold.

use serde::{Deserialize, Serialize};

use crate::degree::degree_formula;
use crate::error::{Error, Result};
use crate::model::Problem;
use crate::solver::{enumerate_solutions, SolverConfig};

/// Resolution of the threshold bisection in `c`.
pub const CSTAR_RESOLUTION: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub c: f64,
    pub n_solutions: usize,
    /// `None` when some zero is degenerate.
    pub numeric_degree: Option<i32>,
    pub formula_degree: Option<i32>,
    /// Smallest residual among the zeros; `None` without zeros.
    pub min_residual: Option<f64>,
}

/// Bisection result: no zeros were found at `unsolvable`, some at `solvable`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    pub c_star: f64,
    pub unsolvable: f64,
    pub solvable: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub radius: f64,
    pub starts: usize,
    pub seed: u64,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            radius: 16.0,
            starts: 300,
            seed: 42,
        }
    }
}

/// `steps` equally spaced values from `lo` to `hi` inclusive; empty when
/// `steps = 0` or `lo > hi`.
pub fn c_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 0 || lo > hi {
        return Vec::new();
    }
    if steps == 1 {
        return vec![lo];
    }
    let h = (hi - lo) / (steps - 1) as f64;
    (0..steps).map(|i| if i + 1 == steps { hi } else { lo + i as f64 * h }).collect()
}

pub fn sweep_row(p: &Problem, c: f64, cfg: &SolverConfig, s: &SweepSettings) -> Result<SweepRow> {
    let q = p.with_c(c);
    let e = enumerate_solutions(&q, s.radius, s.starts, cfg, s.seed)?;
    let numeric_degree = e
        .solutions
        .iter()
        .all(|s| s.det_sign != 0)
        .then(|| e.solutions.iter().map(|s| i32::from(s.det_sign)).sum());
    let min_residual = e.solutions.iter().map(|s| s.residual_inf_norm).reduce(f64::min);
    Ok(SweepRow {
        c,
        n_solutions: e.solutions.len(),
        numeric_degree,
        formula_degree: degree_formula(&q).ok(),
        min_residual,
    })
}

/// One row per grid value of `c`; the rest of `p` is held fixed.
pub fn sweep_c(p: &Problem, grid: &[f64], cfg: &SolverConfig, s: &SweepSettings) -> Result<Vec<SweepRow>> {
    grid.iter().map(|&c| sweep_row(p, c, cfg, s)).collect()
}

/// Bisects between the first adjacent grid pair going from no zeros to some
/// zeros, down to [`CSTAR_RESOLUTION`]. This estimates the threshold from
/// the enumeration; it is not the infimum itself.
pub fn estimate_threshold(
    p: &Problem,
    rows: &[SweepRow],
    cfg: &SolverConfig,
    s: &SweepSettings,
) -> Result<Option<ThresholdEstimate>> {
    let Some(k) = rows
        .windows(2)
        .position(|w| w[0].n_solutions == 0 && w[1].n_solutions > 0)
    else {
        return Ok(None);
    };
    let (mut lo, mut hi) = (rows[k].c, rows[k + 1].c);
    while hi - lo > CSTAR_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if enumerate_solutions(&p.with_c(mid), s.radius, s.starts, cfg, s.seed)?.solutions.is_empty() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(ThresholdEstimate {
        c_star: 0.5 * (lo + hi),
        unsolvable: lo,
        solvable: hi,
    }))
}

/// CSV with the columns `c,n_solutions,numeric_degree,formula_degree,min_residual`;
/// missing values are left empty.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(["c", "n_solutions", "numeric_degree", "formula_degree", "min_residual"])
        .expect("writing to memory");
    for r in rows {
        w.serialize(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV output is UTF-8")
}

pub fn validate_range(lo: f64, hi: f64) -> Result<()> {
    if lo.is_finite() && hi.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("range [{lo}, {hi}] is not finite")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn case4() -> Problem {
        Problem::new(Graph::path(2).unwrap(), vec![1.0; 2].into(), vec![-1.0; 2].into(), 0.0).unwrap()
    }

    #[test]
    fn grid_shapes() {
        assert_eq!(c_grid(-2.0, 2.0, 5), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(c_grid(1.0, 1.0, 1), vec![1.0]);
        assert!(c_grid(1.0, 0.0, 4).is_empty());
        assert!(c_grid(0.0, 1.0, 0).is_empty());
    }

    #[test]
    fn case4_one_solution_everywhere() {
        let s = SweepSettings {
            starts: 100,
            ..SweepSettings::default()
        };
        let rows = sweep_c(&case4(), &c_grid(-2.0, 2.0, 9), &SolverConfig::default(), &s).unwrap();
        assert_eq!(rows.len(), 9);
        for r in &rows {
            assert_eq!(r.n_solutions, 1, "c = {}", r.c);
            assert_eq!(r.formula_degree, Some(1));
        }
        assert_eq!(rows[0].numeric_degree, Some(1));
    }

    #[test]
    fn csv_layout() {
        let rows = vec![SweepRow {
            c: 0.5,
            n_solutions: 0,
            numeric_degree: Some(0),
            formula_degree: None,
            min_residual: None,
        }];
        assert_eq!(
            rows_to_csv(&rows),
            "c,n_solutions,numeric_degree,formula_degree,min_residual\n0.5,0,0,,\n"
        );
        assert_eq!(rows_to_csv(&[]).lines().count(), 1);
    }

    #[test]
    fn no_transition_no_threshold() {
        let rows = vec![];
        let est = estimate_threshold(&case4(), &rows, &SolverConfig::default(), &SweepSettings::default()).unwrap();
        assert!(est.is_none());
    }
}
