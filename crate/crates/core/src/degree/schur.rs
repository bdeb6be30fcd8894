//! Harmonic extension off a vertex subset and the induced operator on it.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::graph::Graph;
use crate::linalg;
use crate::model::{Problem, SignClass};

/// A vertex subset `v0` and its complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct V0Decomposition {
    pub v0: Vec<usize>,
    pub complement: Vec<usize>,
}

impl V0Decomposition {
    /// Sorts and deduplicates `v0`; rejects empty subsets and bad indices.
    pub fn new(n: usize, v0: &[usize]) -> Result<Self> {
        let mut v0 = v0.to_vec();
        v0.sort_unstable();
        v0.dedup();
        if v0.is_empty() {
            return Err(Error::EmptyV0);
        }
        if let Some(&x) = v0.iter().find(|&&x| x >= n) {
            return Err(Error::VertexOutOfRange(x));
        }
        let complement = (0..n).filter(|x| v0.binary_search(x).is_err()).collect();
        Ok(Self { v0, complement })
    }

    /// `{h₊ > 0} = {h₋ < 0}`, when those sets agree and are nonempty.
    pub fn from_problem(p: &Problem) -> Result<Self> {
        match p.classify_signs() {
            SignClass::V0Matched(v0) => Self::new(p.vertex_count(), &v0),
            _ => Err(Error::PreconditionFailed(
                "{h+ > 0} and {h- < 0} do not coincide".into(),
            )),
        }
    }
}

/// The function equal to `phi` on `v0` and harmonic (`Δu = 0`) elsewhere.
/// `phi[i]` is the value at `v0[i]` after sorting.
pub fn harmonic_extension(g: &Graph, v0: &[usize], phi: &[f64]) -> Result<VertexFunction> {
    let d = V0Decomposition::new(g.vertex_count(), v0)?;
    if phi.len() != d.v0.len() {
        return Err(Error::DimensionMismatch {
            expected: d.v0.len(),
            found: phi.len(),
        });
    }
    let n = g.vertex_count();
    let lap = g.laplacian_matrix();
    let mut a = DMatrix::zeros(n, n);
    let mut b = DVector::zeros(n);
    for &x in &d.complement {
        a.set_row(x, &lap.row(x));
    }
    for (i, &x) in d.v0.iter().enumerate() {
        a[(x, x)] = 1.0;
        b[x] = phi[i];
    }
    let u = linalg::solve(&a, &b).ok_or(Error::SingularSystem)?;
    Ok(VertexFunction::from(u))
}

/// Matrix of `φ ↦ (Δ Pφ)|_{v0}` where `P` is [`harmonic_extension`];
/// rows and columns follow sorted `v0`.
pub fn schur_operator(g: &Graph, v0: &[usize]) -> Result<DMatrix<f64>> {
    let d = V0Decomposition::new(g.vertex_count(), v0)?;
    let k = d.v0.len();
    let mut l = DMatrix::zeros(k, k);
    for j in 0..k {
        let mut e = vec![0.0; k];
        e[j] = 1.0;
        let ext = harmonic_extension(g, &d.v0, &e)?;
        let lap = g.laplacian_unchecked(&ext);
        for (i, &x) in d.v0.iter().enumerate() {
            l[(i, j)] = lap[x];
        }
    }
    Ok(l)
}
