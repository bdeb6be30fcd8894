//! The sinh-Gordon residual map `F(u) = -Δu - h₊eᵘ - h₋e⁻ᵘ + c`, its
//! Jacobian and energy, and the Kazdan-Warner specialisation
//! `K(u) = -Δu - heᵘ + c`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::graph::Graph;

/// Largest |u| accepted before `exp` is considered to overflow.
pub const OVERFLOW_GUARD: f64 = 700.0;

/// One sinh-Gordon instance `-Δu = h₊eᵘ + h₋e⁻ᵘ - c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub graph: Graph,
    pub h_plus: VertexFunction,
    pub h_minus: VertexFunction,
    pub c: f64,
}

/// One Kazdan-Warner instance `-Δu = heᵘ - c`.
#[derive(Debug, Clone, PartialEq)]
pub struct KwProblem {
    pub graph: Graph,
    pub h: VertexFunction,
    pub c: f64,
}

/// Sign pattern of `(h₊, h₋)`; decides which degree table applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", content = "v0", rename_all = "snake_case")]
pub enum SignClass {
    /// `{h₊ > 0} = {h₋ < 0} = V₀ ≠ ∅`.
    V0Matched(Vec<usize>),
    /// `max h₊ > 0`, `min h₋ < 0` and `{h₊ > 0} ≠ {h₋ < 0}`.
    Mismatched,
    HplusNonposHminusNonneg,
    /// `max h₊ > 0`, `h₋ ≥ 0`, both nonzero.
    HplusChangesHminusNonneg,
    /// `h₊ ≤ 0`, `min h₋ < 0`, both nonzero.
    HplusNonposHminusChanges,
    /// `h₊ ≡ 0` or `h₋ ≡ 0`.
    ZeroFunctionPresent,
}

fn guard(u: &[f64]) -> Result<()> {
    match u.iter().find(|v| v.abs() > OVERFLOW_GUARD) {
        Some(&v) => Err(Error::Overflow(v)),
        None => Ok(()),
    }
}

impl Problem {
    pub fn new(graph: Graph, h_plus: VertexFunction, h_minus: VertexFunction, c: f64) -> Result<Self> {
        let n = graph.vertex_count();
        h_plus.check_len(n)?;
        h_minus.check_len(n)?;
        if !c.is_finite() {
            return Err(Error::Parse(format!("c must be finite, got {c}")));
        }
        Ok(Self {
            graph,
            h_plus,
            h_minus,
            c,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Same data with a different constant `c`.
    pub fn with_c(&self, c: f64) -> Self {
        Self { c, ..self.clone() }
    }

    pub fn both_zero(&self) -> bool {
        self.h_plus.is_zero() && self.h_minus.is_zero()
    }

    pub fn residual(&self, u: &VertexFunction) -> Result<VertexFunction> {
        u.check_len(self.vertex_count())?;
        guard(u)?;
        Ok(self.residual_unchecked(u))
    }

    pub(crate) fn residual_unchecked(&self, u: &[f64]) -> VertexFunction {
        let lap = self.graph.laplacian_unchecked(u);
        VertexFunction::from_fn(u.len(), |x| {
            -lap[x] - self.h_plus[x] * u[x].exp() - self.h_minus[x] * (-u[x]).exp() + self.c
        })
    }

    /// Dense `dF(u) = -Δ - diag(h₊eᵘ) + diag(h₋e⁻ᵘ)`.
    pub fn jacobian(&self, u: &VertexFunction) -> Result<DMatrix<f64>> {
        u.check_len(self.vertex_count())?;
        guard(u)?;
        Ok(self.jacobian_unchecked(u))
    }

    pub(crate) fn jacobian_unchecked(&self, u: &[f64]) -> DMatrix<f64> {
        let mut j = -self.graph.laplacian_matrix();
        for x in 0..u.len() {
            j[(x, x)] += -self.h_plus[x] * u[x].exp() + self.h_minus[x] * (-u[x]).exp();
        }
        j
    }

    /// `J(u) = ∫ (½|∇u|² - h₊eᵘ + h₋e⁻ᵘ + cu) dμ`.
    pub fn energy(&self, u: &VertexFunction) -> Result<f64> {
        u.check_len(self.vertex_count())?;
        guard(u)?;
        Ok(self.energy_unchecked(u))
    }

    pub(crate) fn energy_unchecked(&self, u: &[f64]) -> f64 {
        let grad = self.graph.gradient_form_unchecked(u, u);
        let density = VertexFunction::from_fn(u.len(), |x| {
            0.5 * grad[x] - self.h_plus[x] * u[x].exp() + self.h_minus[x] * (-u[x]).exp() + self.c * u[x]
        });
        self.graph.integrate_unchecked(&density)
    }

    pub fn classify_signs(&self) -> SignClass {
        classify(&self.h_plus, &self.h_minus)
    }

    /// `V₊ = {h₊ > 0}`.
    pub fn v_plus(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&x| self.h_plus[x] > 0.0).collect()
    }

    /// `V₋ = {h₋ < 0}`.
    pub fn v_minus(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&x| self.h_minus[x] < 0.0).collect()
    }
}

pub(crate) fn classify(h_plus: &VertexFunction, h_minus: &VertexFunction) -> SignClass {
    if h_plus.is_zero() || h_minus.is_zero() {
        return SignClass::ZeroFunctionPresent;
    }
    let max_hp = h_plus.max();
    let min_hm = h_minus.min();
    match (max_hp > 0.0, min_hm < 0.0) {
        (false, false) => SignClass::HplusNonposHminusNonneg,
        (true, true) => {
            let vp: Vec<usize> = (0..h_plus.len()).filter(|&x| h_plus[x] > 0.0).collect();
            let vm: Vec<usize> = (0..h_minus.len()).filter(|&x| h_minus[x] < 0.0).collect();
            if vp == vm {
                SignClass::V0Matched(vp)
            } else {
                SignClass::Mismatched
            }
        }
        (true, false) => SignClass::HplusChangesHminusNonneg,
        (false, true) => SignClass::HplusNonposHminusChanges,
    }
}

impl KwProblem {
    pub fn new(graph: Graph, h: VertexFunction, c: f64) -> Result<Self> {
        h.check_len(graph.vertex_count())?;
        if !c.is_finite() {
            return Err(Error::Parse(format!("c must be finite, got {c}")));
        }
        Ok(Self { graph, h, c })
    }

    pub fn with_c(&self, c: f64) -> Self {
        Self { c, ..self.clone() }
    }

    /// `K(u) = -Δu - heᵘ + c`.
    pub fn residual(&self, u: &VertexFunction) -> Result<VertexFunction> {
        u.check_len(self.graph.vertex_count())?;
        guard(u)?;
        let lap = self.graph.laplacian_unchecked(u);
        Ok(VertexFunction::from_fn(u.len(), |x| {
            -lap[x] - self.h[x] * u[x].exp() + self.c
        }))
    }

    /// The same equation as a sinh-Gordon problem with `h₋ ≡ 0`.
    pub fn to_problem(&self) -> Problem {
        Problem {
            graph: self.graph.clone(),
            h_plus: self.h.clone(),
            h_minus: VertexFunction::zeros(self.graph.vertex_count()),
            c: self.c,
        }
    }

    /// `h̄ = ∫h dμ / ∫1 dμ`.
    pub fn mean_h(&self) -> f64 {
        self.graph.integrate_unchecked(&self.h) / self.graph.total_measure()
    }
}
