//! Closed-form degree tables.

use crate::error::{Error, Result};
use crate::model::{KwProblem, Problem, SignClass};

/// Which row of the sign-class routing produced a formula degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaRoute {
    /// `{h₊ > 0} = {h₋ < 0} = V₀ ≠ ∅`: `(-1)^{#V₀}`.
    MatchedSets,
    /// Both functions nonzero, sign sets differ: 0.
    MismatchedSets,
    /// `h₊ ≤ 0`, `h₋ ≥ 0`, at most one of them identically zero.
    NonposNonneg,
    /// `max h₊ > 0`, `h₋ ≥ 0`.
    PositivePartNonneg,
    /// `h₊ ≤ 0`, `min h₋ < 0`.
    NonposNegativePart,
}

impl FormulaRoute {
    pub fn describe(self) -> &'static str {
        match self {
            Self::MatchedSets => "matched sign sets {h+>0} = {h-<0}: degree (-1)^#V0",
            Self::MismatchedSets => "h+ and h- nonzero with {h+>0} != {h-<0}: degree 0",
            Self::NonposNonneg => "h+ <= 0, h- >= 0 table",
            Self::PositivePartNonneg => "max h+ > 0, h- >= 0 table",
            Self::NonposNegativePart => "h+ <= 0, min h- < 0 table",
        }
    }
}

/// Degree of the sinh-Gordon residual map from the sign pattern of `(h₊, h₋)` and `c`.
pub fn degree_formula(p: &Problem) -> Result<i32> {
    degree_formula_routed(p).map(|(d, _)| d)
}

/// [`degree_formula`] together with the table row that produced it.
pub fn degree_formula_routed(p: &Problem) -> Result<(i32, FormulaRoute)> {
    if p.both_zero() {
        return Err(Error::BothZero);
    }
    let c = p.c;
    Ok(match p.classify_signs() {
        SignClass::V0Matched(v0) => {
            let d = if v0.len() % 2 == 0 { 1 } else { -1 };
            (d, FormulaRoute::MatchedSets)
        }
        SignClass::Mismatched => (0, FormulaRoute::MismatchedSets),
        SignClass::HplusNonposHminusNonneg => (1, FormulaRoute::NonposNonneg),
        SignClass::HplusChangesHminusNonneg => (0, FormulaRoute::PositivePartNonneg),
        SignClass::HplusNonposHminusChanges => (0, FormulaRoute::NonposNegativePart),
        SignClass::ZeroFunctionPresent => {
            if p.h_plus.is_zero() {
                if p.h_minus.min() >= 0.0 {
                    (i32::from(c > 0.0), FormulaRoute::NonposNonneg)
                } else {
                    let int_hm = p.graph.integrate_unchecked(&p.h_minus);
                    let d = if c < 0.0 || (c == 0.0 && int_hm > 0.0) { -1 } else { 0 };
                    (d, FormulaRoute::NonposNegativePart)
                }
            } else if p.h_plus.max() <= 0.0 {
                (i32::from(c < 0.0), FormulaRoute::NonposNonneg)
            } else {
                let int_hp = p.graph.integrate_unchecked(&p.h_plus);
                let d = if c > 0.0 || (c == 0.0 && int_hp < 0.0) { -1 } else { 0 };
                (d, FormulaRoute::PositivePartNonneg)
            }
        }
    })
}

/// Degree of the Kazdan-Warner map `K(u) = -Δu - heᵘ + c`.
///
/// | condition                      | degree |
/// |--------------------------------|--------|
/// | `c > 0`, `max h > 0`           | -1     |
/// | `c = 0`, `h̄ < 0 < max h`       | -1     |
/// | `c < 0`, `h ≤ 0` (`h ≢ 0`)     | +1     |
/// | otherwise                      | 0      |
pub fn kw_degree_formula(p: &KwProblem) -> Result<i32> {
    if p.h.is_zero() {
        return Err(Error::ZeroH);
    }
    let max = p.h.max();
    Ok(if p.c > 0.0 {
        if max > 0.0 {
            -1
        } else {
            0
        }
    } else if p.c == 0.0 {
        if p.mean_h() < 0.0 && max > 0.0 {
            -1
        } else {
            0
        }
    } else if max <= 0.0 {
        1
    } else {
        0
    })
}
