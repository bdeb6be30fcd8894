//! Finite, connected, symmetric weighted graphs and their discrete calculus.
//!
//! A [`Graph`] carries a positive vertex measure `mu` and symmetric,
//! non-negative edge weights `w`. The Laplacian is
//!
//! ```text
//! Δu(x) = (1/μ_x) Σ_{y~x} w_xy (u(y) - u(x))
//! ```
//!
//! and the gradient form is `Γ(u,v)(x) = (1/2μ_x) Σ_y w_xy (u(y)-u(x))(v(y)-v(x))`,
//! so that Green's formula `∫ Δu·v dμ = -∫ Γ(u,v) dμ` holds exactly.

use std::collections::{HashMap, VecDeque};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::function::VertexFunction;

/// Weighted graph with vertex measure. Always valid once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    mu: Vec<f64>,
    weights: DMatrix<f64>,
}

/// Constants of the refined elliptic estimate `osc u ≤ chain_factor · B · max Δu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticConstants {
    pub a: f64,
    pub b: f64,
    /// `1 + A + … + A^{#V-2}`, summed term by term.
    pub chain_factor: f64,
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl Graph {
    /// Builds a graph from an edge list `(x, y, w)`; each unordered pair at most once.
    pub fn from_edges(labels: Vec<String>, mu: Vec<f64>, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let n = mu.len();
        if labels.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: labels.len(),
            });
        }
        let mut weights = DMatrix::zeros(n, n);
        for &(x, y, w) in edges {
            if x >= n {
                return Err(Error::VertexOutOfRange(x));
            }
            if y >= n {
                return Err(Error::VertexOutOfRange(y));
            }
            if x == y {
                return Err(Error::SelfLoop {
                    vertex: labels[x].clone(),
                });
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidWeight {
                    x: labels[x].clone(),
                    y: labels[y].clone(),
                    w,
                });
            }
            if weights[(x, y)] != 0.0 {
                return Err(Error::DuplicateEdge {
                    x: labels[x].clone(),
                    y: labels[y].clone(),
                });
            }
            weights[(x, y)] = w;
            weights[(y, x)] = w;
        }
        let g = Self { labels, mu, weights };
        g.validate()?;
        Ok(g)
    }

    /// Builds a graph from a dense weight matrix, labelling vertices `x1, x2, …`.
    pub fn from_weight_matrix(mu: Vec<f64>, weights: DMatrix<f64>) -> Result<Self> {
        let n = mu.len();
        if weights.nrows() != n || weights.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: weights.nrows(),
            });
        }
        let g = Self {
            labels: default_labels(n),
            mu,
            weights,
        };
        g.validate()?;
        Ok(g)
    }

    /// Unit-weight graph with the given measure and edge list.
    pub fn unweighted(mu: Vec<f64>, edges: &[(usize, usize)]) -> Result<Self> {
        let e: Vec<_> = edges.iter().map(|&(x, y)| (x, y, 1.0)).collect();
        Self::from_edges(default_labels(mu.len()), mu, &e)
    }

    /// Path `x1 - x2 - … - xn` with unit weights and unit measure.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::unweighted(vec![1.0; n], &edges)
    }

    /// Complete graph with unit weights and unit measure.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Self::unweighted(vec![1.0; n], &edges)
    }

    /// Checks symmetry, zero diagonal, positive measure and connectivity.
    pub fn validate(&self) -> Result<()> {
        let n = self.mu.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        for (x, &m) in self.mu.iter().enumerate() {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::NonpositiveMeasure {
                    vertex: self.labels[x].clone(),
                    mu: m,
                });
            }
        }
        for x in 0..n {
            if self.weights[(x, x)] != 0.0 {
                return Err(Error::SelfLoop {
                    vertex: self.labels[x].clone(),
                });
            }
            for y in 0..n {
                let w = self.weights[(x, y)];
                if !(w.is_finite() && w >= 0.0) {
                    return Err(Error::InvalidWeight {
                        x: self.labels[x].clone(),
                        y: self.labels[y].clone(),
                        w,
                    });
                }
                if w != self.weights[(y, x)] {
                    return Err(Error::AsymmetricWeights {
                        x: self.labels[x].clone(),
                        y: self.labels[y].clone(),
                        wxy: w,
                        wyx: self.weights[(y, x)],
                    });
                }
            }
        }
        let dist = self.bfs(0);
        if let Some(y) = dist.iter().position(Option::is_none) {
            return Err(Error::Disconnected {
                from: self.labels[0].clone(),
                to: self.labels[y].clone(),
            });
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.mu.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn label_map(&self) -> HashMap<&str, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn weight(&self, x: usize, y: usize) -> f64 {
        self.weights[(x, y)]
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.weights
    }

    /// Neighbours of `x` (positive-weight edges).
    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&y| self.weights[(x, y)] > 0.0)
    }

    /// Weighted degree `Σ_{y~x} w_xy`.
    pub fn degree(&self, x: usize) -> f64 {
        self.weights.row(x).sum()
    }

    /// Edges `(x, y, w)` with `x < y`.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                let w = self.weights[(x, y)];
                if w > 0.0 {
                    out.push((x, y, w));
                }
            }
        }
        out
    }

    pub fn total_measure(&self) -> f64 {
        self.mu.iter().sum()
    }

    /// Returns a copy with every weight and measure multiplied by `factor > 0`.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        let g = Self {
            labels: self.labels.clone(),
            mu: self.mu.iter().map(|m| m * factor).collect(),
            weights: &self.weights * factor,
        };
        g.validate()?;
        Ok(g)
    }

    fn check(&self, u: &VertexFunction) -> Result<()> {
        u.check_len(self.vertex_count())
    }

    pub fn laplacian(&self, u: &VertexFunction) -> Result<VertexFunction> {
        self.check(u)?;
        Ok(self.laplacian_unchecked(u))
    }

    pub(crate) fn laplacian_unchecked(&self, u: &[f64]) -> VertexFunction {
        let n = self.vertex_count();
        VertexFunction::from_fn(n, |x| {
            let s: f64 = (0..n)
                .map(|y| self.weights[(x, y)] * (u[y] - u[x]))
                .sum();
            s / self.mu[x]
        })
    }

    /// Dense matrix `M` with `M u = Δu`.
    pub fn laplacian_matrix(&self) -> DMatrix<f64> {
        let n = self.vertex_count();
        DMatrix::from_fn(n, n, |x, y| {
            if x == y {
                -self.degree(x) / self.mu[x]
            } else {
                self.weights[(x, y)] / self.mu[x]
            }
        })
    }

    /// `∫ f dμ = Σ_x f(x) μ_x`.
    pub fn integrate(&self, f: &VertexFunction) -> Result<f64> {
        self.check(f)?;
        Ok(self.integrate_unchecked(f))
    }

    pub(crate) fn integrate_unchecked(&self, f: &[f64]) -> f64 {
        f.iter().zip(&self.mu).map(|(v, m)| v * m).sum()
    }

    /// Gradient form Γ(u, v).
    pub fn gradient_form(&self, u: &VertexFunction, v: &VertexFunction) -> Result<VertexFunction> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.gradient_form_unchecked(u, v))
    }

    pub(crate) fn gradient_form_unchecked(&self, u: &[f64], v: &[f64]) -> VertexFunction {
        let n = self.vertex_count();
        VertexFunction::from_fn(n, |x| {
            let s: f64 = (0..n)
                .map(|y| self.weights[(x, y)] * (u[y] - u[x]) * (v[y] - v[x]))
                .sum();
            s / (2.0 * self.mu[x])
        })
    }

    /// `|∇u|² = Γ(u, u)`.
    pub fn grad_norm_sq(&self, u: &VertexFunction) -> Result<VertexFunction> {
        self.gradient_form(u, u)
    }

    pub fn elliptic_constants(&self) -> Result<EllipticConstants> {
        let n = self.vertex_count();
        let mut a = f64::NEG_INFINITY;
        let mut b = f64::NEG_INFINITY;
        for x in 0..n {
            let deg = self.degree(x);
            for y in self.neighbors(x) {
                let w = self.weights[(y, x)];
                a = a.max(deg / w);
                b = b.max(self.mu[x] / w);
            }
        }
        if !a.is_finite() {
            return Err(Error::NoEdges);
        }
        // 1 + A + ... + A^{n-2}; an empty sum would only arise for n = 1, which has no edges.
        let mut chain_factor = 0.0;
        let mut term = 1.0;
        for _ in 0..n.saturating_sub(1) {
            chain_factor += term;
            term *= a;
        }
        Ok(EllipticConstants { a, b, chain_factor })
    }

    /// Symmetric form `D^{1/2}(-Δ)D^{-1/2}` of the negative Laplacian.
    pub(crate) fn symmetrized_neg_laplacian(&self) -> DMatrix<f64> {
        let n = self.vertex_count();
        DMatrix::from_fn(n, n, |x, y| {
            if x == y {
                self.degree(x) / self.mu[x]
            } else {
                -self.weights[(x, y)] / (self.mu[x] * self.mu[y]).sqrt()
            }
        })
    }

    /// Spectrum of `-Δ`, ascending.
    pub fn neg_laplacian_spectrum(&self) -> Vec<f64> {
        let eig = SymmetricEigen::new(self.symmetrized_neg_laplacian());
        let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Largest eigenvalue Λ of `-Δ`.
    pub fn largest_laplacian_eigenvalue(&self) -> f64 {
        self.neg_laplacian_spectrum()
            .last()
            .copied()
            .unwrap_or(0.0)
            .max(0.0)
    }

    fn bfs(&self, from: usize) -> Vec<Option<(usize, usize)>> {
        // (distance, predecessor)
        let n = self.vertex_count();
        let mut seen = vec![None; n];
        seen[from] = Some((0, from));
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            let d = seen[x].map(|(d, _)| d).unwrap_or(0);
            for y in self.neighbors(x) {
                if seen[y].is_none() {
                    seen[y] = Some((d + 1, x));
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Minimal-edge-count path from `a` to `b`, both endpoints included.
    pub fn shortest_path(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        let n = self.vertex_count();
        if a >= n {
            return Err(Error::VertexOutOfRange(a));
        }
        if b >= n {
            return Err(Error::VertexOutOfRange(b));
        }
        let seen = self.bfs(a);
        if seen[b].is_none() {
            return Err(Error::Disconnected {
                from: self.labels[a].clone(),
                to: self.labels[b].clone(),
            });
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = seen[cur].map(|(_, p)| p).unwrap_or(a);
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }
}
