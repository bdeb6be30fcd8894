//! JSON formats for graphs and problems.
//!
//! ```json
//! {"vertices": [{"id": "x1", "mu": 1.0}, {"id": "x2", "mu": 1.0}],
//!  "edges": [{"u": "x1", "v": "x2", "w": 1.0}],
//!  "h_plus": {"x1": 1.0, "x2": 0.0}, "h_minus": {"x1": -1.0, "x2": 0.0},
//!  "c": 1.0}
//! ```
//!
//! A Kazdan-Warner problem has `"h"` in place of `"h_plus"`/`"h_minus"`. An
//! optional `"solver"` object overrides [`SolverConfig`] fields.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::graph::Graph;
use crate::model::{KwProblem, Problem};
use crate::solver::SolverConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub u: String,
    pub v: String,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(flatten)]
    pub graph: GraphFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_plus: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_minus: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<BTreeMap<String, f64>>,
    pub c: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverConfig>,
}

/// A parsed problem file.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    SinhGordon(Problem),
    KazdanWarner(KwProblem),
}

impl Input {
    /// The sinh-Gordon form; a Kazdan-Warner problem has `h₋ ≡ 0`.
    pub fn problem(&self) -> Problem {
        match self {
            Self::SinhGordon(p) => p.clone(),
            Self::KazdanWarner(k) => k.to_problem(),
        }
    }

    pub fn graph(&self) -> &Graph {
        match self {
            Self::SinhGordon(p) => &p.graph,
            Self::KazdanWarner(k) => &k.graph,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedProblem {
    pub input: Input,
    /// Present when the file carried a `"solver"` object.
    pub solver: Option<SolverConfig>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<Graph> {
        let mut index = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        let lookup = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.into()));
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let (x, y) = (lookup(&e.u)?, lookup(&e.v)?);
            if !seen.insert((x.min(y), x.max(y))) {
                return Err(Error::DuplicateEdge {
                    x: e.u.clone(),
                    y: e.v.clone(),
                });
            }
            edges.push((x, y, e.w));
        }
        let labels = self.vertices.iter().map(|v| v.id.clone()).collect();
        let mu = self.vertices.iter().map(|v| v.mu).collect();
        Graph::from_edges(labels, mu, &edges)
    }

    pub fn from_graph(g: &Graph) -> Self {
        let labels = g.labels();
        Self {
            vertices: labels
                .iter()
                .zip(g.mu())
                .map(|(id, &mu)| VertexEntry { id: id.clone(), mu })
                .collect(),
            edges: g
                .edges()
                .into_iter()
                .map(|(x, y, w)| EdgeEntry {
                    u: labels[x].clone(),
                    v: labels[y].clone(),
                    w,
                })
                .collect(),
        }
    }
}

fn vertex_function(g: &Graph, field: &str, map: &BTreeMap<String, f64>) -> Result<VertexFunction> {
    if let Some(k) = map.keys().find(|k| g.index_of(k).is_none()) {
        return Err(Error::UnknownVertex(k.clone()));
    }
    let values = g
        .labels()
        .iter()
        .map(|id| {
            map.get(id).copied().ok_or_else(|| Error::MissingValue {
                field: field.into(),
                vertex: id.clone(),
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    VertexFunction::new(values)
}

fn function_map(g: &Graph, f: &VertexFunction) -> BTreeMap<String, f64> {
    g.labels().iter().cloned().zip(f.iter().copied()).collect()
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    parse_json::<GraphFile>(text)?.to_graph()
}

pub fn parse_problem(text: &str) -> Result<ParsedProblem> {
    let file: ProblemFile = parse_json(text)?;
    let g = file.graph.to_graph()?;
    if let Some(cfg) = &file.solver {
        cfg.validate()?;
    }
    let input = match (&file.h, &file.h_plus, &file.h_minus) {
        (Some(h), None, None) => Input::KazdanWarner(KwProblem::new(g.clone(), vertex_function(&g, "h", h)?, file.c)?),
        (None, Some(hp), Some(hm)) => Input::SinhGordon(Problem::new(
            g.clone(),
            vertex_function(&g, "h_plus", hp)?,
            vertex_function(&g, "h_minus", hm)?,
            file.c,
        )?),
        _ => {
            return Err(Error::Parse(
                "expected either \"h\" or both \"h_plus\" and \"h_minus\"".into(),
            ))
        }
    };
    Ok(ParsedProblem {
        input,
        solver: file.solver,
    })
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphFile::from_graph(g)).expect("plain data serialises")
}

pub fn problem_to_json(p: &Problem) -> String {
    let file = ProblemFile {
        graph: GraphFile::from_graph(&p.graph),
        h_plus: Some(function_map(&p.graph, &p.h_plus)),
        h_minus: Some(function_map(&p.graph, &p.h_minus)),
        h: None,
        c: p.c,
        solver: None,
    };
    serde_json::to_string_pretty(&file).expect("plain data serialises")
}

pub fn kw_problem_to_json(p: &KwProblem) -> String {
    let file = ProblemFile {
        graph: GraphFile::from_graph(&p.graph),
        h_plus: None,
        h_minus: None,
        h: Some(function_map(&p.graph, &p.h)),
        c: p.c,
        solver: None,
    };
    serde_json::to_string_pretty(&file).expect("plain data serialises")
}

#[cfg(test)]
mod tests {
    use super::*;

    const CASE1: &str = r#"{
        "vertices": [{"id": "a", "mu": 1.0}, {"id": "b", "mu": 2.0}],
        "edges": [{"u": "a", "v": "b", "w": 0.5}],
        "h_plus": {"a": 1.0, "b": 0.0},
        "h_minus": {"a": -1.0, "b": 0.0},
        "c": 1.0
    }"#;

    #[test]
    fn parses_problem() {
        let parsed = parse_problem(CASE1).unwrap();
        let Input::SinhGordon(p) = parsed.input else { panic!("wrong kind") };
        assert_eq!(p.graph.labels(), ["a", "b"]);
        assert_eq!(p.graph.mu(), [1.0, 2.0]);
        assert_eq!(p.graph.weight(0, 1), 0.5);
        assert_eq!(p.h_minus.values(), [-1.0, 0.0]);
        assert!(parsed.solver.is_none());
    }

    #[test]
    fn parses_kw_and_solver() {
        let text = r#"{"vertices": [{"id": "x1", "mu": 1}, {"id": "x2", "mu": 1}],
            "edges": [{"u": "x1", "v": "x2", "w": 1}],
            "h": {"x1": 1, "x2": -1}, "c": 1, "solver": {"tol": 1e-10}}"#;
        let parsed = parse_problem(text).unwrap();
        assert!(matches!(parsed.input, Input::KazdanWarner(_)));
        let cfg = parsed.solver.unwrap();
        assert_eq!(cfg.tol, 1e-10);
        assert_eq!(cfg.max_iter, SolverConfig::default().max_iter);
    }

    #[test]
    fn round_trip() {
        let p = parse_problem(CASE1).unwrap().input.problem();
        let again = parse_problem(&problem_to_json(&p)).unwrap().input.problem();
        assert_eq!(p, again);
        assert_eq!(parse_graph(&graph_to_json(&p.graph)).unwrap(), p.graph);
    }

    #[test]
    fn input_errors() {
        let missing = CASE1.replace(r#""h_plus": {"a": 1.0, "b": 0.0}"#, r#""h_plus": {"a": 1.0}"#);
        assert!(matches!(parse_problem(&missing), Err(Error::MissingValue { .. })));
        let unknown = CASE1.replace(r#""v": "b""#, r#""v": "z""#);
        assert_eq!(parse_problem(&unknown), Err(Error::UnknownVertex("z".into())));
        let dup = CASE1.replace(r#"{"id": "b", "mu": 2.0}"#, r#"{"id": "a", "mu": 2.0}"#);
        assert_eq!(parse_problem(&dup), Err(Error::DuplicateVertex("a".into())));
        let zero_w = CASE1.replace(r#""w": 0.5"#, r#""w": 0.0"#);
        assert!(matches!(parse_problem(&zero_w), Err(Error::InvalidWeight { .. })));
        let both_edges = CASE1.replace(
            r#"[{"u": "a", "v": "b", "w": 0.5}]"#,
            r#"[{"u": "a", "v": "b", "w": 0.5}, {"u": "b", "v": "a", "w": 0.5}]"#,
        );
        assert!(matches!(parse_problem(&both_edges), Err(Error::DuplicateEdge { .. })));
        let Err(Error::Parse(msg)) = parse_problem("{\"vertices\": [") else { panic!() };
        assert!(msg.contains("line 1"), "{msg}");
    }
}
