//! Seeded generators for random instances, shared by the verification suite
//! and the tests.

use rand::Rng;

use crate::function::VertexFunction;
use crate::graph::Graph;

/// Random connected graph on `n` vertices: a random spanning tree plus each
/// remaining pair with probability `extra_edge_p`. Weights and measures are
/// drawn uniformly from `range`.
pub fn connected_graph<R: Rng>(rng: &mut R, n: usize, range: (f64, f64), extra_edge_p: f64) -> Graph {
    let mu: Vec<f64> = (0..n).map(|_| rng.gen_range(range.0..=range.1)).collect();
    let mut edges = Vec::new();
    let mut present = vec![vec![false; n]; n];
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((j, i, rng.gen_range(range.0..=range.1)));
        present[j][i] = true;
    }
    for i in 0..n {
        for j in i + 1..n {
            if !present[i][j] && rng.gen_bool(extra_edge_p) {
                edges.push((i, j, rng.gen_range(range.0..=range.1)));
            }
        }
    }
    let labels = (1..=n).map(|i| format!("x{i}")).collect();
    Graph::from_edges(labels, mu, &edges).expect("spanning tree makes the graph connected")
}

/// Uniform vertex function with entries in `[lo, hi]`.
pub fn uniform_function<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> VertexFunction {
    VertexFunction::from_fn(n, |_| rng.gen_range(lo..=hi))
}

/// Integer-valued vertex function with entries in `lo..=hi`.
pub fn integer_function<R: Rng>(rng: &mut R, n: usize, lo: i32, hi: i32) -> VertexFunction {
    VertexFunction::from_fn(n, |_| f64::from(rng.gen_range(lo..=hi)))
}
