use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::model::{Problem, OVERFLOW_GUARD};

/// Refinement stops once boxes are this small.
const BOX_TOL: f64 = 1e-10;
/// Surviving sub-boxes kept per candidate cell and level.
const MAX_BOXES: usize = 64;
/// Residual a refined box centre must reach to count as a root.
const ACCEPT_RESIDUAL: f64 = 1e-6;

#[derive(Clone, Copy)]
struct Cell {
    x0: f64,
    y0: f64,
    h: f64,
}

fn eval(p: &Problem, x: f64, y: f64) -> [f64; 2] {
    let f = p.residual_unchecked(&[x, y]);
    [f[0], f[1]]
}

fn brackets(corners: &[[f64; 2]; 4]) -> bool {
    (0..2).all(|k| {
        let lo = corners.iter().map(|c| c[k]).fold(f64::INFINITY, f64::min);
        let hi = corners.iter().map(|c| c[k]).fold(f64::NEG_INFINITY, f64::max);
        lo <= 0.0 && hi >= 0.0
    })
}

fn cell_brackets(p: &Problem, c: Cell) -> bool {
    let corners = [
        eval(p, c.x0, c.y0),
        eval(p, c.x0 + c.h, c.y0),
        eval(p, c.x0, c.y0 + c.h),
        eval(p, c.x0 + c.h, c.y0 + c.h),
    ];
    brackets(&corners)
}

fn centre_residual(p: &Problem, c: Cell) -> f64 {
    let f = eval(p, c.x0 + 0.5 * c.h, c.y0 + 0.5 * c.h);
    f[0].abs().max(f[1].abs())
}

/// Quadrisects a bracketing cell down to [`BOX_TOL`].
fn refine(p: &Problem, cell: Cell) -> Vec<(VertexFunction, f64)> {
    let mut boxes = vec![cell];
    while boxes[0].h > BOX_TOL {
        let mut next: Vec<Cell> = Vec::new();
        for b in &boxes {
            let h = 0.5 * b.h;
            for (dx, dy) in [(0.0, 0.0), (h, 0.0), (0.0, h), (h, h)] {
                let sub = Cell {
                    x0: b.x0 + dx,
                    y0: b.y0 + dy,
                    h,
                };
                if cell_brackets(p, sub) {
                    next.push(sub);
                }
            }
        }
        if next.is_empty() {
            return Vec::new();
        }
        if next.len() > MAX_BOXES {
            next.sort_by(|a, b| centre_residual(p, *a).total_cmp(&centre_residual(p, *b)));
            next.truncate(MAX_BOXES);
        }
        boxes = next;
    }
    boxes
        .into_iter()
        .map(|b| {
            let r = centre_residual(p, b);
            (VertexFunction::from(vec![b.x0 + 0.5 * b.h, b.y0 + 0.5 * b.h]), r)
        })
        .filter(|(_, r)| *r <= ACCEPT_RESIDUAL)
        .collect()
}

/// Grid-bracketing root finder for two-vertex problems, independent of Newton.
///
/// Evaluates `F` on a `grid_n × grid_n` grid over `[-radius, radius]²`, keeps
/// the cells where both components change sign over the corners, and
/// quadrisects each down to `1e-10`. Roots closer than two grid cells are
/// reported once, by the candidate with the smallest residual.
pub fn brute_force_2v(p: &Problem, radius: f64, grid_n: usize) -> Result<Vec<VertexFunction>> {
    if p.vertex_count() != 2 {
        return Err(Error::NotTwoVertex);
    }
    if !(radius > 0.0 && radius <= OVERFLOW_GUARD) || grid_n == 0 {
        return Err(Error::PreconditionFailed(format!(
            "need 0 < radius ≤ {OVERFLOW_GUARD} and grid_n > 0"
        )));
    }
    let h = 2.0 * radius / grid_n as f64;
    let node = |i: usize| -radius + i as f64 * h;
    let values: Vec<Vec<[f64; 2]>> = (0..=grid_n)
        .map(|i| (0..=grid_n).map(|j| eval(p, node(i), node(j))).collect())
        .collect();
    let mut candidates = Vec::new();
    for i in 0..grid_n {
        for j in 0..grid_n {
            let corners = [values[i][j], values[i + 1][j], values[i][j + 1], values[i + 1][j + 1]];
            if brackets(&corners) {
                candidates.push(Cell {
                    x0: node(i),
                    y0: node(j),
                    h,
                });
            }
        }
    }
    let mut points: Vec<(VertexFunction, f64)> = candidates.into_iter().flat_map(|c| refine(p, c)).collect();
    points.sort_by(|a, b| a.1.total_cmp(&b.1));

    // single-linkage clustering at two grid cells, best residual first
    let link = 2.0 * h;
    let mut cluster_of: Vec<usize> = (0..points.len()).collect();
    for i in 0..points.len() {
        for j in 0..i {
            if points[i].0.dist_inf(&points[j].0) <= link {
                let (a, b) = (find(&mut cluster_of, i), find(&mut cluster_of, j));
                if a != b {
                    cluster_of[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut roots: Vec<VertexFunction> = Vec::new();
    let mut seen = Vec::new();
    for i in 0..points.len() {
        let r = find(&mut cluster_of, i);
        if !seen.contains(&r) {
            seen.push(r);
            roots.push(points[i].0.clone());
        }
    }
    roots.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    Ok(roots)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn p2(hp: &[f64], hm: &[f64], c: f64) -> Problem {
        Problem::new(Graph::path(2).unwrap(), hp.to_vec().into(), hm.to_vec().into(), c).unwrap()
    }

    #[test]
    fn case1_single_root() {
        let roots = brute_force_2v(&p2(&[1.0, 0.0], &[-1.0, 0.0], 1.0), 5.0, 400).unwrap();
        assert_eq!(roots.len(), 1);
        let x = (1.0 + 2f64.sqrt()).ln();
        assert!((roots[0][0] - x).abs() < 1e-8 && (roots[0][1] - (x - 1.0)).abs() < 1e-8);
    }

    #[test]
    fn case2_no_roots() {
        for c in [-1.0, 0.0, 1.0] {
            assert!(brute_force_2v(&p2(&[1.0, 0.0], &[0.0, -1.0], c), 8.0, 200).unwrap().is_empty());
        }
    }

    #[test]
    fn case4_degenerate_origin() {
        let roots = brute_force_2v(&p2(&[1.0, 1.0], &[-1.0, -1.0], 0.0), 4.0, 200).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].inf_norm() < 1e-3);
    }

    #[test]
    fn shallow_crossing_is_kept() {
        // the zero curves of case 4 cross at about 12 degrees near (s, s)
        for n in [200, 400, 401, 600] {
            let roots = brute_force_2v(&p2(&[1.0, 1.0], &[-1.0, -1.0], 1.0), 8.0, n).unwrap();
            let s = 0.5f64.asinh();
            assert_eq!(roots.len(), 1, "grid {n}");
            assert!((roots[0][0] - s).abs() < 1e-8 && (roots[0][1] - s).abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_other_sizes() {
        let p = Problem::new(Graph::path(3).unwrap(), vec![1.0; 3].into(), vec![-1.0; 3].into(), 0.0).unwrap();
        assert_eq!(brute_force_2v(&p, 1.0, 10), Err(Error::NotTwoVertex));
    }
}
