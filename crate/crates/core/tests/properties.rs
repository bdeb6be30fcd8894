use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinhgordon::degree::{degree_formula, harmonic_extension, schur_operator};
use sinhgordon::linalg::mu_self_adjoint_eigenvalues;
use sinhgordon::random::{connected_graph, integer_function, uniform_function};
use sinhgordon::{Graph, KwProblem, Problem, VertexFunction};

fn graph(seed: u64, n: usize) -> (Graph, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = connected_graph(&mut rng, n, (0.1, 10.0), 0.3);
    (g, rng)
}

fn problem(seed: u64, n: usize) -> (Problem, ChaCha8Rng) {
    let (g, mut rng) = graph(seed, n);
    let hp = uniform_function(&mut rng, n, -2.0, 2.0);
    let hm = uniform_function(&mut rng, n, -2.0, 2.0);
    let c = rng.gen_range(-3.0..=3.0);
    (Problem::new(g, hp, hm, c).unwrap(), rng)
}

/// `Σ_y ω_xy (u(y) - u(x)) / μ_x` accumulated edge by edge.
fn laplacian_by_edges(g: &Graph, u: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; u.len()];
    for (x, y, w) in g.edges() {
        out[x] += w * (u[y] - u[x]);
        out[y] += w * (u[x] - u[y]);
    }
    out.iter().zip(g.mu()).map(|(s, m)| s / m).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn green_formula(seed in any::<u64>(), n in 2usize..=12) {
        let (g, mut rng) = graph(seed, n);
        let u = uniform_function(&mut rng, n, -5.0, 5.0);
        let v = uniform_function(&mut rng, n, -5.0, 5.0);
        let lu = g.laplacian(&u).unwrap();
        let lhs = g.integrate(&VertexFunction::from_fn(n, |x| lu[x] * v[x])).unwrap();
        let gamma = g.integrate(&g.gradient_form(&u, &v).unwrap()).unwrap();
        prop_assert!((lhs + gamma).abs() <= 1e-9 * (1.0 + gamma.abs()));
    }

    #[test]
    fn laplacian_identities(seed in any::<u64>(), n in 2usize..=12, k in -5.0f64..5.0) {
        let (g, mut rng) = graph(seed, n);
        let u = uniform_function(&mut rng, n, -5.0, 5.0);
        let lu = g.laplacian(&u).unwrap();
        let scale = 1.0 + lu.inf_norm();
        prop_assert!(g.integrate(&lu).unwrap().abs() <= 1e-12 * scale * g.total_measure());
        prop_assert!(g.laplacian(&VertexFunction::constant(n, k)).unwrap().inf_norm() <= 1e-14);
        let by_matrix = g.laplacian_matrix() * u.to_dvector();
        let by_edges = laplacian_by_edges(&g, &u);
        for x in 0..n {
            prop_assert!((lu[x] - by_matrix[x]).abs() <= 1e-12 * scale);
            prop_assert!((lu[x] - by_edges[x]).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn jacobian_matches_central_differences(seed in any::<u64>(), n in 2usize..=8) {
        let (p, mut rng) = problem(seed, n);
        let u = uniform_function(&mut rng, n, -3.0, 3.0);
        let j = p.jacobian(&u).unwrap();
        let h = 1e-5;
        for y in 0..n {
            let mut up = u.clone();
            let mut dn = u.clone();
            up[y] += h;
            dn[y] -= h;
            let (fp, fm) = (p.residual(&up).unwrap(), p.residual(&dn).unwrap());
            for x in 0..n {
                prop_assert!((j[(x, y)] - (fp[x] - fm[x]) / (2.0 * h)).abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn jacobian_is_mu_symmetric(seed in any::<u64>(), n in 2usize..=8) {
        let (p, mut rng) = problem(seed, n);
        let u = uniform_function(&mut rng, n, -3.0, 3.0);
        let j = p.jacobian(&u).unwrap();
        let mu = p.graph.mu();
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (mu[x] * j[(x, y)], mu[y] * j[(y, x)]);
                prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
            }
        }
    }

    #[test]
    fn energy_gradient_is_the_residual(seed in any::<u64>(), n in 2usize..=8) {
        let (p, mut rng) = problem(seed, n);
        let u = uniform_function(&mut rng, n, -3.0, 3.0);
        let xi = uniform_function(&mut rng, n, -1.0, 1.0);
        let f = p.residual(&u).unwrap();
        let exact = p.graph.integrate(&VertexFunction::from_fn(n, |x| f[x] * xi[x])).unwrap();
        let err = |t: f64| {
            let jp = p.energy(&u.axpy(t, &xi)).unwrap();
            let jm = p.energy(&u.axpy(-t, &xi)).unwrap();
            ((jp - jm) / (2.0 * t) - exact).abs()
        };
        let (e3, e4) = (err(1e-3), err(1e-4));
        // second order: a tenfold smaller step cuts the error about a hundredfold,
        // until rounding takes over
        prop_assert!(e4 <= 0.05 * e3 || e4 <= 1e-8 * (1.0 + exact.abs()), "{e3} {e4}");
    }

    #[test]
    fn kw_residual_is_the_special_case(seed in any::<u64>(), n in 2usize..=8) {
        let (g, mut rng) = graph(seed, n);
        let h = uniform_function(&mut rng, n, -2.0, 2.0);
        let u = uniform_function(&mut rng, n, -3.0, 3.0);
        let kw = KwProblem::new(g.clone(), h.clone(), 0.7).unwrap();
        let p = Problem::new(g, h, VertexFunction::zeros(n), 0.7).unwrap();
        prop_assert_eq!(kw.residual(&u).unwrap(), p.residual(&u).unwrap());
    }

    #[test]
    fn sign_classes_ignore_positive_scaling(seed in any::<u64>(), n in 2usize..=6) {
        let (g, mut rng) = graph(seed, n);
        let hp = integer_function(&mut rng, n, -2, 2);
        let hm = integer_function(&mut rng, n, -2, 2);
        let sp = VertexFunction::from_fn(n, |_| rng.gen_range(0.1..10.0));
        let sm = VertexFunction::from_fn(n, |_| rng.gen_range(0.1..10.0));
        let p = Problem::new(g.clone(), hp.clone(), hm.clone(), 0.0).unwrap();
        let q = Problem::new(
            g,
            VertexFunction::from_fn(n, |x| hp[x] * sp[x]),
            VertexFunction::from_fn(n, |x| hm[x] * sm[x]),
            0.0,
        )
        .unwrap();
        prop_assert_eq!(p.classify_signs(), q.classify_signs());
    }

    #[test]
    fn formula_degree_is_scale_invariant(
        seed in any::<u64>(),
        n in 2usize..=5,
        lambda in 0.01f64..100.0,
        factor in 0.01f64..100.0,
        c_index in 0usize..5,
    ) {
        let (g, mut rng) = graph(seed, n);
        let c = [-2.0, -0.5, 0.0, 0.5, 2.0][c_index];
        let hp = integer_function(&mut rng, n, -2, 2);
        let hm = integer_function(&mut rng, n, -2, 2);
        let p = Problem::new(g.clone(), hp.clone(), hm.clone(), c).unwrap();
        let scaled_h = Problem::new(g.clone(), hp.scaled(lambda), hm.scaled(lambda), c).unwrap();
        let scaled_g = Problem::new(g.rescaled(factor).unwrap(), hp, hm, c).unwrap();
        prop_assert_eq!(degree_formula(&p), degree_formula(&scaled_h));
        prop_assert_eq!(degree_formula(&p), degree_formula(&scaled_g));
    }

    #[test]
    fn harmonic_extension_obeys_max_principle(seed in any::<u64>(), n in 2usize..=10) {
        let (g, mut rng) = graph(seed, n);
        let v0: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        prop_assume!(!v0.is_empty());
        let phi: Vec<f64> = v0.iter().map(|_| rng.gen_range(-5.0..5.0)).collect();
        let ext = harmonic_extension(&g, &v0, &phi).unwrap();
        let (lo, hi) = phi.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        for x in 0..n {
            prop_assert!(ext[x] >= lo - 1e-10 && ext[x] <= hi + 1e-10);
        }
        let lap = g.laplacian(&ext).unwrap();
        for x in (0..n).filter(|x| !v0.contains(x)) {
            prop_assert!(lap[x].abs() <= 1e-9);
        }
    }

    #[test]
    fn schur_operator_is_a_negative_laplacian(seed in any::<u64>(), n in 2usize..=10) {
        let (g, mut rng) = graph(seed, n);
        let v0: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        prop_assume!(!v0.is_empty());
        let l = schur_operator(&g, &v0).unwrap();
        let scale = 1.0 + l.amax();
        for i in 0..v0.len() {
            prop_assert!(l.row(i).sum().abs() <= 1e-10 * scale);
        }
        let mu: Vec<f64> = v0.iter().map(|&x| g.mu()[x]).collect();
        let ev = mu_self_adjoint_eigenvalues(&(-l), &mu);
        prop_assert!(ev[0] >= -1e-9 * scale, "{ev:?}");
    }
}
