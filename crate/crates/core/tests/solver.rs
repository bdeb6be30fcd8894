use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinhgordon::instances;
use sinhgordon::random::{connected_graph, integer_function};
use sinhgordon::solver::{brute_force_2v, continuation, enumerate_solutions, minimize_energy_boxed, newton_solve};
use sinhgordon::{Error, Graph, Problem, SolverConfig, VertexFunction};

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

#[test]
fn enumeration_agrees_with_brute_force_on_two_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let g = Graph::path(2).unwrap();
    let mut draws = 0;
    while draws < 50 {
        let hp = integer_function(&mut rng, 2, -2, 2);
        let hm = integer_function(&mut rng, 2, -2, 2);
        if hp.is_zero() && hm.is_zero() {
            continue;
        }
        let c = rng.gen_range(-3.0..=3.0);
        let p = Problem::new(g.clone(), hp, hm, c).unwrap();
        draws += 1;

        // compare inside a slightly smaller square so that zeros sitting on
        // the boundary cannot be found by one method only
        let inner = 7.5;
        let newton: Vec<VertexFunction> = enumerate_solutions(&p, 8.0, 300, &cfg(), 1)
            .unwrap()
            .solutions
            .into_iter()
            .map(|s| s.u)
            .filter(|u| u.inf_norm() <= inner)
            .collect();
        let grid: Vec<VertexFunction> = brute_force_2v(&p, 8.0, 400)
            .unwrap()
            .into_iter()
            .filter(|u| u.inf_norm() <= inner)
            .collect();
        assert_eq!(newton.len(), grid.len(), "{p:?}\nnewton {newton:?}\ngrid {grid:?}");
        for u in &newton {
            assert!(grid.iter().any(|v| u.dist_inf(v) <= 1e-6), "{p:?}: {u:?} not bracketed");
        }
    }
}

#[test]
fn every_enumerated_solution_is_a_distinct_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let n = rng.gen_range(2..=4);
        let g = connected_graph(&mut rng, n, (0.5, 2.0), 0.5);
        let hp = integer_function(&mut rng, n, -2, 2);
        let hm = integer_function(&mut rng, n, -2, 2);
        if hp.is_zero() && hm.is_zero() {
            continue;
        }
        let p = Problem::new(g, hp, hm, rng.gen_range(-2.0..=2.0)).unwrap();
        let e = enumerate_solutions(&p, 10.0, 200, &cfg(), 3).unwrap();
        for (i, s) in e.solutions.iter().enumerate() {
            assert!(p.residual(&s.u).unwrap().inf_norm() <= cfg().tol);
            assert!(s.u.inf_norm() <= 10.0);
            for t in &e.solutions[..i] {
                assert!(s.u.dist_inf(&t.u) > cfg().dedup_tol);
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic_across_thread_counts() {
    let p = instances::threshold_instance(-0.1);
    let a = enumerate_solutions(&p, 16.0, 300, &cfg(), 9).unwrap();
    let b = enumerate_solutions(&p, 16.0, 300, &cfg(), 9).unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let c = single.install(|| enumerate_solutions(&p, 16.0, 300, &cfg(), 9).unwrap());
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a.solutions.len(), 2);
}

#[test]
fn case4_enumeration_matches_closed_form() {
    let e = enumerate_solutions(&instances::case4(1.0), 10.0, 500, &cfg(), 42).unwrap();
    assert_eq!(e.solutions.len(), 1);
    assert!(e.solutions[0].u.dist_inf(&instances::case4_solution(1.0)) < 1e-10);
    for c in [-1.0, 0.0, 1.0] {
        assert!(enumerate_solutions(&instances::case2(c), 20.0, 300, &cfg(), 42)
            .unwrap()
            .solutions
            .is_empty());
    }
}

#[test]
fn case3_branch_is_lost_before_c_reaches_zero() {
    // case 3 has two zeros at c = 3 and none at c = 0; follow c = 3(1 - t)
    let starts = enumerate_solutions(&instances::case3(3.0), 10.0, 200, &cfg(), 42).unwrap().solutions;
    assert_eq!(starts.len(), 2);
    for start in starts {
        match continuation(|t| instances::case3(3.0 * (1.0 - t)), &start.u, 20, &cfg()) {
            Err(Error::BranchLost { last_t }) => assert!(last_t > 0.0 && last_t < 1.0, "{last_t}"),
            Ok(branch) => panic!("branch reached c = 0: {:?}", branch.last()),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn nonpositive_deformation_lands_on_zero() {
    // h₊,t = (1-t)h₊ - t, h₋,t = (1-t)h₋ + t, c_t = (1-t)c ends at -Δu = -eᵘ + e⁻ᵘ
    let g = Graph::unweighted(vec![1.0, 2.0, 0.5], &[(0, 1), (1, 2)]).unwrap();
    let hp = VertexFunction::from(vec![-1.0, 0.0, -2.0]);
    let hm = VertexFunction::from(vec![0.0, 1.0, 3.0]);
    let c = 1.5;
    let family = |t: f64| {
        Problem::new(
            g.clone(),
            hp.map(|v| (1.0 - t) * v - t),
            hm.map(|v| (1.0 - t) * v + t),
            (1.0 - t) * c,
        )
        .unwrap()
    };
    let start = newton_solve(&family(0.0), &VertexFunction::zeros(3), &cfg()).unwrap();
    let branch = continuation(family, &start.u, 10, &cfg()).unwrap();
    let end = branch.last().unwrap();
    assert_eq!(end.t, 1.0);
    assert!(end.solution.u.inf_norm() < 1e-10);
}

#[test]
fn boxed_minimiser_stays_in_the_box() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let n = rng.gen_range(2..=6);
        let g = connected_graph(&mut rng, n, (0.5, 2.0), 0.3);
        let p = Problem::new(
            g,
            VertexFunction::constant(n, -1.0),
            VertexFunction::constant(n, 1.0),
            rng.gen_range(-1.0..=1.0),
        )
        .unwrap();
        // F(k) = 2 sinh k + c for constants, so ±2 bracket every c in [-1, 1]
        let lo = VertexFunction::constant(n, -2.0);
        let hi = VertexFunction::constant(n, 2.0);
        let s = minimize_energy_boxed(&p, &lo, &hi, &cfg()).unwrap();
        assert!(p.residual(&s.u).unwrap().inf_norm() <= cfg().tol);
        assert!(s.u.iter().all(|&v| (-2.0..=2.0).contains(&v)));
        let k = -(0.5 * p.c).asinh();
        assert!(s.u.iter().all(|&v| (v - k).abs() < 1e-10));
    }
}
