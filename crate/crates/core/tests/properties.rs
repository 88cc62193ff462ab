mod common;

use common::*;
use gromtree_core::bottleneck::{apbp, max_spanning_tree, maxmin_closure_naive};
use gromtree_core::metric::{
    delta_hyperbolicity, exte, gprd, igprd, CapacityMatrix, DistanceMatrix, ProductMatrix,
    SquareMatrix,
};
use gromtree_core::pipeline::{apbp_via_gtree, gtree, gtree_from_graph, lprd};
use gromtree_core::treeize::{realize_tree, to_newick, NewickOptions};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn values() -> impl Strategy<Value = Values> {
    prop_oneof![
        Just(Values::Integer),
        Just(Values::HalfInteger),
        Just(Values::Real)
    ]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum capacity on the tree path from `i` to `j`.
fn tree_bottleneck(n: usize, edges: &[(usize, usize, f64)], i: usize, j: usize) -> f64 {
    let mut adj = vec![vec![]; n];
    for &(u, v, c) in edges {
        adj[u].push((v, c));
        adj[v].push((u, c));
    }
    let mut best = vec![f64::NAN; n];
    best[i] = f64::INFINITY;
    let mut stack = vec![i];
    while let Some(u) = stack.pop() {
        for &(v, c) in &adj[u] {
            if best[v].is_nan() {
                best[v] = best[u].min(c);
                stack.push(v);
            }
        }
    }
    best[j]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn products_round_trip(n in 1usize..14, seed: u64, kind in values()) {
        let d = random_metric(&mut rng(seed), n, kind);
        let l = gprd(&d);
        let back = igprd(&l).unwrap();
        assert_close(back.matrix(), d.matrix(), kind.tol(), "igprd(gprd(D))");
        let again = gprd(&back);
        assert_close(again.matrix(), l.matrix(), kind.tol(), "gprd(igprd(L))");
        for i in 0..n {
            prop_assert_eq!(l.get(i, i), d.get(i, d.base()));
            for j in 0..n {
                prop_assert!(l.get(i, j) <= l.get(i, i).min(l.get(j, j)) + kind.tol());
            }
        }
    }

    #[test]
    fn apbp_matches_closure(n in 1usize..20, seed: u64, kind in values()) {
        let c = random_capacities(&mut rng(seed), n, kind);
        let fast = apbp(&c);
        let slow = maxmin_closure_naive(&c);
        prop_assert_eq!(fast.matrix(), slow.matrix());
        for i in 0..n {
            prop_assert_eq!(fast.get(i, i), c.get(i, i));
            for j in 0..n {
                prop_assert_eq!(fast.get(i, j), fast.get(j, i));
                if i != j {
                    prop_assert!(fast.get(i, j) >= c.get(i, j));
                }
            }
        }
    }

    #[test]
    fn spanning_tree_paths_carry_the_bottleneck(n in 1usize..16, seed: u64, kind in values()) {
        let c = random_capacities(&mut rng(seed), n, kind);
        let tree: Vec<_> = max_spanning_tree(&c).into_iter().map(|e| (e.u, e.v, e.capacity)).collect();
        prop_assert_eq!(tree.len(), n - 1);
        let r = apbp(&c);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert_eq!(tree_bottleneck(n, &tree, i, j), r.get(i, j));
                }
            }
        }
    }

    #[test]
    fn apbp_is_idempotent_and_monotone(n in 2usize..16, seed: u64, kind in values()) {
        let mut g = rng(seed);
        let c = random_capacities(&mut g, n, kind);
        let r = apbp(&c);
        let rr = apbp(&r.to_capacities(TOL));
        prop_assert_eq!(rr.matrix(), r.matrix());

        let bumped = SquareMatrix::from_fn(n, |i, j| {
            let (a, b) = (i.min(j), i.max(j));
            // symmetric, deterministic bump on roughly a third of the pairs
            let k = (a * 31 + b * 17 + seed as usize) % 3;
            c.get(i, j) + if k == 0 { 1.5 } else { 0.0 }
        });
        let bigger = CapacityMatrix::from_matrix(bumped, TOL).unwrap();
        let rb = apbp(&bigger);
        for i in 0..n {
            for j in 0..n {
                prop_assert!(r.get(i, j) <= rb.get(i, j));
            }
        }
    }

    #[test]
    fn reduction_through_the_tree(n in 1usize..14, seed: u64, kind in values()) {
        let c = random_capacities(&mut rng(seed), n, kind);
        let direct = apbp(&c);
        let via = apbp_via_gtree(&c);
        assert_close(via.matrix(), direct.matrix(), kind.tol(), "apbp_via_gtree");
        let d = igprd(&exte(&c)).unwrap();
        let strict = DistanceMatrix::from_matrix(d.matrix().clone(), n, true, TOL);
        prop_assert!(strict.is_ok());
    }

    #[test]
    fn gtree_output_is_a_tree_below_the_input(n in 1usize..12, seed: u64, kind in values()) {
        let d = random_metric(&mut rng(seed), n, kind);
        let a = gtree(&d);
        let t = a.distances();
        let w = d.base();
        for i in 0..n {
            prop_assert_eq!(t.get(w, i), d.get(w, i));
            for j in 0..n {
                prop_assert!(t.get(i, j) <= d.get(i, j) + kind.tol());
            }
        }
        prop_assert!(max_min_violation(&gprd(t)) <= kind.tol());
        prop_assert!(delta_hyperbolicity(t).delta <= TOL);
        assert_close(gtree(t).distances().matrix(), t.matrix(), kind.tol(), "idempotence");
    }

    #[test]
    fn dominance(n in 3usize..12, seed: u64, kind in values()) {
        let mut g = rng(seed);
        let d = random_metric(&mut g, n, kind);
        let lower = random_minorant(&mut g, &d, 3 * n);
        let (a, b) = (gtree(&lower), gtree(&d));
        for i in 0..n {
            for j in 0..n {
                prop_assert!(a.distances().get(i, j) <= b.distances().get(i, j) + kind.tol());
            }
        }
    }

    #[test]
    fn graph_route_agrees(n in 1usize..60, seed: u64) {
        let g = random_graph(&mut rng(seed), n);
        let by_matrix = gtree(&bfs_matrix(&g));
        let by_graph = gtree_from_graph(&g).unwrap();
        prop_assert_eq!(by_graph.distances().matrix(), by_matrix.distances().matrix());
        let k = lprd(&g).unwrap();
        let (from_k, from_l) = (apbp(&k.to_capacities()), apbp(&gprd(&bfs_matrix(&g)).to_capacities()));
        prop_assert_eq!(from_k.matrix(), from_l.matrix());
    }

    #[test]
    fn realized_tree_reproduces_distances(n in 1usize..14, seed: u64, kind in values()) {
        let d = random_metric(&mut rng(seed), n, kind);
        let a = gtree(&d);
        let t = realize_tree(&a).unwrap();
        prop_assert!(t.nodes().len() <= 2 * n);
        assert_close(&t.point_distances(), a.distances().matrix(), TOL, "tree");
        for (id, node) in t.nodes().iter().enumerate() {
            prop_assert!(node.length >= 0.0);
            if id != t.root() {
                prop_assert!(node.length > 0.0, "zero-length edge survived");
            }
            if node.children.is_empty() {
                prop_assert!(!node.points.is_empty(), "leaf without a point");
            }
        }
        prop_assert_eq!(t.node_of(d.base()), t.root());

        let text = to_newick::<&str>(&t, None, NewickOptions::default()).unwrap();
        let parsed = newick::parse(&text);
        let back = newick::point_distances(&parsed, n);
        let back = SquareMatrix::from_rows(&back).unwrap();
        assert_close(&back, a.distances().matrix(), 1e-8, "newick round trip");
    }

    #[test]
    fn tree_metrics_are_zero_hyperbolic(n in 1usize..12, seed: u64, kind in values()) {
        // leaf distances of a random weighted tree
        let mut g = rng(seed);
        let d = {
            let edges = random_connected_edges(&mut g, n, 0);
            let mut m = vec![vec![f64::INFINITY; n]; n];
            for (i, row) in m.iter_mut().enumerate() { row[i] = 0.0; }
            for (u, v) in edges {
                let w = kind.sample(&mut g, 6) + 0.5;
                m[u][v] = w;
                m[v][u] = w;
            }
            floyd_warshall(&mut m);
            DistanceMatrix::new(&m, n - 1, true, TOL).unwrap()
        };
        prop_assert!(delta_hyperbolicity(&d).delta <= TOL);
        assert_close(gtree(&d).distances().matrix(), d.matrix(), kind.tol(), "fixed point");
    }

    #[test]
    fn product_matrix_from_gprd_validates(n in 1usize..12, seed: u64, kind in values()) {
        let d = random_metric(&mut rng(seed), n, kind);
        let l = gprd(&d);
        prop_assert!(ProductMatrix::from_matrix(l.matrix().clone(), l.base(), TOL).is_ok());
    }
}
