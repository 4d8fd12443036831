mod common;

use common::{random_balanced_bipartite, random_graph, random_permutation, rng};
use dgs_core::graph::{
    adjacency_matrix, complement_matrix, find_bipartition, is_isomorphic, permutation_matrix, permute, SignedGraph,
    DEFAULT_ISOMORPHISM_MAX_N,
};
use dgs_core::matrix::IntMatrix;
use dgs_core::Error;
use proptest::prelude::*;
use rand::Rng;

/// Odd cycle detection by depth-first two-colouring.
fn has_odd_cycle(g: &SignedGraph) -> bool {
    let adj = g.neighbours();
    let mut colour = vec![None; g.n()];
    for start in 0..g.n() {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                match colour[v] {
                    None => {
                        colour[v] = Some(!colour[u].unwrap());
                        stack.push(v);
                    }
                    Some(c) if c == colour[u].unwrap() => return true,
                    _ => {}
                }
            }
        }
    }
    false
}

#[test]
fn permute_conjugates_the_adjacency_matrix() {
    let mut r = rng(40);
    for _ in 0..100 {
        let n = r.gen_range(0..=10);
        let g = random_graph(&mut r, n, 0.4);
        let perm = random_permutation(&mut r, n);
        let p = permutation_matrix(&perm).unwrap();
        let expected = &(&p.transpose() * &adjacency_matrix(&g)) * &p;
        assert_eq!(adjacency_matrix(&permute(&g, &perm).unwrap()), expected);
    }
}

#[test]
fn bipartition_exists_iff_no_odd_cycle() {
    let mut r = rng(41);
    let mut seen = [0usize; 2];
    for k in 0..400 {
        let n = r.gen_range(1..=12);
        let g = if k % 2 == 0 {
            random_balanced_bipartite(&mut r, n, 0.4)
        } else {
            {
            let density = r.gen_range(0.05..0.3);
            random_graph(&mut r, n, density)
        }
        };
        let odd = has_odd_cycle(&g);
        seen[odd as usize] += 1;
        match find_bipartition(&g) {
            Ok(bp) => {
                assert!(!odd);
                assert!(bp.left.len() <= bp.right.len());
                let mut all = bp.ordering();
                all.sort_unstable();
                assert_eq!(all, (0..n).collect::<Vec<_>>());
                for &(u, v, _) in g.edges() {
                    assert_ne!(bp.left.contains(&u), bp.left.contains(&v));
                }
            }
            Err(Error::OddCycle(cycle)) => {
                assert!(odd);
                assert!(cycle.len() % 2 == 1);
                for i in 0..cycle.len() {
                    assert!(g.sign(cycle[i], cycle[(i + 1) % cycle.len()]).is_some());
                }
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn balanced_bipartite_graphs_get_floor_half_parts() {
    let mut r = rng(42);
    for _ in 0..200 {
        let n = r.gen_range(1..=12);
        let g = random_balanced_bipartite(&mut r, n, 0.9);
        let bp = find_bipartition(&g).unwrap();
        // a connected balanced bipartite graph has a unique bipartition
        if bp.s() != n / 2 {
            assert!(!is_connected(&g));
        }
    }
}

fn is_connected(g: &SignedGraph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let adj = g.neighbours();
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

#[test]
fn isomorphism_is_reflexive_and_symmetric() {
    let mut r = rng(43);
    for _ in 0..50 {
        let n = r.gen_range(1..=DEFAULT_ISOMORPHISM_MAX_N);
        let g = random_graph(&mut r, n, 0.5);
        let w = is_isomorphic(&g, &g, DEFAULT_ISOMORPHISM_MAX_N).unwrap().unwrap();
        assert_eq!(permute(&g, &w).unwrap(), g);
    }
    let mut both = 0;
    for k in 0..50 {
        let n = r.gen_range(1..=DEFAULT_ISOMORPHISM_MAX_N);
        let g = random_graph(&mut r, n, 0.5);
        let h = if k % 2 == 0 {
            permute(&g, &random_permutation(&mut r, n)).unwrap()
        } else {
            random_graph(&mut r, n, 0.5)
        };
        let gh = is_isomorphic(&g, &h, DEFAULT_ISOMORPHISM_MAX_N).unwrap();
        let hg = is_isomorphic(&h, &g, DEFAULT_ISOMORPHISM_MAX_N).unwrap();
        assert_eq!(gh.is_some(), hg.is_some());
        if let (Some(a), Some(b)) = (gh, hg) {
            assert_eq!(permute(&g, &a).unwrap(), h);
            assert_eq!(permute(&h, &b).unwrap(), g);
            both += 1;
        }
    }
    assert!(both >= 25);
}

#[test]
fn isomorphism_is_permutation_only() {
    // a negative edge is not isomorphic to a positive one
    let plus = SignedGraph::from_adjacency(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap();
    let minus = SignedGraph::from_adjacency(&IntMatrix::from_rows(&[[0, -1], [-1, 0]])).unwrap();
    assert_eq!(is_isomorphic(&plus, &minus, 8).unwrap(), None);
    assert!(matches!(is_isomorphic(&SignedGraph::empty(9), &SignedGraph::empty(9), 8), Err(Error::TooLarge { .. })));
}

proptest! {
    #[test]
    fn adjacency_round_trips(seed in any::<u64>(), n in 0usize..=10) {
        let g = random_graph(&mut rng(seed), n, 0.5);
        let a = adjacency_matrix(&g);
        prop_assert!(a.is_symmetric());
        prop_assert_eq!(SignedGraph::from_adjacency(&a).unwrap(), g.clone());
        let c = complement_matrix(&g);
        let j_minus_i = IntMatrix::from_fn(n, n, |i, j| if i == j { 0.into() } else { 1.into() });
        prop_assert_eq!(c.add(&a), j_minus_i);
    }

    #[test]
    fn permute_by_identity_is_identity(seed in any::<u64>(), n in 0usize..=10) {
        let g = random_graph(&mut rng(seed), n, 0.5);
        let id: Vec<usize> = (0..n).collect();
        prop_assert_eq!(permute(&g, &id).unwrap(), g);
    }
}
