//! Seeded random inputs for the self-test suites.

use dgs_core::arith::Effort;
use dgs_core::certify::{certify, coefficient_cdelta, walk_matrix_columns};
use dgs_core::graph::{adjacency_matrix, find_bipartition, permute, Sign, SignedGraph};
use dgs_core::lab::{candidate_from_index, candidate_index, search_space_size};
use dgs_core::linalg::rank_rational;
use dgs_core::matrix::IntMatrix;
use dgs_core::poly::{charpoly, IntPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> SignedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v, random_sign(rng)));
            }
        }
    }
    SignedGraph::new(n, edges).expect("distinct pairs")
}

/// Parts of sizes `⌊n/2⌋` and `⌈n/2⌉` on shuffled vertex labels.
pub fn random_balanced_bipartite(rng: &mut impl Rng, n: usize, density: f64) -> SignedGraph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let s = n / 2;
    let mut edges = Vec::new();
    for i in 0..s {
        for j in s..n {
            if rng.gen_bool(density) {
                edges.push((labels[i].min(labels[j]), labels[i].max(labels[j]), random_sign(rng)));
            }
        }
    }
    SignedGraph::new(n, edges).expect("distinct pairs")
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

/// `count` square matrices of order `1..=max_n`, entries in `[-9, 9]`.
pub fn square_matrices(seed: u64, count: usize, max_n: usize) -> Vec<IntMatrix> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=max_n);
            random_matrix(&mut r, n, n, 9)
        })
        .collect()
}

/// `count` monic polynomials of degree `1..=max_deg`, other coefficients in `[-bound, bound]`.
pub fn monic_polynomials(seed: u64, count: usize, max_deg: usize, bound: i64) -> Vec<IntPoly> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let deg = r.gen_range(1..=max_deg);
            let mut c: Vec<i64> = (0..deg).map(|_| r.gen_range(-bound..=bound)).collect();
            c.push(1);
            IntPoly::from_i64(&c)
        })
        .collect()
}

/// Balanced signed bipartite graphs on `2..=max_n` vertices with `|c_δ| = 1`.
pub fn unit_cdelta_bipartite(seed: u64, count: usize, max_n: usize) -> Vec<SignedGraph> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = r.gen_range(2..=max_n);
        let density = if n % 2 == 1 { 0.35 } else { 0.5 };
        let g = random_balanced_bipartite(&mut r, n, density);
        let chi = charpoly(&adjacency_matrix(&g)).expect("square");
        if coefficient_cdelta(&chi, n).abs().is_one() {
            out.push(g);
        }
    }
    out
}

pub fn is_controllable(g: &SignedGraph) -> bool {
    let w = walk_matrix_columns(&adjacency_matrix(g)).expect("square");
    rank_rational(&w) == g.n()
}

/// Controllable signed graphs on `2..=max_n` vertices.
pub fn controllable_graphs(seed: u64, count: usize, max_n: usize) -> Vec<SignedGraph> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = r.gen_range(2..=max_n);
        let g = random_graph(&mut r, n, 0.5);
        if is_controllable(&g) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest candidate index over all relabellings.
pub fn canonical_index(g: &SignedGraph) -> u64 {
    permutations(g.n())
        .iter()
        .map(|p| candidate_index(&permute(g, p).expect("bijection")))
        .min()
        .expect("at least one permutation")
}

/// One representative per isomorphism class of signed graphs on `n`
/// vertices that the certifier accepts.
pub fn certified_classes(n: usize, effort: &Effort) -> Vec<SignedGraph> {
    let mut out = Vec::new();
    for index in 0..search_space_size(n) {
        let g = candidate_from_index(n, index);
        match find_bipartition(&g) {
            Ok(bp) if bp.s() == n / 2 => {}
            _ => continue,
        }
        if canonical_index(&g) != index {
            continue;
        }
        if certify(&g, effort).expect("certify is total").is_certified() {
            out.push(g);
        }
    }
    out
}
