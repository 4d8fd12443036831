#![allow(dead_code)]

use dgs_core::graph::{Sign, SignedGraph};
use dgs_core::matrix::IntMatrix;
use dgs_core::poly::IntPoly;
use num_bigint::BigInt;
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

/// Each pair is an edge with probability `density`, sign uniform.
pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> SignedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v, random_sign(rng)));
            }
        }
    }
    SignedGraph::new(n, edges).unwrap()
}

/// Bipartite on parts of sizes `⌊n/2⌋` and `⌈n/2⌉`, vertices shuffled.
pub fn random_balanced_bipartite(rng: &mut impl Rng, n: usize, density: f64) -> SignedGraph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let s = n / 2;
    let mut edges = Vec::new();
    for i in 0..s {
        for j in s..n {
            if rng.gen_bool(density) {
                let (u, v) = (labels[i].min(labels[j]), labels[i].max(labels[j]));
                edges.push((u, v, random_sign(rng)));
            }
        }
    }
    SignedGraph::new(n, edges).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

/// Monic of degree `1..=max_deg`, lower coefficients in `[-bound, bound]`.
pub fn random_monic(rng: &mut impl Rng, max_deg: usize, bound: i64) -> IntPoly {
    let deg = rng.gen_range(1..=max_deg);
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    c.push(1);
    IntPoly::from_i64(&c)
}

/// The fixed corpus shared by the discriminant suites.
pub fn monic_corpus() -> Vec<IntPoly> {
    let mut r = rng(0x5eed_0018);
    (0..1000).map(|_| random_monic(&mut r, 8, 9)).collect()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

/// Laplace expansion along the first row, for oracles.
pub fn cofactor_det<T>(m: &[Vec<T>], zero: T, one: T) -> T
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<Output = T>,
{
    let n = m.len();
    if n == 0 {
        return one;
    }
    let mut acc = zero.clone();
    for j in 0..n {
        let minor: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][j].clone() * cofactor_det(&minor, zero.clone(), one.clone());
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Random balanced bipartite graphs on `2..=max_n` vertices with `|c_δ| = 1`.
pub fn unit_cdelta_corpus(seed: u64, count: usize, max_n: usize) -> Vec<SignedGraph> {
    use dgs_core::certify::coefficient_cdelta;
    use dgs_core::graph::adjacency_matrix;
    use dgs_core::poly::charpoly;
    use num_traits::Signed;
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = r.gen_range(2..=max_n);
        let density = if n % 2 == 1 { 0.35 } else { 0.5 };
        let g = random_balanced_bipartite(&mut r, n, density);
        let chi = charpoly(&adjacency_matrix(&g)).unwrap();
        if coefficient_cdelta(&chi, n).abs() == BigInt::from(1) {
            out.push(g);
        }
    }
    out
}

/// Random graphs on `2..=max_n` vertices whose walk matrix is invertible.
pub fn controllable_corpus(seed: u64, count: usize, max_n: usize) -> Vec<SignedGraph> {
    use dgs_core::certify::walk_matrix_columns;
    use dgs_core::graph::adjacency_matrix;
    use dgs_core::linalg::rank_rational;
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = r.gen_range(2..=max_n);
        let g = random_graph(&mut r, n, 0.5);
        if rank_rational(&walk_matrix_columns(&adjacency_matrix(&g)).unwrap()) == n {
            out.push(g);
        }
    }
    out
}
