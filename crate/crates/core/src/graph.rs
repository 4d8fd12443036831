//! Signed graphs: construction, adjacency, bipartitions, permutations and
//! brute-force isomorphism.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// A simple graph on vertices `0..n` with every edge labelled `±1`.
///
/// Edges are stored as `(u, v, sign)` with `u < v`, sorted, without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<(usize, usize, Sign)>,
}

impl SignedGraph {
    /// Accepts edges in either orientation; rejects loops, out-of-range
    /// endpoints and repeated pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, Sign)>) -> Result<Self> {
        let mut out: Vec<(usize, usize, Sign)> = Vec::new();
        for (a, b, s) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) out of range for n = {n}")));
            }
            out.push((a.min(b), a.max(b), s));
        }
        out.sort();
        if let Some(w) = out.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", w[0].0, w[0].1)));
        }
        Ok(SignedGraph { n, edges: out })
    }

    pub fn empty(n: usize) -> Self {
        SignedGraph { n, edges: Vec::new() }
    }

    /// Validates symmetry, a zero diagonal and entries in `{-1, 0, 1}`.
    pub fn from_adjacency(a: &IntMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let mut edges = Vec::new();
        for i in 0..n {
            if !a[(i, i)].is_zero() {
                return Err(Error::InvalidGraph(format!("nonzero diagonal entry at ({i}, {i})")));
            }
            for j in 0..n {
                let v = &a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let Some(sign) = v.to_i64().and_then(Sign::from_value) else {
                    return Err(Error::InvalidGraph(format!(
                        "entry {v} at ({i}, {j}) is outside {{-1, 0, 1}}"
                    )));
                };
                if a[(j, i)] != *v {
                    return Err(Error::InvalidGraph(format!("asymmetric entries at ({i}, {j}) and ({j}, {i})")));
                }
                if i < j {
                    edges.push((i, j, sign));
                }
            }
        }
        Ok(SignedGraph { n, edges })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, Sign)] {
        &self.edges
    }

    /// Sign of the edge `{u, v}`, if present.
    pub fn sign(&self, u: usize, v: usize) -> Option<Sign> {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search_by(|e| (e.0, e.1).cmp(&key))
            .ok()
            .map(|i| self.edges[i].2)
    }

    /// Dense `{-1, 0, 1}` adjacency table.
    pub fn adjacency_i8(&self) -> Vec<Vec<i8>> {
        let mut a = vec![vec![0i8; self.n]; self.n];
        for &(u, v, s) in &self.edges {
            a[u][v] = s.value();
            a[v][u] = s.value();
        }
        a
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// `(positive degree, negative degree)` of each vertex.
    pub fn sign_degrees(&self) -> Vec<(usize, usize)> {
        let mut d = vec![(0, 0); self.n];
        for &(u, v, s) in &self.edges {
            for w in [u, v] {
                match s {
                    Sign::Plus => d[w].0 += 1,
                    Sign::Minus => d[w].1 += 1,
                }
            }
        }
        d
    }
}

pub fn adjacency_matrix(g: &SignedGraph) -> IntMatrix {
    let mut a = IntMatrix::zeros(g.n, g.n);
    for &(u, v, s) in &g.edges {
        let x = BigInt::from(s.value());
        a[(u, v)] = x.clone();
        a[(v, u)] = x;
    }
    a
}

/// `J - I - A`, the formal complement.
pub fn complement_matrix(g: &SignedGraph) -> IntMatrix {
    let a = adjacency_matrix(g);
    IntMatrix::from_fn(g.n, g.n, |i, j| {
        if i == j {
            BigInt::zero()
        } else {
            BigInt::one() - &a[(i, j)]
        }
    })
}

/// Two-colouring of the underlying unsigned graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    pub fn s(&self) -> usize {
        self.left.len()
    }

    /// `left` followed by `right`.
    pub fn ordering(&self) -> Vec<usize> {
        self.left.iter().chain(&self.right).copied().collect()
    }
}

/// Breadth-first two-colouring, signs ignored. Component colourings are
/// merged so that each component's larger class joins the currently
/// smaller side, and the result always has `|left| <= |right|`.
pub fn find_bipartition(g: &SignedGraph) -> Result<Bipartition> {
    let adj = g.neighbours();
    let mut colour: Vec<Option<u8>> = vec![None; g.n];
    let mut parent: Vec<usize> = (0..g.n).collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for root in 0..g.n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(0);
        let mut classes: [Vec<usize>; 2] = [vec![root], Vec::new()];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap();
            for &v in &adj[u] {
                match colour[v] {
                    None => {
                        colour[v] = Some(1 - cu);
                        parent[v] = u;
                        classes[1 - cu as usize].push(v);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return Err(Error::OddCycle(odd_cycle(&parent, u, v))),
                    Some(_) => {}
                }
            }
        }
        let [a, b] = classes;
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        if left.len() <= right.len() {
            left.extend(big);
            right.extend(small);
        } else {
            left.extend(small);
            right.extend(big);
        }
    }
    if left.len() > right.len() {
        core::mem::swap(&mut left, &mut right);
    }
    left.sort_unstable();
    right.sort_unstable();
    Ok(Bipartition { left, right })
}

/// Closes the BFS-tree paths from `u` and `v` into a cycle through edge `uv`.
fn odd_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != x {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pu = path_to_root(u);
    let pv = path_to_root(v);
    // trim the common tail down to the lowest common ancestor
    let mut i = pu.len();
    let mut j = pv.len();
    while i > 1 && j > 1 && pu[i - 2] == pv[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pu[..i].to_vec();
    cycle.extend(pv[..j - 1].iter().rev());
    // rotate so the smallest vertex leads; keeps the witness canonical
    let k = cycle.iter().enumerate().min_by_key(|(_, &x)| x).map_or(0, |(k, _)| k);
    cycle.rotate_left(k);
    if cycle.len() > 2 && cycle[1] > cycle[cycle.len() - 1] {
        cycle[1..].reverse();
    }
    cycle
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::NotBijection);
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || core::mem::replace(&mut seen[p], true) {
            return Err(Error::NotBijection);
        }
    }
    Ok(())
}

/// Permutation matrix `P` with `P[perm[i]][i] = 1`.
pub fn permutation_matrix(perm: &[usize]) -> Result<IntMatrix> {
    check_permutation(perm, perm.len())?;
    let mut p = IntMatrix::zeros(perm.len(), perm.len());
    for (i, &j) in perm.iter().enumerate() {
        p[(j, i)] = BigInt::one();
    }
    Ok(p)
}

/// The graph whose adjacency matrix is `Pᵀ A(g) P`: new vertex `i` is old vertex `perm[i]`.
pub fn permute(g: &SignedGraph, perm: &[usize]) -> Result<SignedGraph> {
    check_permutation(perm, g.n)?;
    let mut inv = vec![0; g.n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    SignedGraph::new(g.n, g.edges.iter().map(|&(u, v, s)| (inv[u], inv[v], s)))
}

pub const DEFAULT_ISOMORPHISM_MAX_N: usize = 8;

/// Exhaustive search for `perm` with `permute(g1, perm) == g2`, pruned by
/// signed degrees and partial adjacency consistency.
pub fn is_isomorphic(g1: &SignedGraph, g2: &SignedGraph, max_n: usize) -> Result<Option<Vec<usize>>> {
    if g1.n != g2.n {
        return Err(Error::SizeMismatch(g1.n, g2.n));
    }
    if g1.n > max_n {
        return Err(Error::TooLarge { n: g1.n, max: max_n });
    }
    Ok(find_isomorphism(g1, g2))
}

pub(crate) fn find_isomorphism(g1: &SignedGraph, g2: &SignedGraph) -> Option<Vec<usize>> {
    let n = g1.n;
    if g1.edges.len() != g2.edges.len() {
        return None;
    }
    let d1 = g1.sign_degrees();
    let d2 = g2.sign_degrees();
    let mut s1 = d1.clone();
    let mut s2 = d2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    let a1 = g1.adjacency_i8();
    let a2 = g2.adjacency_i8();
    // perm[i] = vertex of g1 placed at position i of g2
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        i: usize,
        perm: &mut [usize],
        used: &mut [bool],
        a1: &[Vec<i8>],
        a2: &[Vec<i8>],
        d1: &[(usize, usize)],
        d2: &[(usize, usize)],
    ) -> bool {
        let n = perm.len();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || d1[cand] != d2[i] {
                continue;
            }
            if (0..i).any(|k| a1[perm[k]][cand] != a2[k][i]) {
                continue;
            }
            perm[i] = cand;
            used[cand] = true;
            if extend(i + 1, perm, used, a1, a2, d1, d2) {
                return true;
            }
            used[cand] = false;
        }
        false
    }

    extend(0, &mut perm, &mut used, &a1, &a2, &d1, &d2).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> SignedGraph {
        SignedGraph::new(2, [(0, 1, Sign::Plus)]).unwrap()
    }

    fn path(s1: Sign, s2: Sign) -> SignedGraph {
        SignedGraph::new(3, [(0, 1, s1), (1, 2, s2)]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(SignedGraph::new(2, [(0, 0, Sign::Plus)]).is_err());
        assert!(SignedGraph::new(2, [(0, 2, Sign::Plus)]).is_err());
        assert!(SignedGraph::new(3, [(0, 1, Sign::Plus), (1, 0, Sign::Minus)]).is_err());
        let m = IntMatrix::from_rows(&[[0, 2], [2, 0]]);
        assert!(matches!(SignedGraph::from_adjacency(&m), Err(Error::InvalidGraph(_))));
        let m = IntMatrix::from_rows(&[[0, 1], [-1, 0]]);
        assert!(SignedGraph::from_adjacency(&m).is_err());
        let m = IntMatrix::from_rows(&[[1, 0], [0, 0]]);
        assert!(SignedGraph::from_adjacency(&m).is_err());
    }

    #[test]
    fn adjacency_and_complement() {
        assert_eq!(adjacency_matrix(&k2()), IntMatrix::from_rows(&[[0, 1], [1, 0]]));
        assert_eq!(adjacency_matrix(&SignedGraph::empty(3)), IntMatrix::zeros(3, 3));
        assert_eq!(complement_matrix(&k2()), IntMatrix::zeros(2, 2));
        assert_eq!(
            complement_matrix(&SignedGraph::empty(2)),
            IntMatrix::from_rows(&[[0, 1], [1, 0]])
        );
        let neg = SignedGraph::new(2, [(0, 1, Sign::Minus)]).unwrap();
        assert_eq!(complement_matrix(&neg), IntMatrix::from_rows(&[[0, 2], [2, 0]]));
        let g = path(Sign::Plus, Sign::Minus);
        assert_eq!(SignedGraph::from_adjacency(&adjacency_matrix(&g)).unwrap(), g);
    }

    #[test]
    fn bipartitions() {
        let b = find_bipartition(&k2()).unwrap();
        assert_eq!((b.left, b.right), (vec![0], vec![1]));
        let tri = SignedGraph::new(3, [(0, 1, Sign::Plus), (1, 2, Sign::Plus), (0, 2, Sign::Plus)]).unwrap();
        assert_eq!(find_bipartition(&tri), Err(Error::OddCycle(vec![0, 1, 2])));
        // two disjoint stars K_{1,2}: greedy merge balances them 3/3
        let g = SignedGraph::new(
            6,
            [(0, 1, Sign::Plus), (0, 2, Sign::Plus), (3, 4, Sign::Minus), (3, 5, Sign::Plus)],
        )
        .unwrap();
        let b = find_bipartition(&g).unwrap();
        assert_eq!((b.left.len(), b.right.len()), (3, 3));
        let b = find_bipartition(&SignedGraph::empty(5)).unwrap();
        assert_eq!((b.left.len(), b.right.len()), (2, 3));
    }

    #[test]
    fn odd_cycle_witness_is_a_cycle() {
        // 5-cycle 1-2-3-4-5 plus a pendant path through 0
        let g = SignedGraph::new(
            7,
            [
                (1, 2, Sign::Plus),
                (2, 3, Sign::Minus),
                (3, 4, Sign::Plus),
                (4, 5, Sign::Plus),
                (5, 1, Sign::Plus),
                (0, 5, Sign::Plus),
                (0, 6, Sign::Plus),
            ],
        )
        .unwrap();
        let Err(Error::OddCycle(c)) = find_bipartition(&g) else { panic!() };
        assert_eq!(c.len() % 2, 1);
        for k in 0..c.len() {
            assert!(g.sign(c[k], c[(k + 1) % c.len()]).is_some());
        }
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(permute(&k2(), &[0, 1]).unwrap(), k2());
        assert_eq!(permute(&k2(), &[1, 0]).unwrap(), k2());
        let p = path(Sign::Plus, Sign::Minus);
        assert_eq!(permute(&p, &[2, 1, 0]).unwrap(), path(Sign::Minus, Sign::Plus));
        assert_eq!(permute(&p, &[0, 0, 1]), Err(Error::NotBijection));
        assert_eq!(permute(&p, &[0, 1]), Err(Error::NotBijection));
        let perm = [1, 2, 0];
        let pm = permutation_matrix(&perm).unwrap();
        let lhs = adjacency_matrix(&permute(&p, &perm).unwrap());
        assert_eq!(lhs, &(&pm.transpose() * &adjacency_matrix(&p)) * &pm);
    }

    #[test]
    fn isomorphism_examples() {
        assert_eq!(is_isomorphic(&k2(), &k2(), 8).unwrap(), Some(vec![0, 1]));
        let neg = SignedGraph::new(2, [(0, 1, Sign::Minus)]).unwrap();
        assert_eq!(is_isomorphic(&k2(), &neg, 8).unwrap(), None);
        let a = path(Sign::Plus, Sign::Minus);
        let b = path(Sign::Minus, Sign::Plus);
        let w = is_isomorphic(&a, &b, 8).unwrap().unwrap();
        assert_eq!(w, vec![2, 1, 0]);
        assert_eq!(permute(&a, &w).unwrap(), b);
        assert_eq!(is_isomorphic(&k2(), &a, 8), Err(Error::SizeMismatch(2, 3)));
        assert_eq!(
            is_isomorphic(&SignedGraph::empty(9), &SignedGraph::empty(9), 8),
            Err(Error::TooLarge { n: 9, max: 8 })
        );
    }
}
