//! Generalized-cospectrality tools: the two-polynomial comparison, recovery
//! of the regular rational orthogonal conjugator, levels, membership in
//! `𝒬(Σ)`, the mod-p isotropy diagnostic and an exhaustive mate search for
//! very small graphs.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::arith::require_prime;
use crate::certify::walk_matrix_columns;
use crate::error::{Error, Result};
use crate::graph::{adjacency_matrix, complement_matrix, find_isomorphism, Sign, SignedGraph};
use crate::linalg::{self, echelon_mod_p, mul_mod};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::poly::{berkowitz, charpoly, reduce_mod_p, ModPoly};

/// Same characteristic polynomial for `A` and for `J - I - A`.
pub fn generalized_cospectral(g1: &SignedGraph, g2: &SignedGraph) -> Result<bool> {
    if g1.n() != g2.n() {
        return Err(Error::SizeMismatch(g1.n(), g2.n()));
    }
    Ok(charpoly(&adjacency_matrix(g1))? == charpoly(&adjacency_matrix(g2))?
        && charpoly(&complement_matrix(g1))? == charpoly(&complement_matrix(g2))?)
}

/// Least positive `k` with `k·q` integral.
pub fn level(q: &RatMatrix) -> BigInt {
    q.denominator_lcm()
}

/// A rational orthogonal matrix fixing the all-ones vector, with its level
/// `ℓ` and integer lift `ℓ·q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularRationalOrthogonal {
    q: RatMatrix,
    level: BigInt,
    lift: IntMatrix,
}

impl RegularRationalOrthogonal {
    /// Checks `qᵀq = I` and `q·e = e` exactly.
    pub fn new(q: RatMatrix) -> Result<Self> {
        if q.rows() != q.cols() {
            return Err(Error::NonSquare { rows: q.rows(), cols: q.cols() });
        }
        if &q.transpose() * &q != RatMatrix::identity(q.rows()) {
            return Err(Error::ValidationFailed("Q is not orthogonal"));
        }
        if q.row_sums().iter().any(|s| !s.is_one()) {
            return Err(Error::ValidationFailed("Q is not regular (Qe != e)"));
        }
        let level = level(&q);
        let lift = q
            .mul_int(&IntMatrix::diagonal(&vec![level.clone(); q.rows()]))
            .to_integer()
            .expect("level clears every denominator");
        Ok(RegularRationalOrthogonal { q, level, lift })
    }

    pub fn q(&self) -> &RatMatrix {
        &self.q
    }

    pub fn level(&self) -> &BigInt {
        &self.level
    }

    pub fn lift(&self) -> &IntMatrix {
        &self.lift
    }

    pub fn is_permutation(&self) -> bool {
        self.level.is_one()
    }

    /// `qᵀ A q`
    pub fn conjugate(&self, a: &IntMatrix) -> RatMatrix {
        &self.q.transpose().mul_int(a) * &self.q
    }
}

/// `Q` with `Qᵀ A(σ) Q = A(γ)`, from `Qᵀ = W(γ) W(σ)⁻¹`. Only the
/// controllable case has a closed form.
pub fn recover_conjugator(sigma: &SignedGraph, gamma: &SignedGraph) -> Result<RegularRationalOrthogonal> {
    if sigma.n() != gamma.n() {
        return Err(Error::SizeMismatch(sigma.n(), gamma.n()));
    }
    let a_sigma = adjacency_matrix(sigma);
    let a_gamma = adjacency_matrix(gamma);
    let w_sigma = walk_matrix_columns(&a_sigma)?;
    let w_inv = linalg::inverse_rational(&w_sigma).map_err(|e| match e {
        Error::Singular => Error::NotControllable,
        other => other,
    })?;
    let w_gamma = walk_matrix_columns(&a_gamma)?;
    let q_t = &w_gamma.to_rational() * &w_inv;
    let q = RegularRationalOrthogonal::new(q_t.transpose())?;
    if q.conjugate(&a_sigma) != a_gamma.to_rational() {
        return Err(Error::ValidationFailed("QᵀA(σ)Q differs from A(γ)"));
    }
    Ok(q)
}

/// Whether `Qᵀ A(g) Q` is an integer matrix.
pub fn check_membership(q: &RegularRationalOrthogonal, g: &SignedGraph) -> Result<bool> {
    if q.q.rows() != g.n() {
        return Err(Error::SizeMismatch(q.q.rows(), g.n()));
    }
    Ok(q.conjugate(&adjacency_matrix(g)).is_integral())
}

/// One irreducible factor of `χ(A) mod p` and how it meets the column space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorIntersection {
    pub factor: ModPoly,
    pub multiplicity: usize,
    /// `dim(col_p(ℓQ) ∩ ker_p φ(A))`
    pub intersection_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyReport {
    pub p: u64,
    /// `dim col_p(ℓQ)`
    pub column_rank: usize,
    pub nonzero: bool,
    pub totally_isotropic: bool,
    pub a_invariant: bool,
    /// `qᵀ A^k q ≡ 0 (mod 4)` for every lift column `q`, `k < n`; only for `p = 2`.
    pub walk_forms_mod4: Option<bool>,
    pub factors: Vec<FactorIntersection>,
    /// Every factor meeting the column space is a multiple factor, and at least one does.
    pub multiple_factor_found: bool,
    /// For odd `p`: the first meeting factor `φ` and whether `p^{deg φ + 1} | det φ(A)`.
    pub strict_divisibility: Option<(ModPoly, bool)>,
}

impl IsotropyReport {
    pub fn all_pass(&self) -> bool {
        self.nonzero
            && self.totally_isotropic
            && self.a_invariant
            && self.walk_forms_mod4.unwrap_or(true)
            && self.multiple_factor_found
            && self.strict_divisibility.as_ref().is_none_or(|(_, ok)| *ok)
    }
}

fn rank_mod(rows: &[Vec<u64>], p: u64) -> usize {
    let mut a = rows.to_vec();
    echelon_mod_p(&mut a, p)
}

fn transpose_u64(m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Basis of the right kernel of `m` over 𝔽_p, as row vectors.
fn kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut a = m.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let rank = echelon_mod_p(&mut a, p);
    let mut pivots = Vec::new();
    for row in a.iter().take(rank) {
        pivots.push(row.iter().position(|&x| x != 0).expect("nonzero pivot row"));
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][free]) % p;
            }
            v
        })
        .collect()
}

/// Checks that `col_p(ℓQ)` is a nonzero, totally isotropic, `A`-invariant
/// subspace, locates the multiple factors of `χ(A) mod p` it meets and, for
/// odd `p`, the divisibility `p^{deg φ + 1} | det φ(A)`. Verification only.
pub fn isotropy_diagnostic(q: &RegularRationalOrthogonal, g: &SignedGraph, p: u64) -> Result<IsotropyReport> {
    require_prime(p)?;
    if !q.level.is_multiple_of(&BigInt::from(p)) {
        return Err(Error::Precondition("p must divide the level of Q"));
    }
    if !check_membership(q, g)? {
        return Err(Error::Precondition("Q must conjugate A(g) to an integer matrix"));
    }
    let n = g.n();
    let a = adjacency_matrix(g);
    let lift_mod = q.lift.reduce_mod(p);
    let a_mod = a.reduce_mod(p);
    // columns of the lift as row vectors
    let cols = transpose_u64(&lift_mod);
    let column_rank = rank_mod(&cols, p);

    let totally_isotropic = cols.iter().all(|x| {
        cols.iter().all(|y| x.iter().zip(y).fold(0, |acc, (&s, &t)| (acc + mul_mod(s, t, p)) % p) == 0)
    });

    let image: Vec<Vec<u64>> = cols
        .iter()
        .map(|c| {
            (0..n)
                .map(|i| (0..n).fold(0, |acc, j| (acc + mul_mod(a_mod[i][j], c[j], p)) % p))
                .collect()
        })
        .collect();
    let mut stacked = cols.clone();
    stacked.extend(image);
    let a_invariant = rank_mod(&stacked, p) == column_rank;

    let walk_forms_mod4 = (p == 2).then(|| {
        let four = BigInt::from(4);
        (0..n).all(|j| {
            let col = q.lift.column(j);
            let mut v = col.clone();
            (0..n).all(|_| {
                let form: BigInt = col.iter().zip(&v).map(|(x, y)| x * y).sum();
                v = a.mul_vec(&v);
                form.is_multiple_of(&four)
            })
        })
    });

    let chi = reduce_mod_p(&charpoly(&a)?, p)?;
    let mut factors = Vec::new();
    for (factor, multiplicity) in chi.factor(1) {
        let kernel = kernel_mod_p(&factor.eval_matrix_mod(&a_mod), p);
        let mut union = cols.clone();
        union.extend(kernel.iter().cloned());
        let intersection_dim = column_rank + kernel.len() - rank_mod(&union, p);
        factors.push(FactorIntersection { factor, multiplicity, intersection_dim });
    }
    let meeting: Vec<&FactorIntersection> = factors.iter().filter(|f| f.intersection_dim > 0).collect();
    let multiple_factor_found = !meeting.is_empty() && meeting.iter().all(|f| f.multiplicity >= 2);

    let strict_divisibility = match meeting.first() {
        Some(f) if p != 2 => {
            let phi_a = f.factor.lift().eval_matrix(&a)?;
            let det = linalg::det(&phi_a)?;
            let deg = f.factor.degree().unwrap_or(0) as u32;
            let modulus = BigInt::from(p).pow(deg + 1);
            Some((f.factor.clone(), det.is_multiple_of(&modulus)))
        }
        _ => None,
    };

    Ok(IsotropyReport {
        p,
        column_rank,
        nonzero: column_rank > 0,
        totally_isotropic,
        a_invariant,
        walk_forms_mod4,
        factors,
        multiple_factor_found,
        strict_divisibility,
    })
}

pub const DEFAULT_MATE_MAX_N: usize = 5;
pub const MATE_HARD_CAP: usize = 6;

/// Number of signed graphs on `n` labelled vertices: `3^{n(n-1)/2}`.
pub fn search_space_size(n: usize) -> u64 {
    3u64.pow((n * n.saturating_sub(1) / 2) as u32)
}

/// The graph encoded by `index`: base-3 digits over the pairs `(u, v)`,
/// `u < v` in lexicographic order, least significant first; digit 0 is no
/// edge, 1 a positive edge, 2 a negative edge.
pub fn candidate_from_index(n: usize, mut index: u64) -> SignedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match index % 3 {
                1 => edges.push((u, v, Sign::Plus)),
                2 => edges.push((u, v, Sign::Minus)),
                _ => {}
            }
            index /= 3;
        }
    }
    SignedGraph::new(n, edges).expect("pairs are distinct")
}

pub fn candidate_index(g: &SignedGraph) -> u64 {
    let n = g.n();
    let mut index = 0u64;
    let mut weight = 1u64;
    for u in 0..n {
        for v in u + 1..n {
            index += weight
                * match g.sign(u, v) {
                    None => 0,
                    Some(Sign::Plus) => 1,
                    Some(Sign::Minus) => 2,
                };
            weight *= 3;
        }
    }
    index
}

/// Generalized characteristic polynomials over machine integers, for the scan.
fn spectrum_key(a: &[Vec<i64>]) -> (Vec<i64>, Vec<i64>) {
    let n = a.len();
    let chi = berkowitz(n, |i, j| a[i][j]);
    let comp = berkowitz(n, |i, j| if i == j { 0 } else { 1 - a[i][j] });
    (chi, comp)
}

/// Candidates of one index range that match the base graph's generalized spectrum.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanResult {
    pub range: (u64, u64),
    pub examined: u64,
    pub pruned: u64,
    pub matches: Vec<u64>,
}

/// Scans `range`, stopping after `budget` candidates.
pub fn scan_candidates(base: &SignedGraph, range: Range<u64>, budget: u64) -> ScanResult {
    let n = base.n();
    let base_edges = base.edges().len();
    let to_i64 = |g: &SignedGraph| -> Vec<Vec<i64>> {
        g.adjacency_i8().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
    };
    let key = spectrum_key(&to_i64(base));
    let mut out = ScanResult { range: (range.start, range.end), ..ScanResult::default() };
    for index in range {
        if out.examined == budget {
            break;
        }
        out.examined += 1;
        let cand = candidate_from_index(n, index);
        // trace(A²) = 2|E|
        if cand.edges().len() != base_edges {
            out.pruned += 1;
            continue;
        }
        if spectrum_key(&to_i64(&cand)) != key {
            out.pruned += 1;
            continue;
        }
        out.matches.push(index);
    }
    out
}

/// One isomorphism class of generalized cospectral mates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mate {
    pub graph: SignedGraph,
    /// Smallest candidate index in the class.
    pub index: u64,
    /// How many labelled candidates fall in this class.
    pub labelled_count: u64,
    /// `perm` with `permute(base, perm) == graph`, when isomorphic.
    pub witness: Option<Vec<usize>>,
    /// The rational conjugator, when the base graph is controllable.
    pub conjugator: Option<RegularRationalOrthogonal>,
}

impl Mate {
    pub fn is_isomorphic(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MateReport {
    pub base: SignedGraph,
    pub mates: Vec<Mate>,
    pub search_space_size: u64,
    pub examined: u64,
    pub pruned_count: u64,
    pub complete: bool,
    /// `None` when the budget ran out before the space was exhausted.
    pub dgs_empirical: Option<bool>,
}

/// Merges scan results (in any order) into a report; classes are formed
/// in increasing candidate-index order, so the output is deterministic.
pub fn assemble_report(base: &SignedGraph, mut scans: Vec<ScanResult>) -> MateReport {
    let n = base.n();
    scans.sort_by_key(|s| s.range);
    let total = search_space_size(n);
    let examined: u64 = scans.iter().map(|s| s.examined).sum();
    let pruned_count = scans.iter().map(|s| s.pruned).sum();
    let mut matches: Vec<u64> = scans.iter().flat_map(|s| s.matches.iter().copied()).collect();
    matches.sort_unstable();

    let mut mates: Vec<Mate> = Vec::new();
    for index in matches {
        let g = candidate_from_index(n, index);
        if let Some(class) = mates.iter_mut().find(|m| find_isomorphism(&m.graph, &g).is_some()) {
            class.labelled_count += 1;
            continue;
        }
        let witness = find_isomorphism(base, &g);
        let conjugator = recover_conjugator(base, &g).ok();
        mates.push(Mate { graph: g, index, labelled_count: 1, witness, conjugator });
    }
    let complete = examined == total;
    let dgs_empirical = complete.then(|| mates.iter().all(Mate::is_isomorphic));
    MateReport {
        base: base.clone(),
        mates,
        search_space_size: total,
        examined,
        pruned_count,
        complete,
        dgs_empirical,
    }
}

/// Exhaustive search over all signed graphs on `n` vertices for
/// generalized cospectral mates, grouped up to isomorphism. `budget` caps
/// the number of candidates examined.
pub fn mate_search(g: &SignedGraph, max_n: usize, budget: u64) -> Result<MateReport> {
    let cap = max_n.min(MATE_HARD_CAP);
    if g.n() > cap {
        return Err(Error::TooLarge { n: g.n(), max: cap });
    }
    let scan = scan_candidates(g, 0..search_space_size(g.n()), budget);
    Ok(assemble_report(g, vec![scan]))
}

/// Splits `0..total` into `parts` contiguous ranges.
pub fn partition_space(total: u64, parts: u64) -> Vec<Range<u64>> {
    let parts = parts.max(1);
    let chunk = total.div_ceil(parts).max(1);
    (0..parts)
        .map(|k| (k * chunk).min(total)..((k + 1) * chunk).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}

/// `Q = (1/k)·m` as a regular orthogonal matrix, when it is one.
pub fn scaled_orthogonal(m: &IntMatrix, k: i64) -> Result<RegularRationalOrthogonal> {
    RegularRationalOrthogonal::new(RatMatrix::from_scaled(m, &BigInt::from(k)))
}
