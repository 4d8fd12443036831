mod common;

use common::{controllable_corpus, random_graph, random_permutation, rng, unit_cdelta_corpus};
use dgs_core::arith::{factor_integer, Effort};
use dgs_core::certify::certify;
use dgs_core::graph::{adjacency_matrix, permutation_matrix, permute, Sign, SignedGraph};
use dgs_core::lab::{
    assemble_report, candidate_index, check_membership, generalized_cospectral, isotropy_diagnostic, mate_search, recover_conjugator, scaled_orthogonal,
    MateReport, scan_candidates, RegularRationalOrthogonal, DEFAULT_MATE_MAX_N,
};
use dgs_core::matrix::{IntMatrix, RatMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

fn assert_conjugates(q: &RegularRationalOrthogonal, sigma: &SignedGraph, gamma: &SignedGraph) {
    let n = sigma.n();
    assert_eq!(&q.q().transpose() * q.q(), RatMatrix::identity(n));
    assert!(q.q().row_sums().iter().all(One::is_one));
    assert_eq!(q.conjugate(&adjacency_matrix(sigma)), adjacency_matrix(gamma).to_rational());
    // ℓ is minimal: the lift entries and ℓ are coprime
    let g = q.lift().entries().iter().fold(q.level().clone(), |acc, x| acc.gcd(x));
    assert!(g.is_one());
}

fn primes_of(n: &BigInt) -> Vec<u64> {
    let f = factor_integer(n, &Effort::default()).unwrap();
    f.factors.iter().map(|(p, _)| p.to_u64().unwrap()).collect()
}

fn assert_diagnostics_hold(q: &RegularRationalOrthogonal, g: &SignedGraph) {
    for p in primes_of(q.level()) {
        let r = isotropy_diagnostic(q, g, p).unwrap();
        assert!(r.nonzero && r.totally_isotropic && r.a_invariant, "p = {p}: {r:?}");
        assert_eq!(r.walk_forms_mod4, (p == 2).then_some(true));
        assert!(r.multiple_factor_found, "p = {p}: {r:?}");
        if let Some((_, ok)) = &r.strict_divisibility {
            assert!(ok, "p = {p}: {r:?}");
        }
        assert!(r.all_pass());
    }
}

#[test]
fn recovered_conjugator_of_a_relabelling_is_the_permutation() {
    let mut r = rng(60);
    for g in controllable_corpus(61, 50, 8) {
        let perm = random_permutation(&mut r, g.n());
        let h = permute(&g, &perm).unwrap();
        let q = recover_conjugator(&g, &h).unwrap();
        assert!(q.is_permutation());
        assert_eq!(q.lift(), &permutation_matrix(&perm).unwrap());
        assert_conjugates(&q, &g, &h);
    }
}

fn check_report(report: &MateReport) {
    let base = &report.base;
    for m in &report.mates {
        assert!(generalized_cospectral(base, &m.graph).unwrap());
        if let Some(w) = &m.witness {
            assert_eq!(&permute(base, w).unwrap(), &m.graph);
        }
        if let Some(q) = &m.conjugator {
            assert_conjugates(q, base, &m.graph);
            assert_eq!(q.is_permutation(), m.is_isomorphic());
            if !q.is_permutation() {
                assert!(check_membership(q, base).unwrap());
                assert_diagnostics_hold(q, base);
            }
        }
    }
    if report.complete {
        let labelled: u64 = report.mates.iter().map(|m| m.labelled_count).sum();
        assert_eq!(labelled + report.pruned_count, report.search_space_size);
        assert_eq!(report.dgs_empirical, Some(report.mates.iter().all(|m| m.is_isomorphic())));
    }
}

#[test]
fn mate_reports_are_consistent() {
    for g in controllable_corpus(62, 40, 5) {
        let report = mate_search(&g, DEFAULT_MATE_MAX_N, u64::MAX).unwrap();
        assert!(report.complete);
        assert!(report.mates.iter().any(|m| m.is_isomorphic()));
        check_report(&report);
    }
}

#[test]
fn partial_report_around_a_non_isomorphic_mate() {
    use Sign::{Minus, Plus};
    let g = SignedGraph::new(
        6,
        [(0, 1, Plus), (0, 3, Plus), (0, 5, Minus), (1, 2, Plus), (1, 4, Plus), (1, 5, Plus), (2, 3, Plus), (3, 4, Minus), (4, 5, Plus)],
    )
    .unwrap();
    let q = block_conjugator(6, 4, &[0, 1, 2, 3, 4, 5]);
    let h = SignedGraph::from_adjacency(&q.conjugate(&adjacency_matrix(&g)).to_integer().unwrap()).unwrap();
    assert!(generalized_cospectral(&g, &h).unwrap());
    let window = |i: u64| i.saturating_sub(500)..i + 500;
    let scans = [candidate_index(&g), candidate_index(&h)]
        .into_iter()
        .map(|i| scan_candidates(&g, window(i), u64::MAX))
        .collect();
    let report = assemble_report(&g, scans);
    assert!(!report.complete);
    assert_eq!(report.dgs_empirical, None);
    assert_eq!(report.examined, 2000);
    let mate = report.mates.iter().find(|m| m.graph == h).unwrap();
    assert!(!mate.is_isomorphic());
    let found = mate.conjugator.as_ref().unwrap();
    assert_eq!(found, &q);
    check_report(&report);
}

#[test]
fn certified_small_graphs_are_empirically_dgs() {
    let mut checked = 0;
    for g in unit_cdelta_corpus(63, 120, 5) {
        if !certify(&g, &Effort::default()).unwrap().is_certified() {
            continue;
        }
        checked += 1;
        let report = mate_search(&g, DEFAULT_MATE_MAX_N, u64::MAX).unwrap();
        assert_eq!(report.dgs_empirical, Some(true), "{:?}", g.edges());
        check_report(&report);
    }
    assert!(checked >= 20, "{checked}");
}

/// `diag(Q₀, I)` relabelled by `perm`, with `Q₀ = (2/k)J - I` of size `k`.
fn block_conjugator(n: usize, k: usize, perm: &[usize]) -> RegularRationalOrthogonal {
    let m = IntMatrix::from_fn(n, n, |i, j| {
        let (a, b) = (perm[i], perm[j]);
        let v = if a < k && b < k { 2 - if a == b { k as i64 } else { 0 } } else if a == b { k as i64 } else { 0 };
        BigInt::from(v)
    });
    scaled_orthogonal(&m, k as i64).unwrap()
}

#[test]
fn isotropy_holds_for_constructed_rational_conjugators() {
    let mut r = rng(64);
    let mut members = [0usize; 2];
    for trial in 0..4000 {
        let k = if trial % 2 == 0 { 4 } else { 3 };
        let n = r.gen_range(k..=8);
        let g = random_graph(&mut r, n, 0.5);
        let q = block_conjugator(n, k, &random_permutation(&mut r, n));
        assert_eq!(q.level(), &BigInt::from(if k == 4 { 2 } else { 3 }));
        if !check_membership(&q, &g).unwrap() {
            continue;
        }
        members[trial % 2] += 1;
        let conj = q.conjugate(&adjacency_matrix(&g)).to_integer().unwrap();
        assert!(conj.is_symmetric());
        assert_diagnostics_hold(&q, &g);
    }
    assert!(members[0] >= 10 && members[1] >= 10, "{members:?}");
}

#[test]
fn recovery_refuses_almost_controllable_bases() {
    let k2 = SignedGraph::new(2, [(0, 1, Sign::Plus)]).unwrap();
    assert!(recover_conjugator(&k2, &k2).is_err());
    let triangle = SignedGraph::new(3, [(0, 1, Sign::Plus), (1, 2, Sign::Plus), (0, 2, Sign::Plus)]).unwrap();
    assert!(recover_conjugator(&triangle, &triangle).is_err());
    assert!(RatMatrix::identity(0).row_sums().iter().all(|x| !x.is_zero()));
}
