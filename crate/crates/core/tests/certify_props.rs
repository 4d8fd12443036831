mod common;

use common::{random_graph, rng, unit_cdelta_corpus};
use dgs_core::arith::Effort;
use dgs_core::certify::{
    bipartite_blocks, certify, delta, gram_charpoly, verify_abb, verify_chiab, walk_matrix, Controllability, Reason,
    Verdict,
};
use dgs_core::graph::{adjacency_matrix, find_bipartition, permute};
use dgs_core::linalg::det;
use dgs_core::matrix::IntMatrix;
use dgs_core::poly::{charpoly, discriminant, IntPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

#[test]
fn chi_and_discriminant_factor_through_the_gram_matrix() {
    for g in unit_cdelta_corpus(50, 200, 12) {
        let n = g.n();
        let blocks = bipartite_blocks(&g).unwrap();
        assert_eq!(blocks.s, n / 2);
        let chi = charpoly(&adjacency_matrix(&g)).unwrap();
        let chi_gram = gram_charpoly(&blocks);
        assert!(verify_chiab(&chi, &chi_gram, n));
        // independent form: x^δ·χ(BBᵀ; x²) built by hand
        let expected = &IntPoly::monomial(delta(n)) * &chi_gram.substitute_square();
        assert_eq!(chi, expected);

        let da = discriminant(&chi).unwrap();
        let dg = if chi_gram.degree() == Some(0) { BigInt::one() } else { discriminant(&chi_gram).unwrap() };
        assert!(verify_abb(&da, &dg, n));
        assert_eq!(da, BigInt::from(4).pow((n / 2) as u32) * &dg * &dg);
    }
}

#[test]
fn bipartite_spectra_are_symmetric() {
    for g in unit_cdelta_corpus(51, 200, 12) {
        let chi = charpoly(&adjacency_matrix(&g)).unwrap();
        let reflected = chi.reflect();
        let expected = if g.n() % 2 == 0 { chi.clone() } else { -&chi };
        assert_eq!(reflected, expected);
    }
}

#[test]
fn unit_cdelta_forces_unimodular_gram() {
    for g in unit_cdelta_corpus(52, 200, 12) {
        let blocks = bipartite_blocks(&g).unwrap();
        assert!(det(&blocks.gram()).unwrap().is_one());
        // the reordered adjacency matrix is [[0, B], [Bᵀ, 0]]
        let a = adjacency_matrix(&permute(&g, &blocks.ordering).unwrap());
        let s = blocks.s;
        let n = g.n();
        for i in 0..n {
            for j in 0..n {
                let expected = match (i < s, j < s) {
                    (true, false) => blocks.b[(i, j - s)].clone(),
                    (false, true) => blocks.b[(j, i - s)].clone(),
                    _ => BigInt::zero(),
                };
                assert_eq!(a[(i, j)], expected);
            }
        }
    }
}

#[test]
fn certified_certificates_have_odd_squarefree_d() {
    let mut certified = 0;
    for g in unit_cdelta_corpus(53, 300, 12) {
        let cert = certify(&g, &Effort::default()).unwrap();
        assert!(matches!(cert.verdict, Verdict::CertifiedDgs | Verdict::NotApplicable(_) | Verdict::Inconclusive(_)));
        if cert.is_certified() {
            certified += 1;
            let d = cert.d.as_ref().unwrap();
            assert!(d.is_odd(), "D = {d}");
            assert!(matches!(cert.class(), Controllability::Controllable | Controllability::AlmostControllable));
            assert!(cert.c_delta.abs().is_one());
            let f = cert.d_factorization.as_ref().unwrap();
            assert!(f.is_complete() && f.factors.iter().all(|(_, e)| *e == 1));
            assert_eq!(cert.gram_discriminant.as_ref().map(|x| x.abs()), Some(d.clone()));
            assert_eq!(cert.crosschecks.chiab, Some(true));
            assert_eq!(cert.crosschecks.abb, Some(true));
            assert!(cert.reasons.is_empty());
        }
    }
    assert!(certified >= 30, "{certified}");
}

#[test]
fn verdict_reasons_follow_the_pipeline() {
    let mut r = rng(54);
    for _ in 0..300 {
        let n = r.gen_range(1..=10);
        let g = random_graph(&mut r, n, 0.3);
        let cert = certify(&g, &Effort::default()).unwrap();
        let walk = walk_matrix(&adjacency_matrix(&g), &Effort::default()).unwrap();
        assert_eq!(cert.walk.rank, walk.rank);
        assert_eq!(walk.class == Controllability::Controllable, !walk.det.is_zero());
        match (&cert.verdict, find_bipartition(&g)) {
            (Verdict::NotApplicable(Reason::NotBipartite(_)), Err(_)) => {}
            (_, Err(_)) => panic!("non-bipartite input got {:?}", cert.verdict),
            (Verdict::NotApplicable(Reason::Unbalanced { s, .. }), Ok(bp)) => assert!(bp.s() < n / 2 && *s == bp.s()),
            (Verdict::NotApplicable(Reason::CoefficientNotUnit(c)), Ok(_)) => assert!(!c.abs().is_one()),
            (Verdict::NotApplicable(Reason::NotControllable { rank }), Ok(_)) => assert!(*rank + 1 < n),
            (Verdict::Inconclusive(Reason::DiscriminantVanishes), Ok(_)) => assert!(cert.discriminant.is_zero()),
            (Verdict::Inconclusive(Reason::CriterionFails { witness }), Ok(_)) => {
                assert!(cert.d.as_ref().unwrap().is_multiple_of(&(witness * witness)))
            }
            (Verdict::CertifiedDgs, Ok(_)) => assert!(cert.d.as_ref().unwrap().is_odd()),
            (v, Ok(_)) => assert!(matches!(v, Verdict::Inconclusive(_)), "{v:?}"),
        }
    }
}

#[test]
fn certify_is_deterministic() {
    for g in unit_cdelta_corpus(55, 40, 12) {
        let e = Effort::new(1_000_000, 3);
        assert_eq!(certify(&g, &e).unwrap(), certify(&g, &e).unwrap());
    }
}

#[test]
fn certification_is_isomorphism_invariant() {
    let mut r = rng(56);
    for g in unit_cdelta_corpus(57, 60, 10) {
        let perm = common::random_permutation(&mut r, g.n());
        let h = permute(&g, &perm).unwrap();
        let (a, b) = (certify(&g, &Effort::default()).unwrap(), certify(&h, &Effort::default()).unwrap());
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.d, b.d);
        assert_eq!(a.chi, b.chi);
        assert_eq!(a.walk.rank, b.walk.rank);
    }
}

#[test]
fn walk_matrix_of_k2() {
    let a = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
    let w = walk_matrix(&a, &Effort::default()).unwrap();
    assert_eq!(w.w, IntMatrix::from_rows(&[[1, 1], [1, 1]]));
    assert_eq!((w.rank, w.class), (1, Controllability::AlmostControllable));
}
