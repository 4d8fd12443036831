//! Built-in checks: the embedded fixtures against their known
//! invariants, and seeded property suites over random inputs.

use std::fmt::Write as _;

use dgs_core::arith::Effort;
use dgs_core::certify::{
    bipartite_blocks, certify, gram_charpoly, verify_abb, verify_chiab, Controllability, DgsCertificate, Verdict,
};
use dgs_core::graph::{adjacency_matrix, permutation_matrix, permute};
use dgs_core::lab::{mate_search, recover_conjugator, DEFAULT_MATE_MAX_N};
use dgs_core::linalg::{det, has_mod_p2_kernel_vector, rank_mod_p, smith_normal_form};
use dgs_core::matrix::IntMatrix;
use dgs_core::poly::{discriminant, has_multiple_factor_mod_p, sylvester_kernel_vs_gcd, IntPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::corpus;
use crate::fixtures;
use crate::format::parse_matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        SuiteOutcome { name, cases: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }

    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub seed: u64,
    pub effort: Effort,
    /// Largest order for the exhaustive mate suite.
    pub mates_max_n: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { seed: 1, effort: Effort::default(), mates_max_n: DEFAULT_MATE_MAX_N }
    }
}

pub const SUITES: [&str; 14] = [
    "example1",
    "example2",
    "example3",
    "k2",
    "c4",
    "chiab",
    "abb",
    "disc-mod4",
    "disc-mod-p",
    "sylvester",
    "snf",
    "roundtrip",
    "mates",
    "odd-d",
];

/// Suites whose name contains `filter` (all of them without a filter).
pub fn selected(filter: Option<&str>) -> Vec<&'static str> {
    SUITES.iter().copied().filter(|s| filter.is_none_or(|f| s.contains(f))).collect()
}

pub fn run(filter: Option<&str>, settings: &Settings) -> Vec<SuiteOutcome> {
    selected(filter).into_iter().map(|name| run_suite(name, settings)).collect()
}

pub fn run_suite(name: &'static str, s: &Settings) -> SuiteOutcome {
    let seed = s.seed;
    match name {
        "chiab" => chiab_suite(seed),
        "abb" => abb_suite(seed),
        "disc-mod4" => disc_mod4_suite(seed),
        "disc-mod-p" => disc_mod_p_suite(seed),
        "sylvester" => sylvester_suite(seed),
        "snf" => snf_suite(seed),
        "roundtrip" => roundtrip_suite(seed),
        "mates" => mates_suite(s.mates_max_n, &s.effort),
        "odd-d" => odd_d_suite(seed, &s.effort),
        fixture => check_fixture(fixture, fixtures::text(fixture).unwrap_or(""), &s.effort),
    }
}

pub fn table(outcomes: &[SuiteOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status}  {:<12} {:>5} cases", o.name, o.cases);
        for f in o.failures.iter().take(5) {
            let _ = writeln!(out, "      {f}");
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let _ = writeln!(out, "{passed}/{} suites passed", outcomes.len());
    out
}

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}

fn big(s: &str) -> BigInt {
    s.parse().expect("decimal literal")
}

/// Known invariants of one fixture.
struct Expected {
    abs_det_w: Option<BigInt>,
    rank_w: usize,
    class: Controllability,
    /// `χ` up to the global sign `(-1)^n`.
    chi: Option<IntPoly>,
    d: Option<BigInt>,
    verdict: &'static str,
}

fn expected(name: &str) -> Option<Expected> {
    let e = match name {
        "example1" => Expected {
            abs_det_w: Some(BigInt::from(2).pow(6) * BigInt::from(11).pow(3) * 3413 * 697913),
            rank_w: 13,
            class: Controllability::Controllable,
            chi: Some(&poly(&[0, 1]) * &poly(&[1, 0, -496, 0, 1022, 0, -679, 0, 194, 0, -24, 0, 1])),
            d: Some(big("107") * big("15259") * big("12978894869")),
            verdict: "CertifiedDGS",
        },
        "example2" => Expected {
            abs_det_w: Some(BigInt::from(2).pow(14)),
            rank_w: 14,
            class: Controllability::Controllable,
            chi: Some(&poly(&[1, -3, -4, 9, 4, -6, -1, 1]) * &poly(&[-1, -3, 4, 9, -4, -6, 1, 1])),
            d: Some(BigInt::from(17 * 23 * 64879)),
            verdict: "CertifiedDGS",
        },
        "example3" => Expected {
            abs_det_w: Some(BigInt::zero()),
            rank_w: 13,
            class: Controllability::AlmostControllable,
            chi: Some(
                &(&poly(&[-1, 1]) * &poly(&[1, 1])) * &poly(&[1, 0, -23, 0, 111, 0, -151, 0, 75, 0, -15, 0, 1]),
            ),
            d: Some(BigInt::from(13) * 45953 * 106501),
            verdict: "CertifiedDGS",
        },
        "k2" => Expected {
            abs_det_w: Some(BigInt::zero()),
            rank_w: 1,
            class: Controllability::AlmostControllable,
            chi: Some(poly(&[-1, 0, 1])),
            d: Some(BigInt::one()),
            verdict: "CertifiedDGS",
        },
        "c4" => Expected {
            abs_det_w: Some(BigInt::zero()),
            rank_w: 1,
            class: Controllability::Neither,
            chi: Some(poly(&[0, 0, -4, 0, 1])),
            d: None,
            verdict: "NotApplicable",
        },
        _ => return None,
    };
    Some(e)
}

/// Parses `text` and compares its certificate with the known values for `name`.
pub fn check_fixture(name: &'static str, text: &str, effort: &Effort) -> SuiteOutcome {
    let mut o = SuiteOutcome::new(name);
    let Some(exp) = expected(name) else {
        o.case(false, || format!("no known invariants for `{name}`"));
        return o;
    };
    let g = match parse_matrix(text) {
        Ok(g) => g,
        Err(e) => {
            o.case(false, || format!("parse error: {e}"));
            return o;
        }
    };
    let c = match certify(&g, effort) {
        Ok(c) => c,
        Err(e) => {
            o.case(false, || format!("certify failed: {e}"));
            return o;
        }
    };
    if let Some(d) = &exp.abs_det_w {
        o.case(c.walk.det.abs() == *d, || format!("|det W| = {}, expected {d}", c.walk.det.abs()));
    }
    o.case(c.walk.rank == exp.rank_w, || format!("rank W = {}, expected {}", c.walk.rank, exp.rank_w));
    o.case(c.class() == exp.class, || format!("class {}, expected {}", c.class(), exp.class));
    if let Some(chi) = &exp.chi {
        o.case(c.chi == *chi || c.chi == -chi, || format!("chi = {}, expected +-({chi})", c.chi));
    }
    o.case(c.d == exp.d, || format!("D = {:?}, expected {:?}", c.d, exp.d));
    o.case(c.verdict.name() == exp.verdict, || format!("verdict {}, expected {}", c.verdict.name(), exp.verdict));
    o
}

fn chiab_suite(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("chiab");
    for g in corpus::unit_cdelta_bipartite(seed, 200, 12) {
        let blocks = bipartite_blocks(&g).expect("bipartite by construction");
        let chi = dgs_core::poly::charpoly(&adjacency_matrix(&g)).expect("square");
        let ok = verify_chiab(&chi, &gram_charpoly(&blocks), g.n());
        o.case(ok, || format!("chi identity fails for {:?}", g.edges()));
    }
    o
}

fn abb_suite(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("abb");
    for g in corpus::unit_cdelta_bipartite(seed, 200, 12) {
        let blocks = bipartite_blocks(&g).expect("bipartite by construction");
        let chi = dgs_core::poly::charpoly(&adjacency_matrix(&g)).expect("square");
        let gram = gram_charpoly(&blocks);
        let dg = if gram.degree() == Some(0) { BigInt::one() } else { discriminant(&gram).expect("monic") };
        let ok = verify_abb(&discriminant(&chi).expect("monic"), &dg, g.n());
        o.case(ok, || format!("discriminant identity fails for {:?}", g.edges()));
    }
    o
}

fn disc_mod4_suite(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("disc-mod4");
    let four = BigInt::from(4);
    for f in corpus::monic_polynomials(seed, 1000, 8, 9) {
        let d = discriminant(&f).expect("monic");
        o.case(d.mod_floor(&four) != BigInt::from(2), || format!("disc({f}) = {d} = 2 mod 4"));
    }
    o
}

const PRIMES_TO_50: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn disc_mod_p_suite(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("disc-mod-p");
    for f in corpus::monic_polynomials(seed, 1000, 8, 9) {
        let d = discriminant(&f).expect("monic");
        for p in PRIMES_TO_50 {
            let lhs = d.is_multiple_of(&BigInt::from(p));
            let rhs = has_multiple_factor_mod_p(&f, p).expect("prime");
            o.case(lhs == rhs, || format!("{f}, p = {p}: p | disc is {lhs}, multiple factor is {rhs}"));
        }
    }
    o
}

fn sylvester_suite(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("sylvester");
    for f in corpus::monic_polynomials(seed, 1000, 8, 9) {
        for p in PRIMES_TO_50 {
            let c = sylvester_kernel_vs_gcd(&f, p).expect("prime");
            o.case(c.agree, || format!("{f}, p = {p}: gcd degree {}, corank {}", c.gcd_degree, c.corank));
        }
    }
    o
}

/// `x ≢ 0 (mod p)` with `Mx ≡ 0 (mod p²)`, by enumeration over `(ℤ/p²)ⁿ`.
pub fn brute_force_p2_kernel(m: &IntMatrix, p: u64) -> bool {
    let n = m.rows();
    let q = p * p;
    let bq = BigInt::from(q);
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|i| m.row(i).iter().map(|x| x.mod_floor(&bq).try_into().expect("reduced")).collect())
        .collect();
    let mut x = vec![0u64; n];
    loop {
        let mut k = 0;
        while k < n && x[k] == q - 1 {
            x[k] = 0;
            k += 1;
        }
        if k == n {
            return false;
        }
        x[k] += 1;
        if x.iter().any(|&v| v % p != 0)
            && rows.iter().all(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum::<u64>() % q == 0)
        {
            return true;
        }
    }
}

fn snf_suite(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("snf");
    for m in corpus::square_matrices(seed, 200, 6) {
        let n = m.rows();
        let snf = smith_normal_form(&m);
        o.case(&(&snf.u * &m) * &snf.v == snf.diagonal_matrix(), || format!("UMV != diag(d) for\n{m}"));
        let chain = snf.invariants.windows(2).all(|w| w[1].is_multiple_of(&w[0]) || w.iter().all(Zero::is_zero));
        o.case(chain, || format!("divisibility chain broken: {:?}", snf.invariants));
        let product: BigInt = snf.invariants.iter().product();
        let d = det(&m).expect("square");
        o.case(product == d.abs(), || format!("prod d = {product}, |det| = {}", d.abs()));
        for p in [2u64, 3, 5] {
            let bp = BigInt::from(p);
            let expected = snf.invariants.iter().take_while(|x| !x.is_multiple_of(&bp)).count();
            let rank_p = rank_mod_p(&m, p).expect("prime");
            o.case(rank_p == expected, || format!("rank_{p} = {rank_p}, expected {expected}"));
        }
        for (p, max_n) in [(2u64, 6), (3, 4)] {
            if n > max_n {
                continue;
            }
            let fast = has_mod_p2_kernel_vector(&m, p).expect("prime");
            o.case(fast == brute_force_p2_kernel(&m, p), || format!("p = {p} kernel test wrong for\n{m}"));
        }
    }
    o
}

fn roundtrip_suite(seed: u64) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("roundtrip");
    let mut r = corpus::rng(seed ^ 0x7404);
    for g in corpus::controllable_graphs(seed, 50, 8) {
        let perm = corpus::random_permutation(&mut r, g.n());
        let h = permute(&g, &perm).expect("bijection");
        let ok = match recover_conjugator(&g, &h) {
            Ok(q) => {
                q.level().is_one()
                    && q.lift() == &permutation_matrix(&perm).expect("bijection")
                    && q.conjugate(&adjacency_matrix(&g)) == adjacency_matrix(&h).to_rational()
            }
            Err(_) => false,
        };
        o.case(ok, || format!("recovery failed for {:?} under {perm:?}", g.edges()));
    }
    o
}

fn mates_suite(max_n: usize, effort: &Effort) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("mates");
    for n in 1..=max_n.min(DEFAULT_MATE_MAX_N) {
        for g in corpus::certified_classes(n, effort) {
            let ok = mate_search(&g, DEFAULT_MATE_MAX_N, u64::MAX).is_ok_and(|r| r.dgs_empirical == Some(true));
            o.case(ok, || format!("certified graph {:?} has a non-isomorphic mate", g.edges()));
        }
    }
    o
}

fn certificate_is_consistent(c: &DgsCertificate) -> bool {
    c.verdict != Verdict::CertifiedDgs || c.d.as_ref().is_some_and(|d| d.is_odd())
}

fn odd_d_suite(seed: u64, effort: &Effort) -> SuiteOutcome {
    let mut o = SuiteOutcome::new("odd-d");
    let graphs = fixtures::ALL
        .iter()
        .map(|(n, _)| fixtures::graph(n).expect("embedded"))
        .chain(corpus::unit_cdelta_bipartite(seed, 200, 12));
    for g in graphs {
        let c = certify(&g, effort).expect("certify is total");
        if c.is_certified() {
            o.case(certificate_is_consistent(&c), || format!("certified with D = {:?}", c.d));
        }
    }
    o
}
