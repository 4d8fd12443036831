//! JSON views of certificates, analyses, factorizations, conjugators and
//! mate reports. Every arbitrary-precision or 64-bit quantity is a decimal
//! string; there are no floating-point values anywhere.

use dgs_core::arith::{Effort, IntFactorization};
use dgs_core::certify::{Crosschecks, DgsCertificate};
use dgs_core::graph::{Sign, SignedGraph};
use dgs_core::lab::{IsotropyReport, MateReport, RegularRationalOrthogonal};
use dgs_core::matrix::{IntMatrix, RatMatrix};
use dgs_core::poly::IntPoly;
use serde::Serialize;

#[derive(Serialize)]
pub struct EffortJson {
    pub rho_iterations: String,
    pub seed: String,
}

impl From<&Effort> for EffortJson {
    fn from(e: &Effort) -> Self {
        EffortJson { rho_iterations: e.rho_iterations.to_string(), seed: e.seed.to_string() }
    }
}

#[derive(Serialize)]
pub struct PrimePower {
    pub p: String,
    pub e: u32,
}

fn prime_powers(f: &IntFactorization) -> Vec<PrimePower> {
    f.factors.iter().map(|(p, e)| PrimePower { p: p.to_string(), e: *e }).collect()
}

#[derive(Serialize)]
pub struct FactorizationJson {
    pub input: String,
    pub factors: Vec<PrimePower>,
    pub cofactor: String,
    pub complete: bool,
    pub display: String,
}

impl From<&IntFactorization> for FactorizationJson {
    fn from(f: &IntFactorization) -> Self {
        FactorizationJson {
            input: f.input.to_string(),
            factors: prime_powers(f),
            cofactor: f.cofactor().to_string(),
            complete: f.is_complete(),
            display: f.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct CrosschecksJson {
    pub chiab: Option<bool>,
    pub abb: Option<bool>,
}

impl From<&Crosschecks> for CrosschecksJson {
    fn from(c: &Crosschecks) -> Self {
        CrosschecksJson { chiab: c.chiab, abb: c.abb }
    }
}

fn coeffs(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

fn rat_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect()
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub n: usize,
    pub delta: usize,
    pub class: &'static str,
    pub c_delta: String,
    pub chi: Vec<String>,
    pub chi_gram: Option<Vec<String>>,
    pub discriminant: String,
    pub sqrt_discriminant: Option<String>,
    #[serde(rename = "D")]
    pub d: Option<String>,
    #[serde(rename = "D_factorization")]
    pub d_factorization: Option<Vec<PrimePower>>,
    pub cofactor: Option<String>,
    pub crosschecks: CrosschecksJson,
    pub verdict: &'static str,
    pub reasons: Vec<String>,
    pub effort: EffortJson,
}

impl From<&DgsCertificate> for CertificateJson {
    fn from(c: &DgsCertificate) -> Self {
        CertificateJson {
            n: c.n,
            delta: c.delta,
            class: c.class().name(),
            c_delta: c.c_delta.to_string(),
            chi: coeffs(&c.chi),
            chi_gram: c.chi_gram.as_ref().map(coeffs),
            discriminant: c.discriminant.to_string(),
            sqrt_discriminant: c.sqrt_discriminant.as_ref().map(ToString::to_string),
            d: c.d.as_ref().map(ToString::to_string),
            d_factorization: c.d_factorization.as_ref().map(prime_powers),
            cofactor: c.d_factorization.as_ref().map(|f| f.cofactor().to_string()),
            crosschecks: (&c.crosschecks).into(),
            verdict: c.verdict.name(),
            reasons: c.reasons.clone(),
            effort: (&c.effort).into(),
        }
    }
}

#[derive(Serialize)]
pub struct BipartitionJson {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Everything the certifier computes, without the verdict.
#[derive(Serialize)]
pub struct AnalysisJson {
    pub n: usize,
    pub edges: usize,
    pub delta: usize,
    pub class: &'static str,
    pub rank_w: usize,
    pub det_w: String,
    pub det_w_factorization: Option<FactorizationJson>,
    pub bipartition: Option<BipartitionJson>,
    pub chi: Vec<String>,
    pub chi_display: String,
    pub c_delta: String,
    pub chi_gram: Option<Vec<String>>,
    pub discriminant: String,
    pub gram_discriminant: Option<String>,
    pub sqrt_discriminant: Option<String>,
    #[serde(rename = "D")]
    pub d: Option<String>,
    #[serde(rename = "D_factorization")]
    pub d_factorization: Option<FactorizationJson>,
    pub crosschecks: CrosschecksJson,
    pub effort: EffortJson,
}

impl AnalysisJson {
    pub fn new(g: &SignedGraph, c: &DgsCertificate) -> Self {
        AnalysisJson {
            n: c.n,
            edges: g.edges().len(),
            delta: c.delta,
            class: c.class().name(),
            rank_w: c.walk.rank,
            det_w: c.walk.det.to_string(),
            det_w_factorization: c.walk.det_factorization.as_ref().map(Into::into),
            bipartition: c.blocks.as_ref().map(|b| BipartitionJson {
                left: b.ordering[..b.s].to_vec(),
                right: b.ordering[b.s..].to_vec(),
            }),
            chi: coeffs(&c.chi),
            chi_display: c.chi.to_string(),
            c_delta: c.c_delta.to_string(),
            chi_gram: c.chi_gram.as_ref().map(coeffs),
            discriminant: c.discriminant.to_string(),
            gram_discriminant: c.gram_discriminant.as_ref().map(ToString::to_string),
            sqrt_discriminant: c.sqrt_discriminant.as_ref().map(ToString::to_string),
            d: c.d.as_ref().map(ToString::to_string),
            d_factorization: c.d_factorization.as_ref().map(Into::into),
            crosschecks: (&c.crosschecks).into(),
            effort: (&c.effort).into(),
        }
    }
}

#[derive(Serialize)]
pub struct ConjugatorJson {
    pub level: String,
    pub is_permutation: bool,
    pub q: Vec<Vec<String>>,
    pub lift: Vec<Vec<String>>,
}

impl From<&RegularRationalOrthogonal> for ConjugatorJson {
    fn from(q: &RegularRationalOrthogonal) -> Self {
        ConjugatorJson {
            level: q.level().to_string(),
            is_permutation: q.is_permutation(),
            q: rat_rows(q.q()),
            lift: int_rows(q.lift()),
        }
    }
}

#[derive(Serialize)]
pub struct FactorMeetJson {
    pub factor: String,
    pub multiplicity: usize,
    pub intersection_dim: usize,
}

#[derive(Serialize)]
pub struct StrictDivisibilityJson {
    pub factor: String,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct IsotropyJson {
    pub p: String,
    pub column_rank: usize,
    pub nonzero: bool,
    pub totally_isotropic: bool,
    pub a_invariant: bool,
    pub walk_forms_mod4: Option<bool>,
    pub factors: Vec<FactorMeetJson>,
    pub multiple_factor_found: bool,
    pub strict_divisibility: Option<StrictDivisibilityJson>,
    pub all_pass: bool,
}

/// `x^2 + 1` without the `(mod p)` suffix.
fn mod_poly_text(f: &dgs_core::poly::ModPoly) -> String {
    f.lift().to_string()
}

impl From<&IsotropyReport> for IsotropyJson {
    fn from(r: &IsotropyReport) -> Self {
        IsotropyJson {
            p: r.p.to_string(),
            column_rank: r.column_rank,
            nonzero: r.nonzero,
            totally_isotropic: r.totally_isotropic,
            a_invariant: r.a_invariant,
            walk_forms_mod4: r.walk_forms_mod4,
            factors: r
                .factors
                .iter()
                .map(|f| FactorMeetJson {
                    factor: mod_poly_text(&f.factor),
                    multiplicity: f.multiplicity,
                    intersection_dim: f.intersection_dim,
                })
                .collect(),
            multiple_factor_found: r.multiple_factor_found,
            strict_divisibility: r
                .strict_divisibility
                .as_ref()
                .map(|(f, holds)| StrictDivisibilityJson { factor: mod_poly_text(f), holds: *holds }),
            all_pass: r.all_pass(),
        }
    }
}

#[derive(Serialize)]
pub struct RecoveryJson {
    pub n: usize,
    pub conjugator: ConjugatorJson,
    pub membership: bool,
    pub diagnostics: Vec<IsotropyJson>,
    pub effort: EffortJson,
}

/// `[u, v, s]` triples.
pub fn edge_triples(g: &SignedGraph) -> Vec<(usize, usize, i8)> {
    g.edges().iter().map(|&(u, v, s)| (u, v, if s == Sign::Plus { 1 } else { -1 })).collect()
}

#[derive(Serialize)]
pub struct MateJson {
    pub index: String,
    pub labelled_count: String,
    pub edges: Vec<(usize, usize, i8)>,
    pub isomorphic: bool,
    pub witness: Option<Vec<usize>>,
    pub conjugator: Option<ConjugatorJson>,
}

#[derive(Serialize)]
pub struct MateReportJson {
    pub n: usize,
    pub base: Vec<(usize, usize, i8)>,
    pub search_space_size: String,
    pub examined: String,
    pub pruned_count: String,
    pub complete: bool,
    pub dgs_empirical: Option<bool>,
    pub mates: Vec<MateJson>,
    pub max_n: usize,
    pub budget: Option<String>,
    pub seed: String,
}

impl MateReportJson {
    pub fn new(r: &MateReport, max_n: usize, budget: Option<u64>, seed: u64) -> Self {
        MateReportJson {
            n: r.base.n(),
            base: edge_triples(&r.base),
            search_space_size: r.search_space_size.to_string(),
            examined: r.examined.to_string(),
            pruned_count: r.pruned_count.to_string(),
            complete: r.complete,
            dgs_empirical: r.dgs_empirical,
            mates: r
                .mates
                .iter()
                .map(|m| MateJson {
                    index: m.index.to_string(),
                    labelled_count: m.labelled_count.to_string(),
                    edges: edge_triples(&m.graph),
                    isomorphic: m.is_isomorphic(),
                    witness: m.witness.clone(),
                    conjugator: m.conjugator.as_ref().map(Into::into),
                })
                .collect(),
            max_n,
            budget: budget.map(|b| b.to_string()),
            seed: seed.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct SuiteJson {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

pub fn selftest(outcomes: &[crate::selftest::SuiteOutcome]) -> Vec<SuiteJson> {
    outcomes
        .iter()
        .map(|o| SuiteJson { name: o.name, passed: o.passed(), cases: o.cases, failures: o.failures.clone() })
        .collect()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}
