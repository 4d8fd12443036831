//! Plain-text reports.

use std::fmt::Write as _;

use dgs_core::arith::IntFactorization;
use dgs_core::certify::{Crosschecks, DgsCertificate};
use dgs_core::graph::SignedGraph;
use dgs_core::lab::{IsotropyReport, MateReport, RegularRationalOrthogonal};
use num_bigint::BigInt;

fn check(x: Option<bool>) -> &'static str {
    match x {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None => "n/a",
    }
}

fn crosschecks(out: &mut String, c: &Crosschecks) {
    let _ = writeln!(out, "crosschecks: chiab {}, abb {}", check(c.chiab), check(c.abb));
}

fn with_factorization(value: &BigInt, f: Option<&IntFactorization>) -> String {
    match f {
        Some(f) if f.to_string() != value.to_string() => format!("{value} = {f}"),
        _ => value.to_string(),
    }
}

fn core_lines(out: &mut String, c: &DgsCertificate) {
    let _ = writeln!(out, "n = {}, delta = {}", c.n, c.delta);
    let _ = writeln!(out, "rank W = {} ({})", c.walk.rank, c.class());
    let _ = writeln!(out, "chi(A) = {}", c.chi);
    let _ = writeln!(out, "c_delta = {}", c.c_delta);
    if let Some(g) = &c.chi_gram {
        let _ = writeln!(out, "chi(BB^T) = {g}");
    }
    let _ = writeln!(out, "disc(A) = {}", c.discriminant);
    if let Some(r) = &c.sqrt_discriminant {
        let _ = writeln!(out, "sqrt(disc(A)) = {r}");
    }
    match &c.d {
        Some(d) => {
            let _ = writeln!(out, "D = {}", with_factorization(d, c.d_factorization.as_ref()));
        }
        None => out.push_str("D undefined\n"),
    }
    crosschecks(out, &c.crosschecks);
}

pub fn certificate(c: &DgsCertificate) -> String {
    let mut out = String::new();
    core_lines(&mut out, c);
    let _ = writeln!(out, "verdict: {}", c.verdict.name());
    for r in &c.reasons {
        let _ = writeln!(out, "reason: {r}");
    }
    let _ = writeln!(out, "effort: {} rho iterations, seed {}", c.effort.rho_iterations, c.effort.seed);
    out
}

pub fn analysis(g: &SignedGraph, c: &DgsCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "edges = {}", g.edges().len());
    match &c.blocks {
        Some(b) => {
            let _ = writeln!(out, "bipartition: {:?} | {:?}", &b.ordering[..b.s], &b.ordering[b.s..]);
        }
        None => out.push_str("bipartition: none (odd cycle)\n"),
    }
    let _ = writeln!(out, "det W = {}", with_factorization(&c.walk.det, c.walk.det_factorization.as_ref()));
    core_lines(&mut out, c);
    let _ = writeln!(out, "effort: {} rho iterations, seed {}", c.effort.rho_iterations, c.effort.seed);
    out
}

pub fn conjugator(q: &RegularRationalOrthogonal, membership: bool, diagnostics: &[IsotropyReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "level = {}{}", q.level(), if q.is_permutation() { " (permutation)" } else { "" });
    let _ = writeln!(out, "Q =\n{}", q.q());
    let _ = writeln!(out, "membership: {membership}");
    for d in diagnostics {
        let _ = writeln!(
            out,
            "p = {}: rank {}, nonzero {}, isotropic {}, A-invariant {}, mod-4 forms {}, multiple factor {}, divisibility {}",
            d.p,
            d.column_rank,
            d.nonzero,
            d.totally_isotropic,
            d.a_invariant,
            check(d.walk_forms_mod4),
            d.multiple_factor_found,
            check(d.strict_divisibility.as_ref().map(|(_, ok)| *ok)),
        );
    }
    out
}

pub fn mates(r: &MateReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n = {}, examined {} of {}, pruned {}{}",
        r.base.n(),
        r.examined,
        r.search_space_size,
        r.pruned_count,
        if r.complete { "" } else { " (partial)" }
    );
    for m in &r.mates {
        let kind = match (&m.witness, &m.conjugator) {
            (Some(w), _) => format!("isomorphic via {w:?}"),
            (None, Some(q)) => format!("NOT isomorphic, conjugator level {}", q.level()),
            (None, None) => "NOT isomorphic".to_string(),
        };
        let _ = writeln!(out, "mate #{} ({} labellings): {kind}", m.index, m.labelled_count);
    }
    let verdict = match r.dgs_empirical {
        Some(true) => "DGS",
        Some(false) => "not DGS",
        None => "undecided (budget exhausted)",
    };
    let _ = writeln!(out, "empirical: {verdict}");
    out
}
