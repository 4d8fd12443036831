//! The `specdgs` command line.
//!
//! Exit codes: 0 success (for `certify`, a CertifiedDGS verdict),
//! 10 NotApplicable, 11 Inconclusive, 1 a refused `recover-q` or a failed
//! `selftest`, 2 any input or usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use dgs_core::arith::{factor_integer, Effort};
use dgs_core::certify::{certify, Verdict};
use dgs_core::graph::SignedGraph;
use dgs_core::lab::{
    assemble_report, check_membership, isotropy_diagnostic, partition_space, recover_conjugator, scan_candidates,
    search_space_size, DEFAULT_MATE_MAX_N, MATE_HARD_CAP,
};
use dgs_core::Error;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::format::parse_auto;
use crate::json::{self, to_json, AnalysisJson, CertificateJson, MateReportJson, RecoveryJson};
use crate::{fixtures, selftest, text};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 10;
pub const EXIT_INCONCLUSIVE: i32 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "specdgs", version, about = "Generalized-spectrum certificates for signed bipartite graphs")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub format: OutputFormat,
    /// Pollard-rho iteration budget for integer factorization
    #[arg(long, env = "SPECDGS_EFFORT", global = true)]
    pub effort: Option<u64>,
    /// Seed for factorization walks and random self-test corpora
    #[arg(long, default_value_t = Effort::DEFAULT_SEED, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the certifier on a graph file (or `fixture:NAME`)
    Certify { input: String },
    /// Report every computed invariant without a verdict
    Analyze { input: String },
    /// Recover Q with Qᵀ A(sigma) Q = A(gamma) for controllable sigma
    RecoverQ { sigma: String, gamma: String },
    /// Exhaustive search for generalized cospectral mates
    Mates {
        input: String,
        #[arg(long, default_value_t = DEFAULT_MATE_MAX_N)]
        max_n: usize,
        /// Maximum number of candidates to examine
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check embedded fixtures and run the property suites
    Selftest {
        #[arg(long)]
        filter: Option<String>,
        /// Largest order for the exhaustive mate suite
        #[arg(long, default_value_t = DEFAULT_MATE_MAX_N)]
        max_n: usize,
    },
}

impl Cli {
    fn effort(&self) -> Effort {
        Effort::new(self.effort.unwrap_or(Effort::DEFAULT_RHO_ITERATIONS), self.seed)
    }
}

/// Reads a graph from disk, or from the embedded fixtures for `fixture:NAME`.
pub fn load_graph(input: &str) -> Result<SignedGraph, String> {
    let text = match input.strip_prefix("fixture:") {
        Some(name) => fixtures::text(name).ok_or_else(|| format!("unknown fixture `{name}`"))?.to_string(),
        None => std::fs::read_to_string(Path::new(input)).map_err(|e| format!("{input}: {e}"))?,
    };
    parse_auto(&text).map_err(|e| format!("{input}: {e}"))
}

pub fn verdict_exit_code(v: &Verdict) -> i32 {
    match v {
        Verdict::CertifiedDgs => EXIT_OK,
        Verdict::NotApplicable(_) => EXIT_NOT_APPLICABLE,
        Verdict::Inconclusive(_) => EXIT_INCONCLUSIVE,
    }
}

/// Parses `args` and runs the command, writing to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
    }
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), String> {
    out.write_all(s.as_bytes()).map_err(|e| e.to_string())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, String> {
    let effort = cli.effort();
    match &cli.command {
        Command::Certify { input } => {
            let g = load_graph(input)?;
            let c = certify(&g, &effort).map_err(|e| e.to_string())?;
            match cli.format {
                OutputFormat::Json => emit(out, &to_json(&CertificateJson::from(&c)))?,
                OutputFormat::Text => emit(out, &text::certificate(&c))?,
            }
            Ok(verdict_exit_code(&c.verdict))
        }
        Command::Analyze { input } => {
            let g = load_graph(input)?;
            let c = certify(&g, &effort).map_err(|e| e.to_string())?;
            match cli.format {
                OutputFormat::Json => emit(out, &to_json(&AnalysisJson::new(&g, &c)))?,
                OutputFormat::Text => emit(out, &text::analysis(&g, &c))?,
            }
            Ok(EXIT_OK)
        }
        Command::RecoverQ { sigma, gamma } => {
            let s = load_graph(sigma)?;
            let g = load_graph(gamma)?;
            let q = match recover_conjugator(&s, &g) {
                Ok(q) => q,
                Err(e @ Error::SizeMismatch(..)) => return Err(e.to_string()),
                Err(e) => {
                    emit(out, &format!("no conjugator: {e}\n"))?;
                    return Ok(EXIT_REFUSED);
                }
            };
            let membership = check_membership(&q, &s).map_err(|e| e.to_string())?;
            let primes = if q.is_permutation() {
                Vec::new()
            } else {
                factor_integer(q.level(), &effort).map_err(|e| e.to_string())?.factors
            };
            let diagnostics = primes
                .iter()
                .filter_map(|(p, _)| p.to_u64())
                .map(|p| isotropy_diagnostic(&q, &s, p).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            match cli.format {
                OutputFormat::Json => emit(
                    out,
                    &to_json(&RecoveryJson {
                        n: s.n(),
                        conjugator: (&q).into(),
                        membership,
                        diagnostics: diagnostics.iter().map(Into::into).collect(),
                        effort: (&effort).into(),
                    }),
                )?,
                OutputFormat::Text => emit(out, &text::conjugator(&q, membership, &diagnostics))?,
            }
            Ok(EXIT_OK)
        }
        Command::Mates { input, max_n, budget } => {
            let g = load_graph(input)?;
            let cap = (*max_n).min(MATE_HARD_CAP);
            if g.n() > cap {
                return Err(format!("{input}: n = {} exceeds cap {cap}", g.n()));
            }
            let limit = search_space_size(g.n()).min(budget.unwrap_or(u64::MAX));
            let scans = partition_space(limit, 64)
                .into_par_iter()
                .map(|r| scan_candidates(&g, r, u64::MAX))
                .collect();
            let report = assemble_report(&g, scans);
            match cli.format {
                OutputFormat::Json => emit(out, &to_json(&MateReportJson::new(&report, cap, *budget, cli.seed)))?,
                OutputFormat::Text => emit(out, &text::mates(&report))?,
            }
            Ok(EXIT_OK)
        }
        Command::Selftest { filter, max_n } => {
            let names = selftest::selected(filter.as_deref());
            if names.is_empty() {
                return Err(format!("no suite matches `{}`", filter.as_deref().unwrap_or("")));
            }
            let settings = selftest::Settings { seed: cli.seed, effort, mates_max_n: *max_n };
            let outcomes: Vec<_> = names.par_iter().map(|n| selftest::run_suite(n, &settings)).collect();
            match cli.format {
                OutputFormat::Json => emit(out, &to_json(&json::selftest(&outcomes)))?,
                OutputFormat::Text => emit(out, &selftest::table(&outcomes))?,
            }
            Ok(if outcomes.iter().all(selftest::SuiteOutcome::passed) { EXIT_OK } else { EXIT_REFUSED })
        }
    }
}
