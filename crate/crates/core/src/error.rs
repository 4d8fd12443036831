use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

/// Everything that can go wrong in the core kernels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    NonSquare { rows: usize, cols: usize },
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    Singular,
    NotPrime(u64),
    ZeroPolynomial,
    NotMonic,
    ModulusMismatch(u64, u64),
    NegativeInput(BigInt),
    ZeroInput,
    /// Adjacency data violating the signed-graph invariants.
    InvalidGraph(String),
    OddCycle(Vec<usize>),
    NotBijection,
    SizeMismatch(usize, usize),
    TooLarge { n: usize, max: usize },
    NotControllable,
    ValidationFailed(&'static str),
    Precondition(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonSquare { rows, cols } => write!(f, "matrix is not square ({rows}x{cols})"),
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::Singular => f.write_str("matrix is singular"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::ZeroPolynomial => f.write_str("zero polynomial"),
            Error::NotMonic => f.write_str("polynomial is not monic"),
            Error::ModulusMismatch(a, b) => write!(f, "modulus mismatch: {a} vs {b}"),
            Error::NegativeInput(n) => write!(f, "negative input {n}"),
            Error::ZeroInput => f.write_str("zero input"),
            Error::InvalidGraph(msg) => write!(f, "invalid signed graph: {msg}"),
            Error::OddCycle(c) => write!(f, "graph is not bipartite: odd cycle {c:?}"),
            Error::NotBijection => f.write_str("not a permutation"),
            Error::SizeMismatch(a, b) => write!(f, "size mismatch: {a} vs {b}"),
            Error::TooLarge { n, max } => write!(f, "n = {n} exceeds cap {max}"),
            Error::NotControllable => f.write_str("graph is not controllable"),
            Error::ValidationFailed(what) => write!(f, "validation failed: {what}"),
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
        }
    }
}
