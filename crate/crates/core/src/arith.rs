//! Integer number theory: primality, bounded-effort factorization, exact
//! square roots and squarefree classification.
//!
//! Factorization is trial division up to [`TRIAL_DIVISION_BOUND`], then a
//! perfect-power check and Pollard rho with Brent's cycle detection. Rho is
//! driven by a seeded generator and charged against an iteration budget,
//! so identical `(n, effort)` pairs always produce identical results. A
//! cofactor that survives the budget is reported, never guessed at.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Pollard-rho iteration budget plus the seed for its pseudo-random walks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Effort {
    pub rho_iterations: u64,
    pub seed: u64,
}

impl Effort {
    pub const DEFAULT_RHO_ITERATIONS: u64 = 100_000_000;
    pub const DEFAULT_SEED: u64 = 1;

    pub fn new(rho_iterations: u64, seed: u64) -> Self {
        Effort { rho_iterations, seed }
    }
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            rho_iterations: Self::DEFAULT_RHO_ITERATIONS,
            seed: Self::DEFAULT_SEED,
        }
    }
}

/// splitmix64
#[derive(Clone, Debug)]
pub(crate) struct SplitMix(u64);

impl SplitMix {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix(seed)
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

const SMALL_PRIMES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn miller_rabin_u64(n: u64, a: u64) -> bool {
    use crate::linalg::{mul_mod, pow_mod};
    let d_shift = (n - 1).trailing_zeros();
    let d = (n - 1) >> d_shift;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..d_shift {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // the first twelve prime bases are exact below 3.18e23
    SMALL_PRIMES[..12].iter().all(|&a| miller_rabin_u64(n, a))
}

fn miller_rabin(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Deterministic below 3.3·10²⁴ (prime bases up to 41); beyond that 64
/// extra bases drawn from a generator seeded by `n` push the error below 4⁻⁶⁴.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    if !SMALL_PRIMES.iter().all(|&a| miller_rabin(n, &BigUint::from(a))) {
        return false;
    }
    let bound: BigUint = "3317044064679887385961981".parse().expect("literal");
    if n < &bound {
        return true;
    }
    let mut rng = SplitMix::new(n.iter_u64_digits().fold(0, |h, d| h.rotate_left(7) ^ d));
    let span = n - 3u32;
    (0..64).all(|_| {
        let a = BigUint::from(rng.next_u64()) * BigUint::from(rng.next_u64()) % &span + 2u32;
        miller_rabin(n, &a)
    })
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub fn integer_sqrt_exact(n: &BigInt) -> Result<Option<BigInt>> {
    if n.sign() == Sign::Minus {
        return Err(Error::NegativeInput(n.clone()));
    }
    let r = n.sqrt();
    Ok((&r * &r == *n).then_some(r))
}

/// Prime-power decomposition of `|input|` with an explicit unresolved part.
///
/// `factors` are sorted, distinct and prime; `unresolved` holds composite
/// parts that resisted rho within the budget, with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntFactorization {
    pub input: BigInt,
    pub factors: Vec<(BigUint, u32)>,
    pub unresolved: Vec<(BigUint, u32)>,
    pub rho_iterations: u64,
    pub seed: u64,
}

impl IntFactorization {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    /// Product of the unresolved parts (1 when complete).
    pub fn cofactor(&self) -> BigUint {
        self.unresolved
            .iter()
            .fold(BigUint::one(), |acc, (c, e)| acc * c.pow(*e))
    }

    pub fn recompose(&self) -> BigUint {
        self.factors
            .iter()
            .fold(self.cofactor(), |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }
}

/// `p1^e1 * p2^e2 [* C?]`; exponents of 1 are omitted, unresolved parts carry `?`.
impl fmt::Display for IntFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.input.sign() == Sign::Minus {
            f.write_str("-")?;
        }
        if self.factors.is_empty() && self.unresolved.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !core::mem::replace(&mut first, false) {
                f.write_str(" * ")?;
            }
            Ok(())
        };
        for (p, e) in &self.factors {
            sep(f)?;
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        for (c, e) in &self.unresolved {
            sep(f)?;
            if *e == 1 {
                write!(f, "{c}?")?;
            } else {
                write!(f, "({c}?)^{e}")?;
            }
        }
        Ok(())
    }
}

struct Factorer {
    rng: SplitMix,
    budget: u64,
    used: u64,
    primes: Vec<(BigUint, u32)>,
    unresolved: Vec<(BigUint, u32)>,
}

impl Factorer {
    fn trial_divide(&mut self, mut n: BigUint) -> BigUint {
        let record = |p: u64, e: u32, primes: &mut Vec<(BigUint, u32)>| {
            if e > 0 {
                primes.push((BigUint::from(p), e));
            }
        };
        let mut d = 2u64;
        let mut step = 0usize;
        // 2, 3, 5, then the 6k ± 1 wheel
        while d <= TRIAL_DIVISION_BOUND {
            if let Some(small) = n.to_u64() {
                if d.saturating_mul(d) > small {
                    break;
                }
                let mut e = 0;
                let mut m = small;
                while m % d == 0 {
                    m /= d;
                    e += 1;
                }
                record(d, e, &mut self.primes);
                n = BigUint::from(m);
            } else if (&n % d).is_zero() {
                let mut e = 0;
                while (&n % d).is_zero() {
                    n /= d;
                    e += 1;
                }
                record(d, e, &mut self.primes);
            }
            d = match d {
                2 => 3,
                3 => 5,
                _ => {
                    step += 1;
                    if step % 2 == 1 { d + 2 } else { d + 4 }
                }
            };
        }
        if n > BigUint::one() && n.to_u64().is_some_and(|s| s <= TRIAL_DIVISION_BOUND.pow(2)) {
            // no divisor up to sqrt(n) remained
            self.primes.push((n, 1));
            return BigUint::one();
        }
        n
    }

    fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
        let bits = n.bits() as u32;
        let mut best = None;
        for k in 2..=bits {
            if !is_prime_u64(k as u64) {
                continue;
            }
            let r = n.nth_root(k);
            if r > BigUint::one() && r.pow(k) == *n {
                best = Some((r, k));
            }
        }
        best
    }

    fn rho_step(x: &BigUint, c: &BigUint, n: &BigUint) -> BigUint {
        (x * x + c) % n
    }

    /// One Brent walk; `None` when the walk failed or the budget ran out.
    fn brent(&mut self, n: &BigUint) -> Option<BigUint> {
        const BATCH: u64 = 128;
        let one = BigUint::one();
        let c = BigUint::from(self.rng.next_u64()) % n;
        let c = if c.is_zero() { one.clone() } else { c };
        let mut y = BigUint::from(self.rng.next_u64()) % n;
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut r = 1u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = Self::rho_step(&y, &c, n);
            }
            self.used += r;
            let mut k = 0u64;
            while k < r && g == one {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = Self::rho_step(&y, &c, n);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                self.used += steps;
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
            if g == one && self.used >= self.budget {
                return None;
            }
        }
        if &g == n {
            // backtrack one step at a time from the last saved point
            loop {
                ys = Self::rho_step(&ys, &c, n);
                self.used += 1;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
                if self.used >= self.budget {
                    return None;
                }
            }
        }
        (g != *n).then_some(g)
    }

    fn split(&mut self, n: BigUint, mult: u32) {
        if n.is_one() {
            return;
        }
        if is_probable_prime(&n) {
            self.primes.push((n, mult));
            return;
        }
        if let Some((root, k)) = Self::perfect_power(&n) {
            self.split(root, mult * k);
            return;
        }
        while self.used < self.budget {
            if let Some(d) = self.brent(&n) {
                let other = &n / &d;
                self.split(d, mult);
                self.split(other, mult);
                return;
            }
        }
        self.unresolved.push((n, mult));
    }

    /// Refines unresolved composites against each other by gcd.
    fn refine_unresolved(&mut self) {
        let mut changed = true;
        while changed {
            changed = false;
            'outer: for i in 0..self.unresolved.len() {
                for j in i + 1..self.unresolved.len() {
                    let g = self.unresolved[i].0.gcd(&self.unresolved[j].0);
                    if !g.is_one() {
                        let (a, ea) = self.unresolved.swap_remove(j);
                        let (b, eb) = self.unresolved.swap_remove(i);
                        let parts = [(&a / &g, ea), (&b / &g, eb), (g, ea + eb)];
                        for (c, e) in parts {
                            self.split(c, e);
                        }
                        changed = true;
                        break 'outer;
                    }
                }
            }
        }
    }
}

fn merge(mut v: Vec<(BigUint, u32)>) -> Vec<(BigUint, u32)> {
    v.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::with_capacity(v.len());
    for (p, e) in v {
        match out.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => out.push((p, e)),
        }
    }
    out
}

pub fn factor_integer(n: &BigInt, effort: &Effort) -> Result<IntFactorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut f = Factorer {
        rng: SplitMix::new(effort.seed),
        budget: effort.rho_iterations,
        used: 0,
        primes: Vec::new(),
        unresolved: Vec::new(),
    };
    let rest = f.trial_divide(n.magnitude().clone());
    f.split(rest, 1);
    f.refine_unresolved();
    Ok(IntFactorization {
        input: n.clone(),
        factors: merge(f.primes),
        unresolved: merge(f.unresolved),
        rho_iterations: f.used,
        seed: effort.seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquarefreeStatus {
    Squarefree(IntFactorization),
    /// `witness² | n`. The witness is prime unless the only repeated part
    /// is an unresolved composite, in which case that composite is given.
    NotSquarefree { witness: BigUint, factorization: IntFactorization },
    Unknown(IntFactorization),
}

impl SquarefreeStatus {
    pub fn factorization(&self) -> &IntFactorization {
        match self {
            SquarefreeStatus::Squarefree(f)
            | SquarefreeStatus::NotSquarefree { factorization: f, .. }
            | SquarefreeStatus::Unknown(f) => f,
        }
    }

    pub fn is_squarefree(&self) -> bool {
        matches!(self, SquarefreeStatus::Squarefree(_))
    }
}

pub fn squarefree_status(n: &BigInt, effort: &Effort) -> Result<SquarefreeStatus> {
    let fac = factor_integer(n, effort)?;
    let repeated = fac
        .factors
        .iter()
        .chain(&fac.unresolved)
        .find(|(_, e)| *e >= 2)
        .map(|(p, _)| p.clone());
    Ok(match repeated {
        Some(witness) => SquarefreeStatus::NotSquarefree { witness, factorization: fac },
        None if fac.is_complete() => SquarefreeStatus::Squarefree(fac),
        None => SquarefreeStatus::Unknown(fac),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigInt {
        BigInt::from(n)
    }

    fn factors(f: &IntFactorization) -> Vec<(u64, u32)> {
        f.factors.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect()
    }

    #[test]
    fn primality_examples() {
        assert!(is_probable_prime(&BigUint::from(2u32)));
        assert!(!is_probable_prime(&BigUint::from(1u32)));
        assert!(!is_probable_prime(&BigUint::from(0u32)));
        assert!(is_probable_prime(&BigUint::from(12978894869u64)));
        assert!(!is_probable_prime(&BigUint::from(3215031751u64))); // strong pseudoprime to 2,3,5,7
        let m61: BigUint = (BigUint::one() << 61u32) - 1u32;
        assert!(is_probable_prime(&m61));
        let m127: BigUint = (BigUint::one() << 127u32) - 1u32;
        assert!(is_probable_prime(&m127));
        assert!(!is_probable_prime(&(&m127 * &m61)));
    }

    #[test]
    fn trial_division_oracle_for_the_large_prime() {
        let n = 12978894869u64;
        let r = (n as f64).sqrt() as u64 + 1;
        assert!((2..=r).all(|d| !n.is_multiple_of(d)));
    }

    #[test]
    fn factor_examples() {
        let e = Effort::default();
        assert_eq!(factors(&factor_integer(&big(16384), &e).unwrap()), [(2, 14)]);
        let one = factor_integer(&big(1), &e).unwrap();
        assert!(one.factors.is_empty() && one.is_complete());
        assert_eq!(one.to_string(), "1");
        let n = 13u64 * 45953 * 106501;
        let f = factor_integer(&big(n), &e).unwrap();
        assert_eq!(factors(&f), [(13, 1), (45953, 1), (106501, 1)]);
        assert_eq!(f.to_string(), "13 * 45953 * 106501");
        assert_eq!(factor_integer(&BigInt::zero(), &e), Err(Error::ZeroInput));
        let neg = factor_integer(&BigInt::from(-12), &e).unwrap();
        assert_eq!(neg.to_string(), "-2^2 * 3");
    }

    #[test]
    fn rho_splits_large_semiprimes_and_powers() {
        let e = Effort::default();
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let n = BigInt::from(&p * &q * &q);
        let f = factor_integer(&n, &e).unwrap();
        assert!(f.is_complete());
        assert_eq!(f.factors, [(q.clone(), 2), (p.clone(), 1)]);
        assert!(f.rho_iterations > 0);
        // perfect power of a prime above the trial-division bound
        let f = factor_integer(&BigInt::from(p.pow(5)), &e).unwrap();
        assert_eq!(f.factors, [(p, 5)]);
    }

    #[test]
    fn exhausted_budget_leaves_cofactor() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let n = BigInt::from(&p * &q);
        let f = factor_integer(&n, &Effort::new(0, 1)).unwrap();
        assert!(!f.is_complete());
        assert_eq!(f.recompose(), &p * &q);
        assert_eq!(f.to_string(), "998244359987710471?");
        match squarefree_status(&n, &Effort::new(0, 1)).unwrap() {
            SquarefreeStatus::Unknown(part) => assert_eq!(part.cofactor(), &p * &q),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn factorization_is_deterministic_per_seed() {
        let n = BigInt::from(1_000_000_007u64) * BigInt::from(1_000_000_009u64);
        let a = factor_integer(&n, &Effort::new(1_000_000, 7)).unwrap();
        let b = factor_integer(&n, &Effort::new(1_000_000, 7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(integer_sqrt_exact(&big(0)).unwrap(), Some(big(0)));
        assert_eq!(integer_sqrt_exact(&big(144)).unwrap(), Some(big(12)));
        assert_eq!(integer_sqrt_exact(&big(2)).unwrap(), None);
        assert!(integer_sqrt_exact(&BigInt::from(-4)).is_err());
    }

    #[test]
    fn squarefree_examples() {
        let e = Effort::default();
        assert!(squarefree_status(&big(1), &e).unwrap().is_squarefree());
        assert!(squarefree_status(&BigInt::from(-1), &e).unwrap().is_squarefree());
        match squarefree_status(&big(12), &e).unwrap() {
            SquarefreeStatus::NotSquarefree { witness, .. } => assert_eq!(witness, BigUint::from(2u32)),
            other => panic!("{other:?}"),
        }
        assert_eq!(17u64 * 23 * 64879, 25367689);
        assert!(squarefree_status(&big(25367689), &e).unwrap().is_squarefree());
        assert_eq!(squarefree_status(&BigInt::zero(), &e), Err(Error::ZeroInput));
    }
}
