//! Integer polynomials, characteristic polynomials, Sylvester matrices,
//! resultants and discriminants, plus polynomial arithmetic over 𝔽_p.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{require_prime, SplitMix};
use crate::error::{Error, Result};
use crate::linalg::{self, inv_mod, mul_mod};
use crate::matrix::IntMatrix;

/// Dense integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `f(x²)`
    pub fn substitute_square(&self) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        IntPoly::new(coeffs)
    }

    /// `x^k · f`
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// `f(-x)`
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Evaluates `f(M)` for a square integer matrix.
    pub fn eval_matrix(&self, m: &IntMatrix) -> Result<IntMatrix> {
        let n = m.require_square()?;
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Ok(acc)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Coefficients (lowest first) of `det(xI - M)` by Berkowitz's division-free
/// recurrence. Works over any commutative ring.
pub fn berkowitz<T>(n: usize, entry: impl Fn(usize, usize) -> T) -> Vec<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    // highest degree first while iterating
    let mut v: Vec<T> = vec![T::one()];
    for r in 0..n {
        let mut t: Vec<T> = Vec::with_capacity(r + 2);
        t.push(T::one());
        t.push(-entry(r, r));
        let mut w: Vec<T> = (0..r).map(|i| entry(i, r)).collect();
        for k in 0..r {
            let dot = (0..r).fold(T::zero(), |acc, j| acc + entry(r, j) * w[j].clone());
            t.push(-dot);
            if k + 1 < r {
                w = (0..r)
                    .map(|i| (0..r).fold(T::zero(), |acc, j| acc + entry(i, j) * w[j].clone()))
                    .collect();
            }
        }
        let next: Vec<T> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(T::zero(), |acc, j| acc + t[i - j].clone() * v[j].clone())
            })
            .collect();
        v = next;
    }
    v.reverse();
    v
}

/// `det(xI - M)`, monic of degree `n`.
pub fn charpoly(m: &IntMatrix) -> Result<IntPoly> {
    let n = m.require_square()?;
    Ok(IntPoly::new(berkowitz(n, |i, j| m[(i, j)].clone())))
}

/// Sylvester matrix of `f` (degree n) and `g` (degree m): m shifted rows of
/// `f`'s coefficients followed by n shifted rows of `g`'s, highest degree first.
pub fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> Result<IntMatrix> {
    let (Some(n), Some(m)) = (f.degree(), g.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    let size = n + m;
    let mut s = IntMatrix::zeros(size, size);
    for i in 0..m {
        for (k, c) in f.coeffs.iter().rev().enumerate() {
            s[(i, i + k)] = c.clone();
        }
    }
    for i in 0..n {
        for (k, c) in g.coeffs.iter().rev().enumerate() {
            s[(m + i, i + k)] = c.clone();
        }
    }
    Ok(s)
}

pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    linalg::det(&sylvester_matrix(f, g)?)
}

/// `Δ(f) = (-1)^{n(n-1)/2} Res(f, f')` for monic `f` of degree `n ≥ 1`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if n == 0 {
        return Err(Error::Precondition("discriminant needs degree at least 1"));
    }
    let res = resultant(f, &f.derivative())?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -res } else { res })
}

/// Polynomial over 𝔽_p, coefficients in `[0, p)`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    /// Reduces arbitrary residues; `p` is assumed prime.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        ModPoly::new(p, vec![1])
    }

    /// `x + c`
    pub fn linear(p: u64, c: u64) -> Self {
        ModPoly::new(p, vec![c, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn monic(&self) -> ModPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p);
                ModPoly::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect())
            }
        }
    }

    pub fn derivative(&self) -> ModPoly {
        let p = self.p;
        ModPoly::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &ModPoly) -> ModPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ModPoly::new(self.p, (0..len).map(|i| (self.coeff(i) + rhs.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, rhs: &ModPoly) -> ModPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ModPoly::new(
            self.p,
            (0..len).map(|i| (self.coeff(i) + self.p - rhs.coeff(i)) % self.p).collect(),
        )
    }

    pub fn mul(&self, rhs: &ModPoly) -> ModPoly {
        if self.is_zero() || rhs.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        ModPoly::new(p, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.coeffs[dd], p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (ModPoly::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(c, dc, p)) % p;
            }
        }
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut acc = ModPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x % p, p) + c) % p)
    }

    /// Lifts the residues to an integer polynomial with coefficients in `[0, p)`.
    pub fn lift(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `f(M) mod p`, entries in `[0, p)`.
    pub fn eval_matrix_mod(&self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let p = self.p;
        let n = m.len();
        let mut acc = vec![vec![0u64; n]; n];
        for &c in self.coeffs.iter().rev() {
            let mut next = vec![vec![0u64; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if acc[i][k] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        next[i][j] = (next[i][j] + mul_mod(acc[i][k], m[k][j], p)) % p;
                    }
                }
                next[i][i] = (next[i][i] + c) % p;
            }
            acc = next;
        }
        acc
    }

    /// Monic factors with multiplicities, each factor squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(ModPoly, usize)> {
        let p = self.p;
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().is_none_or(|d| d == 0) {
            return out;
        }
        let mut c = gcd_unchecked(&f, &f.derivative());
        let mut w = f.div_rem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = gcd_unchecked(&w, &c);
            let fac = w.div_rem(&y).0;
            if fac.degree().is_some_and(|d| d > 0) {
                out.push((fac, i));
            }
            w = y;
            c = c.div_rem(&w).0;
            i += 1;
        }
        if !c.is_one() {
            // c is a p-th power: c(x) = g(x^p)
            let root = ModPoly::new(p, c.coeffs.iter().step_by(p as usize).copied().collect());
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * p as usize));
            }
        }
        out
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients). Deterministic for a given seed.
    pub fn factor(&self, seed: u64) -> Vec<(ModPoly, usize)> {
        let mut rng = SplitMix::new(seed);
        let mut out = Vec::new();
        for (sqf, mult) in self.squarefree_decomposition() {
            for (part, d) in distinct_degree(&sqf) {
                for irr in equal_degree(&part, d, &mut rng) {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
        out
    }
}

fn gcd_unchecked(a: &ModPoly, b: &ModPoly) -> ModPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p;
    let x = ModPoly::new(p, vec![0, 1]);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.degree().is_some_and(|deg| deg >= 2 * d) {
        h = h.pow_mod(&BigUint::from(p), &rest);
        let g = gcd_unchecked(&h.sub(&x), &rest);
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d` (Cantor–Zassenhaus;
/// the trace map in characteristic 2).
fn equal_degree(f: &ModPoly, d: usize, rng: &mut SplitMix) -> Vec<ModPoly> {
    let p = f.p;
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.monic()];
    }
    loop {
        let a = ModPoly::new(p, (0..n).map(|_| rng.next_u64() % p).collect());
        if a.degree().is_none_or(|k| k == 0) {
            continue;
        }
        let b = if p == 2 {
            let mut acc = a.rem(f);
            let mut term = acc.clone();
            for _ in 1..d {
                term = term.mul(&term).rem(f);
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&ModPoly::one(p))
        };
        let g = gcd_unchecked(&b, f);
        if g.degree().is_some_and(|k| k > 0 && k < n) {
            let h = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.p);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if i == 0 || c != 1 {
                write!(f, "{c}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

pub fn reduce_mod_p(f: &IntPoly, p: u64) -> Result<ModPoly> {
    require_prime(p)?;
    let m = BigInt::from(p);
    Ok(ModPoly::new(
        p,
        f.coeffs
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("residue fits in u64"))
            .collect(),
    ))
}

/// Monic gcd; `gcd(a, 0) = monic(a)`.
pub fn gcd_mod_p(a: &ModPoly, b: &ModPoly) -> Result<ModPoly> {
    if a.p != b.p {
        return Err(Error::ModulusMismatch(a.p, b.p));
    }
    Ok(gcd_unchecked(a, b))
}

/// Whether `f mod p` has a repeated irreducible factor. A derivative that
/// vanishes mod p makes the gcd equal to `f` itself.
pub fn has_multiple_factor_mod_p(f: &IntPoly, p: u64) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let fp = reduce_mod_p(f, p)?;
    let g = gcd_unchecked(&fp, &fp.derivative());
    Ok(g.degree().is_some_and(|d| d >= 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SylvesterKernelCheck {
    pub gcd_degree: usize,
    pub corank: usize,
    pub agree: bool,
}

/// Compares `deg gcd(f, f') mod p` against `(2n - 1) - rank_p S(f, f')`.
pub fn sylvester_kernel_vs_gcd(f: &IntPoly, p: u64) -> Result<SylvesterKernelCheck> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().filter(|&n| n >= 1).ok_or(Error::Precondition("degree at least 1"))?;
    let fp = reduce_mod_p(f, p)?;
    let gcd_degree = gcd_unchecked(&fp, &fp.derivative()).degree().unwrap_or(0);
    let s = sylvester_matrix(f, &f.derivative())?;
    let corank = (2 * n - 1) - linalg::rank_mod_p(&s, p)?;
    Ok(SylvesterKernelCheck { gcd_degree, corank, agree: gcd_degree == corank })
}
