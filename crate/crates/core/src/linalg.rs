//! Exact linear algebra over ℤ, ℚ and 𝔽_p.
//!
//! Determinants and ranks use Bareiss fraction-free elimination, so every
//! intermediate value is a minor of the input and no rationals are needed.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn det(m: &IntMatrix) -> Result<BigInt> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = to_rows(m);
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let t = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                debug_assert!((&t % &prev).is_zero());
                row[j] = t / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

pub fn rank_rational(m: &IntMatrix) -> usize {
    let mut a = to_rows(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            for j in c + 1..cols {
                let t = &row[j] * &pivot_row[c] - &row[c] * &pivot_row[j];
                debug_assert!((&t % &prev).is_zero());
                row[j] = t / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Row echelon reduction in place; returns the rank. Entries must lie in `[0, p)`.
pub(crate) fn echelon_mod_p(a: &mut [Vec<u64>], p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, rank);
        let inv = inv_mod(a[rank][c], p);
        for j in c..cols {
            a[rank][j] = mul_mod(a[rank][j], inv, p);
        }
        for i in 0..rows {
            if i == rank || a[i][c] == 0 {
                continue;
            }
            let f = a[i][c];
            for j in c..cols {
                let t = mul_mod(f, a[rank][j], p);
                a[i][j] = (a[i][j] + p - t) % p;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    require_prime(p)?;
    let mut a = m.reduce_mod(p);
    Ok(echelon_mod_p(&mut a, p))
}

pub fn inverse_rational(m: &IntMatrix) -> Result<RatMatrix> {
    let n = m.require_square()?;
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> =
                m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(Error::Singular)?;
        a.swap(piv, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    Ok(RatMatrix::from_fn(n, n, |i, j| a[i][n + j].clone()))
}

/// `u * m * v = diag(invariants)` with `u`, `v` unimodular and
/// `invariants[i] | invariants[i + 1]`, all nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The rectangular diagonal matrix `u * m * v` should equal.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.u.rows(), self.v.cols(), |i, j| {
            if i == j && i < self.invariants.len() {
                self.invariants[i].clone()
            } else {
                BigInt::zero()
            }
        })
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let k = rows.min(cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    'diag: for t in 0..k {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &a[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'diag;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&a[(i, j)] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let invariants = (0..k).map(|i| a[(i, i)].clone()).collect();
    SmithForm { invariants, u, v }
}

/// Whether `m x ≡ 0 (mod p²)` has a solution with `x ≢ 0 (mod p)`,
/// decided by `p² | d_n` on the last invariant factor.
pub fn has_mod_p2_kernel_vector(m: &IntMatrix, p: u64) -> Result<bool> {
    let n = m.require_square()?;
    require_prime(p)?;
    if n == 0 {
        return Ok(false);
    }
    let snf = smith_normal_form(m);
    let p2 = BigInt::from(p) * BigInt::from(p);
    Ok((&snf.invariants[n - 1] % &p2).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&IntMatrix::identity(5)).unwrap(), BigInt::from(1));
        assert_eq!(det(&m(&[&[2, 4], &[6, 8]])).unwrap(), BigInt::from(-8));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(det(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::from(1));
        assert!(matches!(det(&m(&[&[1, 2]])), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_rational(&IntMatrix::zeros(3, 4)), 0);
        assert_eq!(rank_rational(&m(&[&[1, 1], &[1, 1]])), 1);
        assert_eq!(rank_rational(&m(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]])), 2);
        assert_eq!(rank_mod_p(&IntMatrix::identity(4), 7).unwrap(), 4);
        assert_eq!(rank_mod_p(&m(&[&[2, 4], &[6, 8]]), 2).unwrap(), 0);
        assert_eq!(rank_mod_p(&m(&[&[1, 0, -1], &[2, 0, 0], &[0, 2, 0]]), 2).unwrap(), 1);
        assert_eq!(rank_mod_p(&IntMatrix::identity(2), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_rational(&IntMatrix::identity(3)).unwrap(), RatMatrix::identity(3));
        let inv = inverse_rational(&m(&[&[2, 0], &[0, 4]])).unwrap();
        assert_eq!(inv[(0, 0)], BigRational::new(1.into(), 2.into()));
        assert_eq!(inv[(1, 1)], BigRational::new(1.into(), 4.into()));
        assert!(inv[(0, 1)].is_zero());
        assert_eq!(inverse_rational(&m(&[&[1, 1], &[1, 1]])), Err(Error::Singular));
    }

    #[test]
    fn smith_examples() {
        let inv = |rows: &[&[i64]]| smith_normal_form(&m(rows)).invariants;
        assert_eq!(inv(&[&[2, 0], &[0, 3]]), [BigInt::from(1), BigInt::from(6)]);
        assert_eq!(inv(&[&[2, 4], &[6, 8]]), [BigInt::from(2), BigInt::from(4)]);
        assert_eq!(inv(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), [BigInt::from(1), BigInt::from(1), BigInt::from(1)]);
        assert_eq!(inv(&[&[0, 0], &[0, 0]]), [BigInt::zero(), BigInt::zero()]);
        // rectangular
        let s = smith_normal_form(&m(&[&[2, 4, 4], &[-6, 6, 12]]));
        assert_eq!(s.invariants, [BigInt::from(2), BigInt::from(6)]);
        assert_eq!(&(&s.u * &m(&[&[2, 4, 4], &[-6, 6, 12]])) * &s.v, s.diagonal_matrix());
    }

    #[test]
    fn mod_p2_kernel_examples() {
        assert!(has_mod_p2_kernel_vector(&IntMatrix::diagonal(&[1, 9]), 3).unwrap());
        assert!(!has_mod_p2_kernel_vector(&IntMatrix::diagonal(&[1, 3]), 3).unwrap());
        for p in [2, 3, 5, 7] {
            assert!(!has_mod_p2_kernel_vector(&IntMatrix::identity(3), p).unwrap());
        }
        assert!(has_mod_p2_kernel_vector(&IntMatrix::identity(2), 6).is_err());
    }
}
