//! Exact dense linear algebra over a field.
//!
//! Everything here is Gaussian elimination on `Vec<Vec<F>>` row-major
//! matrices. Sizes are tiny (at most a few dozen rows), so clarity wins over
//! cache behaviour.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Q = BigRational;

/// Exact scalar field used by the matrix routines.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn from_int(v: i64) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn q(v: i64) -> Q {
    Q::from_int(v)
}

pub fn qq(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_q_rows(rows: &[Vec<i64>]) -> Matrix<Q> {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

pub fn transpose<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner, "inner dimension mismatch");
            (0..cols)
                .map(|j| {
                    let mut acc = F::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc = acc + x.clone() * b[k][j].clone();
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        })
        .collect()
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = F::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let delta = factor.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Rank over the rationals of a list of integer vectors.
pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    rank(&to_q_rows(rows))
}

pub fn determinant<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det = det * pivot.clone();
        for i in (c + 1)..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone() / pivot.clone();
            for j in c..n {
                let delta = factor.clone() * a[c][j].clone();
                a[i][j] = a[i][j].clone() - delta;
            }
        }
    }
    det
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the right kernel `{x : m x = 0}`; `cols` is needed when `m` has
/// no rows.
pub fn kernel_basis<F: Field>(m: &Matrix<F>, cols: usize) -> Matrix<F> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -work[r][f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / g.abs()).collect()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    use num_integer::Integer;
    a.gcd(&b)
}

/// Primitive representative of a nonzero integer vector.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0, |acc, &x| gcd_i64(acc, x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

pub fn is_zero_vec(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// `true` iff `a` is a positive rational multiple of `b` (both nonzero).
pub fn same_ray(a: &[i64], b: &[i64]) -> bool {
    !is_zero_vec(a) && !is_zero_vec(b) && primitive(a) == primitive(b)
}

pub fn is_nonnegative(x: &Q) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank_int(&[vec![1, 1], vec![1, 2], vec![2, 1]]), 2);
        assert_eq!(rank_int(&[vec![2, 4], vec![1, 2]]), 1);
        assert_eq!(rank_int(&[]), 0);
    }

    #[test]
    fn inverse_and_determinant_agree() {
        let m = to_q_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(determinant(&m), q(4));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity::<Q>(3));
        assert!(inverse(&to_q_rows(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn kernel_of_single_row() {
        let k = kernel_basis(&to_q_rows(&[vec![1, 1, -1, -1]]), 4);
        assert_eq!(k.len(), 3);
        for v in &k {
            assert!(Zero::is_zero(&mat_vec(&to_q_rows(&[vec![1, 1, -1, -1]]), v)[0]));
        }
        assert_eq!(kernel_basis::<Q>(&Vec::new(), 2).len(), 2);
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[2, 0]), vec![1, 0]);
        assert_eq!(primitive(&[-4, 6]), vec![-2, 3]);
        assert!(same_ray(&[2, 4], &[1, 2]));
        assert!(!same_ray(&[-1, -2], &[1, 2]));
        let v = vec![qq(1, 2), qq(-3, 4)];
        assert_eq!(primitive_integer(&v), vec![BigInt::from(2), BigInt::from(-3)]);
    }
}
