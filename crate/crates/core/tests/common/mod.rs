//! Independent oracles: everything here is computed from determinants and
//! minors, never through the library's echelon or Smith code.
#![allow(dead_code)]

use dukan_core::linalg::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::from_vec(rows, cols, data).unwrap()
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect()).collect()
}

/// Bareiss fraction-free determinant.
pub fn det(m: &IntMatrix) -> BigInt {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_rows(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.is_square() && det(m).abs().is_one()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn minor(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| m.get(i, j).clone())).collect();
    det(&IntMatrix::from_vec(rows.len(), cols.len(), data).unwrap())
}

/// gcd of all `k × k` minors; 0 when they all vanish.
pub fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let mut g = BigInt::zero();
    for r in subsets(m.rows(), k) {
        for c in subsets(m.cols(), k) {
            g = g.gcd(&minor(m, &r, &c));
        }
    }
    g
}

pub fn rank(m: &IntMatrix) -> usize {
    (1..=m.rows().min(m.cols())).rev().find(|&k| !minor_gcd(m, k).is_zero()).unwrap_or(0)
}

/// Nonunit invariant factors followed by zeros for the free part of
/// `ℤ^rows / span(columns)`, from determinantal divisors.
pub fn cokernel_factors(m: &IntMatrix) -> Vec<BigInt> {
    let r = rank(m);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=r {
        let g = minor_gcd(m, k);
        let e = &g / &prev;
        if !e.is_one() {
            out.push(e);
        }
        prev = g;
    }
    out.extend(std::iter::repeat_n(BigInt::zero(), m.rows() - r));
    out
}

/// All invariant factors (Smith diagonal, rank many).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let r = rank(m);
    let mut prev = BigInt::one();
    (1..=r)
        .map(|k| {
            let g = minor_gcd(m, k);
            let e = &g / &prev;
            prev = g;
            e
        })
        .collect()
}

fn hstack(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    IntMatrix::hstack(a.rows(), &[a, b]).unwrap()
}

/// Column lattices agree iff the ranks and the gcds of maximal minors of
/// `a`, `b` and `[a | b]` all agree.
pub fn same_span(a: &IntMatrix, b: &IntMatrix) -> bool {
    let r = rank(a);
    let ab = hstack(a, b);
    if rank(b) != r || rank(&ab) != r {
        return false;
    }
    let g = minor_gcd(a, r);
    g == minor_gcd(b, r) && g == minor_gcd(&ab, r)
}

pub fn in_span(a: &IntMatrix, v: &IntMatrix) -> bool {
    let r = rank(a);
    let av = hstack(a, v);
    rank(&av) == r && minor_gcd(&av, r) == minor_gcd(a, r)
}

/// Every integer vector with entries in `[−bound, bound]`.
pub fn box_vectors(dim: usize, bound: i64) -> Vec<IntMatrix> {
    let side = (2 * bound + 1) as usize;
    (0..side.pow(dim as u32))
        .map(|mut code| {
            let v: Vec<i64> = (0..dim)
                .map(|_| {
                    let x = (code % side) as i64 - bound;
                    code /= side;
                    x
                })
                .collect();
            IntMatrix::from_vec(dim, 1, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
