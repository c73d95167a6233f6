//! Column echelon reduction by unimodular column operations.
//!
//! Everything lattice-shaped (Hermite form, kernels, membership and solving)
//! goes through [`ColumnEchelon`]: `A · U = H` with `U` unimodular and `H` in
//! lower column echelon form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

type Column = Vec<BigInt>;

pub(crate) struct ColumnEchelon {
    rows: usize,
    /// Columns of `H`; the first `pivots.len()` are nonzero, the rest zero.
    pub(crate) h: Vec<Column>,
    /// Columns of `U` when requested.
    pub(crate) u: Option<Vec<Column>>,
    /// `pivots[k]` is the row of the leading entry of column `k`.
    pub(crate) pivots: Vec<usize>,
}

/// `cols[dst] += c * cols[src]`
fn axpy(cols: &mut [Column], dst: usize, src: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    let (d, s) = if dst < src {
        let (lo, hi) = cols.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = cols.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

/// Replaces `(p, q)` by `(x p + y q, s p + t q)`; the caller guarantees `x t - y s = ±1`.
fn combine(cols: &mut [Column], p: usize, q: usize, x: &BigInt, y: &BigInt, s: &BigInt, t: &BigInt) {
    let n = cols[p].len();
    for i in 0..n {
        let a = cols[p][i].clone();
        let b = cols[q][i].clone();
        if a.is_zero() && b.is_zero() {
            continue;
        }
        cols[p][i] = x * &a + y * &b;
        cols[q][i] = s * &a + t * &b;
    }
}

fn negate(col: &mut Column) {
    for x in col.iter_mut() {
        *x = -std::mem::take(x);
    }
}

impl ColumnEchelon {
    /// Reduces `a` to column echelon form. With `reduce`, the result is the
    /// canonical Hermite form: positive pivots, and every entry left of a
    /// pivot in its row lies in `[0, pivot)`.
    pub(crate) fn new(a: &IntMatrix, track_transform: bool, reduce: bool) -> Self {
        let rows = a.rows();
        let ncols = a.cols();
        let mut h = a.columns();
        let mut u = track_transform.then(|| {
            (0..ncols)
                .map(|j| {
                    let mut c = vec![BigInt::zero(); ncols];
                    c[j] = BigInt::from(1);
                    c
                })
                .collect::<Vec<_>>()
        });
        let mut pivots = Vec::new();

        for r in 0..rows {
            let p = pivots.len();
            if p == ncols {
                break;
            }
            // min-abs pivot among the remaining columns
            let Some(best) = (p..ncols)
                .filter(|&j| !h[j][r].is_zero())
                .min_by(|&i, &j| h[i][r].abs().cmp(&h[j][r].abs()))
            else {
                continue;
            };
            if best != p {
                h.swap(best, p);
                if let Some(u) = u.as_mut() {
                    u.swap(best, p);
                }
            }
            for j in p + 1..ncols {
                if h[j][r].is_zero() {
                    continue;
                }
                let a_p = h[p][r].clone();
                let b_j = h[j][r].clone();
                let (q, rem) = b_j.div_rem(&a_p);
                if rem.is_zero() {
                    let c = -q;
                    axpy(&mut h, j, p, &c);
                    if let Some(u) = u.as_mut() {
                        axpy(u, j, p, &c);
                    }
                } else {
                    let eg = a_p.extended_gcd(&b_j);
                    let g = eg.gcd;
                    let s = -(&b_j / &g);
                    let t = &a_p / &g;
                    combine(&mut h, p, j, &eg.x, &eg.y, &s, &t);
                    if let Some(u) = u.as_mut() {
                        combine(u, p, j, &eg.x, &eg.y, &s, &t);
                    }
                }
            }
            if h[p][r].is_negative() {
                negate(&mut h[p]);
                if let Some(u) = u.as_mut() {
                    negate(&mut u[p]);
                }
            }
            if reduce {
                let piv = h[p][r].clone();
                for q in 0..p {
                    let f = h[q][r].div_floor(&piv);
                    if !f.is_zero() {
                        let c = -f;
                        axpy(&mut h, q, p, &c);
                        if let Some(u) = u.as_mut() {
                            axpy(u, q, p, &c);
                        }
                    }
                }
            }
            pivots.push(r);
        }
        ColumnEchelon { rows, h, u, pivots }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub(crate) fn h_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.rows, &self.h)
    }

    /// Columns `rank..` of the transform: a basis of the integer kernel.
    pub(crate) fn kernel_columns(&self) -> Vec<Column> {
        let u = self.u.as_ref().expect("transform not tracked");
        u[self.rank()..].to_vec()
    }

    /// Coefficients `y` with `H[:, ..rank] · y == b`, if integral ones exist.
    pub(crate) fn solve_h(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let rank = self.rank();
        let mut y: Vec<BigInt> = Vec::with_capacity(rank);
        for k in 0..rank {
            let r = self.pivots[k];
            let mut acc = b[r].clone();
            for (j, yj) in y.iter().enumerate() {
                let e = &self.h[j][r];
                if !e.is_zero() {
                    acc -= e * yj;
                }
            }
            let (q, rem) = acc.div_rem(&self.h[k][r]);
            if !rem.is_zero() {
                return None;
            }
            y.push(q);
        }
        // residual check covers the non-pivot rows
        for i in 0..self.rows {
            let mut acc = BigInt::zero();
            for (k, yk) in y.iter().enumerate() {
                let e = &self.h[k][i];
                if !e.is_zero() {
                    acc += e * yk;
                }
            }
            if acc != b[i] {
                return None;
            }
        }
        Some(y)
    }

    /// A preimage `x` with `A · x == b`, using the tracked transform.
    pub(crate) fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.solve_h(b)?;
        let u = self.u.as_ref().expect("transform not tracked");
        let n = u.len();
        let mut x = vec![BigInt::zero(); n];
        for (k, yk) in y.iter().enumerate() {
            if yk.is_zero() {
                continue;
            }
            for (xi, uik) in x.iter_mut().zip(&u[k]) {
                if !uik.is_zero() {
                    *xi += uik * yk;
                }
            }
        }
        Some(x)
    }
}
