use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::echelon::ColumnEchelon;
use super::matrix::IntMatrix;
use super::snf::snf;
use crate::error::{Error, Result};

/// A subgroup of `ℤ^ambient_rank`, held as its canonical Hermite basis.
///
/// Two subgroups are equal iff their basis matrices are equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Subgroup {
    /// The subgroup spanned by the columns of `generators`.
    pub fn span(generators: &IntMatrix) -> Self {
        let e = ColumnEchelon::new(generators, false, true);
        let basis = IntMatrix::from_columns(generators.rows(), &e.h[..e.rank()]);
        Subgroup {
            ambient_rank: generators.rows(),
            basis,
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Subgroup {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Subgroup {
            ambient_rank,
            basis: IntMatrix::zeros(ambient_rank, 0),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn into_basis(self) -> IntMatrix {
        self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.ambient_rank && ColumnEchelon::new(&self.basis, false, false).solve_h(v).is_some()
    }

    /// Every column of `m` lies in the subgroup.
    pub fn contains_columns(&self, m: &IntMatrix) -> bool {
        if m.rows() != self.ambient_rank {
            return false;
        }
        let e = ColumnEchelon::new(&self.basis, false, false);
        (0..m.cols()).all(|j| e.solve_h(&m.column(j)).is_some())
    }
}

/// Column-style Hermite normal form of `a`, same shape, zero columns last.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    ColumnEchelon::new(a, false, true).h_matrix()
}

pub fn rank(a: &IntMatrix) -> usize {
    ColumnEchelon::new(a, false, false).rank()
}

/// A ℤ-basis of `{v : a·v = 0}`, in Hermite form.
pub fn kernel_basis(a: &IntMatrix) -> Subgroup {
    let e = ColumnEchelon::new(a, true, false);
    let gens = IntMatrix::from_columns(a.cols(), &e.kernel_columns());
    Subgroup::span(&gens)
}

/// An integer `x` with `a·x == b`.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<BigInt>> {
    if b.len() != a.rows() {
        return Err(Error::Shape(format!(
            "right-hand side of length {} for a {}x{} system",
            b.len(),
            a.rows(),
            a.cols()
        )));
    }
    ColumnEchelon::new(a, true, false).solve(b).ok_or(Error::NoSolution)
}

/// Reusable solver for many right-hand sides against one coefficient matrix.
pub struct LinearSolver {
    rows: usize,
    cols: usize,
    echelon: ColumnEchelon,
}

impl LinearSolver {
    pub fn new(a: &IntMatrix) -> Self {
        LinearSolver {
            rows: a.rows(),
            cols: a.cols(),
            echelon: ColumnEchelon::new(a, true, false),
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn solve(&self, b: &[BigInt]) -> Result<Vec<BigInt>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for {} equations",
                b.len(),
                self.rows
            )));
        }
        self.echelon.solve(b).ok_or(Error::NoSolution)
    }

    /// Solves `a·X == rhs` column by column.
    pub fn solve_matrix(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if rhs.rows() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side has {} rows, expected {}",
                rhs.rows(),
                self.rows
            )));
        }
        let cols = (0..rhs.cols())
            .map(|j| self.solve(&rhs.column(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_columns(self.cols, &cols))
    }
}

/// Solves `a·X == rhs` for a matrix unknown.
pub fn solve_matrix(a: &IntMatrix, rhs: &IntMatrix) -> Result<IntMatrix> {
    LinearSolver::new(a).solve_matrix(rhs)
}

/// Square with determinant ±1.
pub fn is_unimodular(a: &IntMatrix) -> bool {
    if !a.is_square() {
        return false;
    }
    let e = ColumnEchelon::new(a, false, false);
    e.rank() == a.rows() && e.pivots.iter().enumerate().all(|(k, &r)| e.h[k][r].abs().is_one())
}

/// Invariant factors of `ℤ^ambient_rank / sub`: torsion orders above one in
/// divisibility order, then a `0` for each free summand.
pub fn quotient_presentation(ambient_rank: usize, sub: &Subgroup) -> Result<Vec<BigInt>> {
    if sub.ambient_rank() != ambient_rank {
        return Err(Error::Shape(format!(
            "subgroup of ℤ^{} in ℤ^{}",
            sub.ambient_rank(),
            ambient_rank
        )));
    }
    Ok(cokernel_factors(sub.basis()))
}

/// Invariant factors of `ℤ^rows / im(m)`.
pub fn cokernel_factors(m: &IntMatrix) -> Vec<BigInt> {
    let d = snf(m);
    let mut out: Vec<BigInt> = d.invariant_factors.iter().filter(|f| !f.is_one()).cloned().collect();
    out.extend(std::iter::repeat_n(BigInt::zero(), m.rows() - d.rank()));
    out
}

/// Invariant factors of `ker(d_low) / im(d_high)`.
pub fn homology(d_low: &IntMatrix, d_high: &IntMatrix) -> Result<Vec<BigInt>> {
    let product = d_low.checked_mul(d_high)?;
    if !product.is_zero() {
        return Err(Error::NotAComplex(format!(
            "consecutive differentials compose to {product}"
        )));
    }
    let ker = kernel_basis(d_low);
    let coords = solve_matrix(ker.basis(), d_high)?;
    Ok(cokernel_factors(&coords))
}
