//! Exact integer linear algebra over free abelian groups.

mod echelon;
mod lattice;
mod matrix;
mod snf;

pub use lattice::{
    cokernel_factors, hnf, homology, is_unimodular, kernel_basis, quotient_presentation, rank, solve,
    solve_matrix, LinearSolver, Subgroup,
};
pub use matrix::IntMatrix;
pub use snf::{snf, SmithDecomposition};
