//! Partitions, symmetric polynomials and Macdonald polynomials.

mod branching;
mod macdonald;
mod partition;
mod poly;
mod symmetric;

pub use branching::qwhittaker_branch_eval;
pub use macdonald::{
    d1_eigenvalue, macdonald_gram_schmidt, macdonald_gram_schmidt_capped, macdonald_triangular_eigen,
    macdonald_triangular_eigen_capped, qt_inner_product, solve_linear, MacdonaldCaps,
};
pub use partition::{compositions, dominance_leq, partitions_of, partitions_of_len, Partition, Signature};
pub use poly::Poly;
pub use symmetric::{distinct_permutations, eval_symmetric, monomial_eval, SymmetricPolynomial};
