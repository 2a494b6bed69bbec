//! The q → 1 limit of Noumi's operator: residue sum, contour integral, and its eigenrelations.

mod eigen;
mod identity;
mod lemma;
mod test_function;

pub use eigen::{baxter_eigen_check, baxter_lhs, baxter_rhs, BaxterIdentity, EIGEN_MAX_RANK};
pub use identity::{gamma_identity_check, gamma_identity_lhs, gamma_identity_rhs, kappa_forms, kappa_parity};
pub use lemma::{check_contour_hypotheses, contour_apply, lemma1_check, residue_apply, ResidueSum, CONTOUR_MAX_RANK};
pub use test_function::TestFunction;
