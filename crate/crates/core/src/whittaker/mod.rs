//! Complex Gamma, quadrature, Givental-integral Whittaker functions and Stade's identities.

mod gamma;
mod givental;
mod quadrature;
mod sklyanin;
mod stade;

pub use gamma::{gamma_c, ln_gamma, ln_inv_gamma_pair, rgamma};
pub use givental::{givental_action, whittaker_eval, GiventalPattern, MAX_RANK};
pub use quadrature::{integrate, integrate_line, integrate_line_estimate, integrate_plain, QuadResult, QuadratureConfig, Scheme};
pub use sklyanin::{sklyanin_m, sklyanin_s};
pub use stade::{stade_check, stade_rhs, StadeIdentity, STADE_MAX_RANK};
