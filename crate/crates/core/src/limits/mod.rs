//! The scaling regime in which `t = 0` Macdonald polynomials degenerate to Whittaker functions,
//! and numerical checks of the individual ε → 0 limits.

mod checks;
mod scaling;

pub use checks::{
    convergence_sweep, eq_exp_limit_check, lattice_point, strictly_decreasing, sweep_csv, term_limit_checks, SweepRow, DEFAULT_LADDER,
};
pub use scaling::{
    a_eps, a_eps_literal, ln_prefactor, raw_lambda, scaled_qwhittaker, scaled_qwhittaker_at, scaling_map, ScaledImage,
    ScaledValue, ScalingPoint, DEFAULT_PRECISION, MAX_PRECISION,
};
