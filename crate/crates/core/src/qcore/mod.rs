//! Scalar domains and q-series primitives.

mod highprec;
mod qpoch;
mod scalar;
mod series;

pub use highprec::{big_to_f64, HighPrecComplex, MIN_PRECISION};
pub use qpoch::{qbinomial_ratio_series, qpoch_finite, qpoch_infinite, qpoch_truncation, InfiniteProduct};
pub use scalar::{parse_rational, rat, rational_to_f64, ExactScalar, Scalar};
pub use series::{zeta_series_product, ZetaSeries};
