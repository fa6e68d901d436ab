//! Space-time fractional reaction-diffusion: Mittag-Leffler functions,
//! Hilfer and Riesz-Feller operators, a spectral solver and its verifiers.

// `!(x > 0.0)` is the idiom here for rejecting NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod hilfer_time;
pub mod mittag_leffler;
pub mod oracle;
pub mod quadrature;
pub mod riesz_feller;
pub mod solver;
pub mod special;
