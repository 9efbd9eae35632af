//! Special functions: log-gamma, Pochhammer, Bessel J of real order,
//! half-integer modified Bessel K and generalized hypergeometric series.

pub(crate) mod dd;
mod bessel;
mod gamma;
mod hyper;

pub use bessel::{bessel_j, bessel_k_half, k_half_scaled, Z_MAX};
pub(crate) use bessel::{bessel_j_extended, j_scaled_series};
pub use gamma::{
    gamma_ln, ln_binomial, ln_factorial, ln_gamma_signed, ln_pochhammer, pochhammer,
    pochhammer_real, rgamma,
};
pub use hyper::{hyp2f1_unit, hyp2f1_unit_gauss, hyp_pfq, HypParams};

/// Value of a truncated series together with its bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval {
    pub value: f64,
    pub terms_used: usize,
    pub est_abs_error: f64,
}

/// Hard cap on series length.
pub const MAX_TERMS: usize = 500;

/// Relative size below which a term counts as negligible.
pub(crate) const TERM_EPS: f64 = 1e-16;
