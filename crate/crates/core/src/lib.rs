//! Generalized Susskind-Glogower coherent states on truncated Fock spaces.
//!
//! Module map:
//! - [`specfun`]: log-gamma, Pochhammer, Bessel J / K, pFq series
//! - [`fockspace`]: state vectors, ladder operators, commutators, matrix exponential
//! - [`states`]: coefficient vectors for the SG, MSG, SGI, SGII, SU(1,1), SU(2) and Glauber families
//! - [`quantize`]: radial quadrature and closed forms behind the quantization maps
//! - [`stats`]: photon statistics and squeezing
//! - [`limits`]: contraction limits towards Glauber states and boson operators

pub mod error;
pub mod exec;
pub mod specfun;

pub use error::{Error, Result};
pub use exec::Exec;
pub mod fockspace;
pub mod states;
pub mod quantize;
pub mod stats;
pub mod limits;
