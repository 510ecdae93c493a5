//! Numerical laboratory for u_t − div(|Du|^{p−2}Du) + |Du|^q = f with
//! generalized Dirichlet boundary conditions, q > p ≥ 2.

pub mod acceptance;
pub mod analysis;
pub mod barriers;
pub mod config;
pub mod discrete_ops;
pub mod domain;
pub mod ergodic;
pub mod error;
pub mod exec;
pub mod parabolic;
pub mod source;
pub mod stationary;
pub mod supconv;

pub use error::{Error, Result};
