//! Radius constants and geometric verification for planar harmonic
//! mappings f = h + conj(g) whose analytic part h lies in a Ma-Minda
//! starlike class S*(psi).
//!
//! The crate is layered bottom-up:
//! - [`series`]: truncated power-series arithmetic over Complex64;
//! - [`psi`]: the catalog of generators psi and their extremal functions;
//! - [`solve`] / [`grid`]: scalar root finding and circle minimization,
//!   data-parallel behind the `parallel` feature;
//! - [`radius`]: the radius theorems as solver operations;
//! - [`harmonic`]: concrete harmonic maps, sampled geometric margins,
//!   and the counterexample suite.

pub mod error;
pub mod grid;
pub mod harmonic;
pub mod psi;
pub mod radius;
pub mod series;
pub mod solve;

pub use error::{Error, Result};
