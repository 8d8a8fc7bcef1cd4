//! Finite p-groups, their mod-q cohomology in degrees one and two, and the
//! duality between q-central subquotients and kernels of inflation.
//!
//! Everything is exact: groups are multiplication tables, coefficients live in
//! `Z/q` with `q = p^s`, and linear algebra over that non-field ring goes
//! through canonical Howell forms.

pub mod cohomology;
pub mod duality;
pub mod error;
pub mod free_model;
pub mod group;
pub mod zq;

pub use error::{Error, Result};
