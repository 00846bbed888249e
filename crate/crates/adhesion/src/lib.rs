//! Numerical laboratory for the adhesion model.
//!
//! The crate evaluates viscous and inviscid velocity potentials for
//! potential Burgers flow, integrates Lagrangian particle flows through the
//! vanishing-viscosity limit, builds advected and Monge-Ampere mass
//! measures, and ships an exact closed-form oracle for the planar
//! three-sector Riemann problem that certifies when the advected measure
//! differs from the Monge-Ampere measure and when monotone reconstruction
//! of the inverse Lagrangian map is impossible.

pub mod convexkit;
pub mod error;
pub mod geom;
pub mod grid;
pub mod numerics;

pub use error::{Error, Result};
