//! Ground-state coherence of a Λ-type emitter driven by spontaneous emission
//! into an anisotropic electromagnetic vacuum.
//!
//! The crate is organised around four cores plus the experiment front end:
//!
//! * [`dynamics`]: Born–Markov master equation of the Λ system (closed form,
//!   fixed-step RK4 cross-check, steady state and the atom–photon dressed state).
//! * [`anisotropy`]: maps imaginary Green-tensor components at the emitter to
//!   decay coefficients and to the coherence `ρ12(∞) = R × A`.
//! * [`metasurface`]: reflectarray layouts reproducing a spherical-mirror phase
//!   profile with resonant-phase or geometric-phase antennas.
//! * [`farfield`]: solid-angle quadrature of the modified decay rate of an
//!   x-oriented dipole facing a finite, partially reflecting mirror.
//! * [`experiments`]: configuration and the report writers used by the `aqv` binary.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod anisotropy;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod farfield;
pub mod format;
pub mod integrate;
pub mod metasurface;
pub mod quadrature;

pub use error::{Error, Result};
pub use num_complex::Complex64;
