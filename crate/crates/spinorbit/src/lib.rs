//! Simulation and synthesis toolkit for single-photon spin-orbit states.
//!
//! A photon carries a polarization (spin) qubit and, restricted to orbital
//! angular momentum m = ±2, an OAM qubit. This crate models the resulting
//! four-dimensional "spin-orbit" space and the optical hardware that
//! manipulates it:
//!
//! - [`basis`]: kets, basis orderings, state vectors, operator lifts and
//!   fidelity metrics for the 4D space.
//! - [`elements`]: Jones calculus for waveplates, the retarder/QWP/HWP/QWP
//!   spin gate, the tuned q-plate map, the ideal q-box, and the seven-element
//!   universal gate composition.
//! - [`synthesis`]: exact decomposition of an arbitrary U(4) into four q-box
//!   settings, plus a preset gate library with convention verification.
//! - [`radial`]: wave-optical simulation of the real q-box, including
//!   Laguerre-Gauss radial profiles, self-inverse Hankel lens transforms,
//!   the semi-birefringent disk with radial-mode crosstalk, and the
//!   disk-radius fidelity optimization.

pub mod basis;
pub mod elements;
pub mod json;
pub mod math;
pub mod radial;
pub mod synthesis;

mod error;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
