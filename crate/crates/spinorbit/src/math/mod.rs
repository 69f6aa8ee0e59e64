//! Small self-contained numerics: dense complex 2x2 / 4x4 matrices and the
//! special functions needed by the radial simulator.

pub mod linalg;
pub mod special;

pub use linalg::{Mat2, Mat4};

use num_complex::Complex64;

/// Shorthand for the complex scalar used everywhere.
pub type C64 = Complex64;

/// i as a constant.
pub const I: C64 = C64::new(0.0, 1.0);

/// Complex one / zero.
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}
