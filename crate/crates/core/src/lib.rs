//! Weierstrass elliptic function ℘(z; g₂, g₃) for g₂ > 0 with one
//! half-period convention, ω₂ ≡ ω₁ + ω₃, across all sign regimes of
//! (g₃, Δ); Jacobi elliptic functions; and the closed-form orbits of a
//! unit-mass particle in the cubic potential V(x) = 3x/2 − 2x³.

pub mod cli_reports;
pub mod cubic_orbits;
pub mod elliptic_core;
pub mod error;
pub mod quadrature;
pub mod weierstrass;

pub use error::{Error, Result};

/// The scalar type used throughout: a pair of `f64` (re, im).
pub type Complex = num_complex::Complex64;
