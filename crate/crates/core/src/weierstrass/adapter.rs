//! Normalization of half-period pairs {ω_a, ω_b} produced in the reference
//! convention, where the middle half-period of a rhombic lattice is a
//! difference rather than a sum.
//!
//! Mapping by regime:
//!
//! | (g₃, Δ) | ω_a | ω_b |
//! |---------|-----|-----|
//! | (+, −)  | ω₁  | ω₂ (real part flips sign between calls) |
//! | (+, +)  | ω₁  | ω₃  |
//! | (−, +)  | ω₃  | ω₁  |
//! | (−, −)  | ω₃  | ω₂ (imaginary part flips sign between calls) |

use super::{HalfPeriods, Invariants, RegionTag};
use crate::error::{Error, Result};
use crate::Complex;

const GEOMETRY_TOL: f64 = 1e-6;

fn convention(msg: String) -> Error {
    Error::Convention(msg)
}

fn real_axis(name: &str, z: Complex, tol: f64) -> Result<Complex> {
    if z.im.abs() > tol {
        return Err(convention(format!("{name} = {z} should be real")));
    }
    Ok(Complex::new(z.re, 0.0))
}

fn imaginary_axis(name: &str, z: Complex, tol: f64) -> Result<Complex> {
    if z.re.abs() > tol {
        return Err(convention(format!("{name} = {z} should be imaginary")));
    }
    Ok(Complex::new(0.0, z.im))
}

/// Which reference output lands on which half-period, per region.
pub fn adapter_mapping(region: RegionTag) -> &'static str {
    match region {
        RegionTag::I => "ω₁ = ω_a, ω₂ = ω_b",
        RegionTag::BoundaryLow | RegionTag::II | RegionTag::BoundaryMid => "ω₁ = ω_a, ω₃ = ω_b",
        RegionTag::III | RegionTag::BoundaryHigh => "ω₃ = ω_a, ω₁ = ω_b",
        RegionTag::IV => "ω₃ = ω_a, ω₂ = ω_b",
    }
}

/// Converts reference-convention outputs into consistent half-periods.
pub fn adapt_standard_halfperiods(
    omega_a: Complex,
    omega_b: Complex,
    inv: &Invariants,
) -> Result<HalfPeriods> {
    let finite = |z: Complex| z.re.is_finite() && z.im.is_finite();
    if !finite(omega_a) {
        return Err(convention(format!("ω_a = {omega_a} must be finite")));
    }
    let tol = GEOMETRY_TOL * omega_a.norm().max(1.0);
    match inv.region {
        RegionTag::II | RegionTag::BoundaryMid => {
            let w1 = real_axis("ω_a", omega_a, tol)?;
            let w3 = imaginary_axis("ω_b", omega_b, tol)?;
            Ok(HalfPeriods::new(w1, w3))
        }
        RegionTag::BoundaryLow => {
            let w1 = real_axis("ω_a", omega_a, tol)?;
            Ok(HalfPeriods::new(w1, Complex::new(0.0, f64::INFINITY)))
        }
        RegionTag::III => {
            let w3 = imaginary_axis("ω_a", omega_a, tol)?;
            let w1 = real_axis("ω_b", omega_b, tol)?;
            Ok(HalfPeriods::new(w1, w3))
        }
        RegionTag::BoundaryHigh => {
            let w3 = imaginary_axis("ω_a", omega_a, tol)?;
            Ok(HalfPeriods::new(Complex::new(f64::INFINITY, 0.0), w3))
        }
        RegionTag::I => {
            let w1 = real_axis("ω_a", omega_a, tol)?;
            if !finite(omega_b) || omega_b.im <= 0.0 {
                return Err(convention(format!(
                    "ω_b = {omega_b} should have a positive imaginary part"
                )));
            }
            if (omega_b.re.abs() - 0.5 * w1.re).abs() > tol {
                return Err(convention(format!(
                    "|Re ω_b| = {} should equal Ω/2 = {}",
                    omega_b.re.abs(),
                    0.5 * w1.re
                )));
            }
            let w2 = Complex::new(omega_b.re.abs(), omega_b.im);
            Ok(HalfPeriods::new(w1, w2 - w1))
        }
        RegionTag::IV => {
            let w3 = imaginary_axis("ω_a", omega_a, tol)?;
            if w3.im >= 0.0 {
                return Err(convention(format!("ω_a = {omega_a} should be −iΩ with Ω > 0")));
            }
            if !finite(omega_b) || omega_b.re <= 0.0 {
                return Err(convention(format!(
                    "ω_b = {omega_b} should have a positive real part"
                )));
            }
            if (omega_b.im.abs() - 0.5 * w3.im.abs()).abs() > tol {
                return Err(convention(format!(
                    "|Im ω_b| = {} should equal Ω/2 = {}",
                    omega_b.im.abs(),
                    0.5 * w3.im.abs()
                )));
            }
            let w2 = Complex::new(omega_b.re, -omega_b.im.abs());
            Ok(HalfPeriods::new(w2 - w3, w3))
        }
    }
}

/// The pair {ω_a, ω_b} that a reference-convention implementation reports
/// for these half-periods. `flipped` selects the other sign of the
/// oscillating component in the rhombic regimes.
pub fn standard_outputs(hp: &HalfPeriods, region: RegionTag, flipped: bool) -> (Complex, Complex) {
    match region {
        RegionTag::I => (hp.omega1, if flipped { hp.omega3 } else { hp.omega2 }),
        RegionTag::IV => (hp.omega3, if flipped { hp.omega1 } else { hp.omega2 }),
        RegionTag::II | RegionTag::BoundaryMid | RegionTag::BoundaryLow => (hp.omega1, hp.omega3),
        RegionTag::III | RegionTag::BoundaryHigh => (hp.omega3, hp.omega1),
    }
}
