use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::Complex;

/// Relative distance from Δ = 0 or g₃ = 0 that snaps onto a boundary row.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// Sign regime of (g₃, Δ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionTag {
    /// g₃ > 0, Δ < 0
    I,
    /// g₃ > 0, Δ > 0
    II,
    /// g₃ < 0, Δ > 0
    III,
    /// g₃ < 0, Δ < 0
    IV,
    /// Δ = 0, g₃ > 0
    BoundaryLow,
    /// g₃ = 0
    BoundaryMid,
    /// Δ = 0, g₃ < 0
    BoundaryHigh,
}

impl RegionTag {
    pub fn is_boundary(self) -> bool {
        matches!(
            self,
            RegionTag::BoundaryLow | RegionTag::BoundaryMid | RegionTag::BoundaryHigh
        )
    }

    /// Region reached by g₃ ↦ −g₃.
    pub fn mirrored(self) -> RegionTag {
        match self {
            RegionTag::I => RegionTag::IV,
            RegionTag::II => RegionTag::III,
            RegionTag::III => RegionTag::II,
            RegionTag::IV => RegionTag::I,
            RegionTag::BoundaryLow => RegionTag::BoundaryHigh,
            RegionTag::BoundaryMid => RegionTag::BoundaryMid,
            RegionTag::BoundaryHigh => RegionTag::BoundaryLow,
        }
    }

    /// (sign of g₃, sign of Δ) as "+", "0", "-".
    pub fn signs(self) -> (&'static str, &'static str) {
        match self {
            RegionTag::I => ("+", "-"),
            RegionTag::BoundaryLow => ("+", "0"),
            RegionTag::II => ("+", "+"),
            RegionTag::BoundaryMid => ("0", "+"),
            RegionTag::III => ("-", "+"),
            RegionTag::BoundaryHigh => ("-", "0"),
            RegionTag::IV => ("-", "-"),
        }
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionTag::I => "I",
            RegionTag::II => "II",
            RegionTag::III => "III",
            RegionTag::IV => "IV",
            RegionTag::BoundaryLow => "I/II",
            RegionTag::BoundaryMid => "II/III",
            RegionTag::BoundaryHigh => "III/IV",
        };
        f.write_str(s)
    }
}

/// Invariants g₂ > 0, g₃ with the derived discriminant and phase:
/// g₂ = 3β², g₃ = β³ cos φ, Δ = g₂³ − 27g₃².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariants {
    pub g2: f64,
    pub g3: f64,
    pub delta: f64,
    pub beta: f64,
    /// On the path −iψ → [0, π] → π + iψ.
    pub phi: Complex,
    pub region: RegionTag,
}

impl Invariants {
    /// Same g₂ with g₃ negated.
    pub fn mirrored(&self) -> Invariants {
        phase_from_invariants(self.g2, -self.g3).expect("g2 already validated")
    }
}

/// Builds the phase parameterization and region tag for (g₂, g₃).
pub fn phase_from_invariants(g2: f64, g3: f64) -> Result<Invariants> {
    if !(g2 > 0.0) || !g2.is_finite() {
        return Err(Error::domain(format!("g2 must be positive, got {g2}")));
    }
    if !g3.is_finite() {
        return Err(Error::domain(format!("g3 must be finite, got {g3}")));
    }
    let beta = (g2 / 3.0).sqrt();
    let delta = g2 * g2 * g2 - 27.0 * g3 * g3;
    let ratio = g3 / (beta * beta * beta);

    let region = if ratio.abs() <= BOUNDARY_TOLERANCE {
        RegionTag::BoundaryMid
    } else if delta.abs() <= BOUNDARY_TOLERANCE * g2 * g2 * g2 {
        if g3 > 0.0 {
            RegionTag::BoundaryLow
        } else {
            RegionTag::BoundaryHigh
        }
    } else {
        match (g3 > 0.0, delta > 0.0) {
            (true, false) => RegionTag::I,
            (true, true) => RegionTag::II,
            (false, true) => RegionTag::III,
            (false, false) => RegionTag::IV,
        }
    };

    let phi = match region {
        RegionTag::BoundaryMid => Complex::new(PI / 2.0, 0.0),
        RegionTag::BoundaryLow => Complex::new(0.0, 0.0),
        RegionTag::BoundaryHigh => Complex::new(PI, 0.0),
        RegionTag::I => Complex::new(0.0, -ratio.acosh()),
        RegionTag::IV => Complex::new(PI, (-ratio).acosh()),
        RegionTag::II | RegionTag::III => Complex::new(ratio.clamp(-1.0, 1.0).acos(), 0.0),
    };

    Ok(Invariants {
        g2,
        g3,
        delta,
        beta,
        phi,
        region,
    })
}
