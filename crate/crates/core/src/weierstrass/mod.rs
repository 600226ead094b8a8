//! The Weierstrass elliptic function ℘(z; g₂, g₃) for g₂ > 0.
//!
//! Half-periods follow one convention in every sign regime of (g₃, Δ):
//! ℘(ω_k) = e_k and ω₂ ≡ ω₁ + ω₃ always. In the rhombic regimes (Δ < 0)
//! this differs from the usual reference convention, where the middle
//! half-period is defined as a difference; [`adapt_standard_halfperiods`]
//! converts between the two.

use std::f64::consts::PI;

use crate::elliptic_core::{agm, complete_k_real, principal_sqrt};
use crate::error::{Error, Result};
use crate::Complex;

mod adapter;
mod invariants;
pub mod series;

pub use adapter::{adapt_standard_halfperiods, adapter_mapping, standard_outputs};
pub use invariants::{phase_from_invariants, Invariants, RegionTag, BOUNDARY_TOLERANCE};

use series::{Lattice, WpSeries};

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Roots of P(w) = 4w³ − g₂w − g₃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootTriple {
    pub e1: Complex,
    pub e2: Complex,
    pub e3: Complex,
}

impl RootTriple {
    pub fn as_array(&self) -> [Complex; 3] {
        [self.e1, self.e2, self.e3]
    }
}

/// e₁ = β cos(φ/3), e₂ = −β cos((π+φ)/3), e₃ = −β cos((π−φ)/3).
///
/// Components that are real by symmetry are returned with a zero
/// imaginary part, and the complex pair (when Δ < 0) is an exact
/// conjugate pair.
pub fn weierstrass_roots(inv: &Invariants) -> RootTriple {
    let phi = inv.phi;
    let b = inv.beta;
    let pi = c(PI, 0.0);
    let e1 = b * (phi / 3.0).cos();
    let e2 = -b * ((pi + phi) / 3.0).cos();
    let e3 = -b * ((pi - phi) / 3.0).cos();
    match inv.region {
        RegionTag::I => RootTriple {
            e1: c(e1.re, 0.0),
            e2,
            e3: e2.conj(),
        },
        RegionTag::IV => RootTriple {
            e1: e2.conj(),
            e2,
            e3: c(e3.re, 0.0),
        },
        _ => RootTriple {
            e1: c(e1.re, 0.0),
            e2: c(e2.re, 0.0),
            e3: c(e3.re, 0.0),
        },
    }
}

/// Half-periods (ω₁, ω₃) with ω₂ = ω₁ + ω₃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPeriods {
    pub omega1: Complex,
    pub omega3: Complex,
    pub omega2: Complex,
    /// Set when one of the periods is infinite (Δ = 0).
    pub degenerate: bool,
}

impl HalfPeriods {
    pub fn new(omega1: Complex, omega3: Complex) -> Self {
        let finite = |z: Complex| z.re.is_finite() && z.im.is_finite();
        HalfPeriods {
            omega1,
            omega3,
            omega2: omega1 + omega3,
            degenerate: !(finite(omega1) && finite(omega3)),
        }
    }

    pub fn as_array(&self) -> [Complex; 3] {
        [self.omega1, self.omega2, self.omega3]
    }

    /// Full-period lattice 2ω₁, 2ω₃ (only the finite ones).
    pub fn lattice(&self) -> Lattice {
        Lattice::from_periods(2.0 * self.omega1, 2.0 * self.omega3)
    }
}

/// Ω₀ = π/√(6β): real half-period on the (+, 0) boundary.
pub fn omega_zero_boundary(beta: f64) -> f64 {
    PI / (6.0 * beta).sqrt()
}

/// ω₀ = K(1/2)/(3β²)^{1/4}: the square-lattice half-period at g₃ = 0.
pub fn omega_zero_square(beta: f64) -> f64 {
    complete_k_real(0.5).expect("K(1/2) is finite") / (3.0 * beta * beta).powf(0.25)
}

/// Half of the smallest positive real period of ℘, i.e. the point on the
/// positive real axis where ℘ reaches its smallest real value.
///
/// AGM on root differences: with r the largest real root (Δ ≥ 0) or the
/// only real root (Δ < 0), ρ = π / (2·agm(√(r − e), √(r − e′))) over the
/// two other roots e, e′.
pub fn real_half_period(inv: &Invariants) -> Result<f64> {
    let r = weierstrass_roots(inv);
    let (root, a, b) = match inv.region {
        RegionTag::IV => (r.e3, r.e1, r.e2),
        _ => (r.e1, r.e2, r.e3),
    };
    let m = agm(principal_sqrt(root - b), principal_sqrt(root - a))?;
    if m.norm() == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(PI / (2.0 * m.re))
}

/// Half-periods in the consistent convention for every (g₃, Δ) regime.
pub fn half_periods(inv: &Invariants) -> Result<HalfPeriods> {
    let beta = inv.beta;
    match inv.region {
        RegionTag::BoundaryLow => Ok(HalfPeriods::new(
            c(omega_zero_boundary(beta), 0.0),
            c(0.0, f64::INFINITY),
        )),
        RegionTag::BoundaryMid => {
            let w0 = omega_zero_square(beta);
            Ok(HalfPeriods::new(c(w0, 0.0), c(0.0, w0)))
        }
        RegionTag::II => {
            let omega = real_half_period(inv)?;
            let omega_prime = real_half_period(&inv.mirrored())?;
            Ok(HalfPeriods::new(c(omega, 0.0), c(0.0, omega_prime)))
        }
        RegionTag::I => {
            let big_omega = real_half_period(inv)?;
            // The mirrored (region IV) function has real period 4|Ω′|.
            let big_omega_prime = 0.5 * real_half_period(&inv.mirrored())?;
            Ok(HalfPeriods::new(
                c(big_omega, 0.0),
                c(-0.5 * big_omega, big_omega_prime),
            ))
        }
        RegionTag::BoundaryHigh => Ok(HalfPeriods::new(
            c(f64::INFINITY, 0.0),
            c(0.0, -omega_zero_boundary(beta)),
        )),
        RegionTag::III | RegionTag::IV => {
            // g₃-inversion: ω₃⁻ = −i ω₁⁺, ω₁⁻ = −i ω₃⁺.
            let plus = half_periods(&inv.mirrored())?;
            let minus_i = c(0.0, -1.0);
            Ok(HalfPeriods::new(minus_i * plus.omega3, minus_i * plus.omega1))
        }
    }
}

fn tail_integral(q: impl Fn(f64) -> f64) -> Result<f64> {
    // ∫ over s ∈ [0, 1) of 1 / ((1−s)² √Q(w(s))), the image of a half-line
    // under w = e ± s²/(1−s)².
    let integrand = |s: f64| {
        if s >= 1.0 {
            return 1.0;
        }
        let one_minus = 1.0 - s;
        let t = s * s / (one_minus * one_minus);
        1.0 / (one_minus * one_minus * q(t).sqrt())
    };
    Ok(crate::quadrature::integrate(integrand, 0.0, 1.0, 1e-12)?.value)
}

/// ω₁ = ∫_{e₁}^∞ dw/√P(w), by adaptive quadrature. Defined when e₁ is real.
pub fn omega1_quadrature(inv: &Invariants) -> Result<Complex> {
    let r = weierstrass_roots(inv);
    if inv.region == RegionTag::IV {
        return Err(Error::domain("e₁ is complex when g₃ < 0 and Δ < 0"));
    }
    let e1 = r.e1.re;
    let (e2, e3) = (r.e2, r.e3);
    let value = tail_integral(|t| {
        let w = c(e1 + t, 0.0);
        ((w - e2) * (w - e3)).re
    })?;
    Ok(c(value, 0.0))
}

/// ω₃ = ±i ∫_{−∞}^{e₃} dw/√|P(w)|, sign from g₃. Defined when e₃ is real.
pub fn omega3_quadrature(inv: &Invariants) -> Result<Complex> {
    let r = weierstrass_roots(inv);
    if inv.region == RegionTag::I {
        return Err(Error::domain("e₃ is complex when g₃ > 0 and Δ < 0"));
    }
    let e3 = r.e3.re;
    let (e1, e2) = (r.e1, r.e2);
    let value = tail_integral(|t| {
        let w = c(e3 - t, 0.0);
        ((e1 - w) * (e2 - w)).re
    })?;
    let sign = if inv.g3 < 0.0 { -1.0 } else { 1.0 };
    Ok(c(0.0, sign * value))
}

/// ℘ and ℘′ for one set of real invariants, with the lattice precomputed.
#[derive(Debug, Clone)]
pub struct Weierstrass {
    invariants: Invariants,
    roots: RootTriple,
    half_periods: HalfPeriods,
    series: WpSeries,
}

impl Weierstrass {
    pub fn new(g2: f64, g3: f64) -> Result<Self> {
        Self::from_invariants(phase_from_invariants(g2, g3)?)
    }

    pub fn from_invariants(invariants: Invariants) -> Result<Self> {
        let roots = weierstrass_roots(&invariants);
        let half_periods = half_periods(&invariants)?;
        let series = WpSeries::new(c(invariants.g2, 0.0), c(invariants.g3, 0.0))
            .with_lattice(half_periods.lattice());
        Ok(Weierstrass {
            invariants,
            roots,
            half_periods,
            series,
        })
    }

    pub fn invariants(&self) -> &Invariants {
        &self.invariants
    }

    pub fn roots(&self) -> &RootTriple {
        &self.roots
    }

    pub fn half_periods(&self) -> &HalfPeriods {
        &self.half_periods
    }

    /// P(w) = 4w³ − g₂w − g₃.
    pub fn cubic(&self, w: Complex) -> Complex {
        4.0 * w * w * w - self.invariants.g2 * w - self.invariants.g3
    }

    pub fn wp(&self, z: Complex) -> Result<Complex> {
        Ok(self.series.eval(z)?.0)
    }

    pub fn wp_prime(&self, z: Complex) -> Result<Complex> {
        Ok(self.series.eval(z)?.1)
    }

    pub fn wp_and_prime(&self, z: Complex) -> Result<(Complex, Complex)> {
        self.series.eval(z)
    }
}

/// ℘(z; g₂, g₃).
pub fn wp(z: Complex, inv: &Invariants) -> Result<Complex> {
    Weierstrass::from_invariants(*inv)?.wp(z)
}

/// ℘′(z; g₂, g₃).
pub fn wp_prime(z: Complex, inv: &Invariants) -> Result<Complex> {
    Weierstrass::from_invariants(*inv)?.wp_prime(z)
}

/// ℘ for arbitrary complex invariants. Real invariants with g₂ > 0 take the
/// lattice-reduced route; anything else is evaluated without reduction,
/// so accuracy degrades slowly as |z| grows past a few periods.
pub fn wp_complex_invariants(z: Complex, g2: Complex, g3: Complex) -> Result<(Complex, Complex)> {
    if g2.im == 0.0 && g3.im == 0.0 && g2.re > 0.0 {
        return Weierstrass::new(g2.re, g3.re)?.wp_and_prime(z);
    }
    WpSeries::new(g2, g3).eval(z)
}

/// Image of (z, g₂, g₃) under the homogeneity relation
/// ℘(z; g₂, g₃) = λ⁻² ℘(λ⁻¹z; λ⁴g₂, λ⁶g₃).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneityImage {
    pub z: Complex,
    pub g2: Complex,
    pub g3: Complex,
    /// The factor λ⁻² multiplying ℘ at the image point.
    pub scale: Complex,
}

impl HomogeneityImage {
    /// Evaluates scale·℘(z′; g₂′, g₃′), which equals ℘ at the source point.
    pub fn evaluate(&self) -> Result<Complex> {
        Ok(self.scale * wp_complex_invariants(self.z, self.g2, self.g3)?.0)
    }
}

pub fn homogeneity_map(lambda: Complex, z: Complex, inv: &Invariants) -> Result<HomogeneityImage> {
    if lambda.norm() == 0.0 {
        return Err(Error::domain("homogeneity factor λ must be nonzero"));
    }
    let l2 = lambda * lambda;
    let l4 = l2 * l2;
    Ok(HomogeneityImage {
        z: z / lambda,
        g2: l4 * inv.g2,
        g3: l4 * l2 * inv.g3,
        scale: l2.inv(),
    })
}
