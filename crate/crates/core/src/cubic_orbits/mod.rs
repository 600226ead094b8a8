//! Unit-mass particle in V(x) = 3x/2 − 2x³.
//!
//! The energy equation ẋ² = 2E − 3x + 4x³ is the Weierstrass equation with
//! g₂ = 3 and g₃ = −2E, so every orbit is x(t) = ℘(t + γ; 3, −2E) for a
//! shift γ picked by the initial condition.

use std::f64::consts::PI;

use crate::elliptic_core::{complete_k, complete_k_real, jacobi_sn_cn_dn, principal_sqrt, RATIO_POLE_TOL};
use crate::error::{Error, Result};
use crate::weierstrass::{phase_from_invariants, weierstrass_roots, Invariants, RegionTag, Weierstrass};
use crate::Complex;

mod ode;

pub use ode::{energy_drift, ode_reference, EscapeNotice, ESCAPE_RADIUS, MAX_STEP};

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// √(3/2), the hyperbolic rate of the separatrix.
const SEP_RATE: f64 = 1.224_744_871_391_589;

/// V(x) = 3x/2 − 2x³.
pub fn potential(x: f64) -> f64 {
    1.5 * x - 2.0 * x * x * x
}

fn potential_c(x: Complex) -> Complex {
    1.5 * x - 2.0 * x * x * x
}

/// −V′(x) = 6x² − 3/2.
pub fn force(x: f64) -> f64 {
    6.0 * x * x - 1.5
}

/// ẋ² = 2E − 3x + 4x³.
pub fn velocity_squared(energy: f64, x: f64) -> f64 {
    2.0 * energy - 3.0 * x + 4.0 * x * x * x
}

/// An energy with its Weierstrass phase, E = −cos(φ)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    /// Snapped to −1/2, 0 or 1/2 on a boundary.
    pub energy: f64,
    pub g3: f64,
    pub phi: Complex,
    /// ψ = |Im φ| in regions I and IV, otherwise φ itself.
    pub psi_or_varphi: f64,
    pub region: RegionTag,
    pub invariants: Invariants,
}

/// Classifies E and builds φ on the path −iψ → [0, π] → π + iψ.
pub fn energy_level(energy: f64) -> Result<EnergyLevel> {
    if !energy.is_finite() {
        return Err(Error::domain(format!("energy must be finite, got {energy}")));
    }
    let mut inv = phase_from_invariants(3.0, -2.0 * energy)?;
    let energy = match inv.region {
        RegionTag::BoundaryLow => -0.5,
        RegionTag::BoundaryMid => 0.0,
        RegionTag::BoundaryHigh => 0.5,
        _ => energy,
    };
    if inv.region.is_boundary() {
        inv = phase_from_invariants(3.0, -2.0 * energy)?;
    }
    let psi_or_varphi = match inv.region {
        RegionTag::I | RegionTag::IV => inv.phi.im.abs(),
        _ => inv.phi.re,
    };
    Ok(EnergyLevel {
        energy,
        g3: inv.g3,
        phi: inv.phi,
        psi_or_varphi,
        region: inv.region,
        invariants: inv,
    })
}

/// Roots of 2E − 3x + 4x³, i.e. x_k = e_k with β = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    pub x1: Complex,
    pub x2: Complex,
    pub x3: Complex,
}

impl TurningPoints {
    pub fn as_array(&self) -> [Complex; 3] {
        [self.x1, self.x2, self.x3]
    }
}

pub fn turning_points(level: &EnergyLevel) -> TurningPoints {
    let r = weierstrass_roots(&level.invariants);
    TurningPoints {
        x1: r.e1,
        x2: r.e2,
        x3: r.e3,
    }
}

/// Jacobi parameter m, its complement, and the phase χ when |E| > 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusPair {
    pub m: Complex,
    pub m_prime: Complex,
    pub chi: Option<f64>,
}

/// χ(ψ) = 2 arctan(tanh(ψ/3)/√3).
pub fn chi_from_psi(psi: f64) -> f64 {
    2.0 * ((psi / 3.0).tanh() / 3f64.sqrt()).atan()
}

/// m = sin(φ/3) / sin((π+φ)/3), m′ = 1 − m.
pub fn modulus(level: &EnergyLevel) -> ModulusPair {
    let phi = level.phi;
    let pi = c(PI, 0.0);
    let mut m = (phi / 3.0).sin() / ((pi + phi) / 3.0).sin();
    let chi = match level.region {
        RegionTag::I | RegionTag::IV => Some(chi_from_psi(level.psi_or_varphi)),
        RegionTag::BoundaryLow => {
            m = c(0.0, 0.0);
            None
        }
        RegionTag::BoundaryMid => {
            m = c(0.5, 0.0);
            None
        }
        RegionTag::BoundaryHigh => {
            m = c(1.0, 0.0);
            None
        }
        _ => {
            m = c(m.re, 0.0);
            None
        }
    };
    ModulusPair {
        m,
        m_prime: 1.0 - m,
        chi,
    }
}

/// m′ = sin((π−φ)/3) / sin((π+φ)/3), computed on its own.
pub fn complementary_modulus_direct(level: &EnergyLevel) -> Complex {
    let pi = c(PI, 0.0);
    ((pi - level.phi) / 3.0).sin() / ((pi + level.phi) / 3.0).sin()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Bounded,
    Unbounded,
    SeparatrixBounded,
    SeparatrixUnbounded,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Bounded => "bounded",
            Branch::Unbounded => "unbounded",
            Branch::SeparatrixBounded => "separatrix_bounded",
            Branch::SeparatrixUnbounded => "separatrix_unbounded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Weierstrass,
    Jacobi,
    Ode,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Weierstrass => "weierstrass",
            Method::Jacobi => "jacobi",
            Method::Ode => "ode",
        }
    }
}

/// Samples of one orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub positions: Vec<Complex>,
    pub velocities: Vec<Complex>,
    pub method: Method,
    pub branch: Branch,
    pub energy: f64,
    /// Set by the ODE oracle when the run was cut short.
    pub escape: Option<EscapeNotice>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// max |v²/2 + V(x) − E| over the samples.
    pub fn energy_residual(&self) -> f64 {
        self.positions
            .iter()
            .zip(&self.velocities)
            .map(|(&x, &v)| (0.5 * v * v + potential_c(x) - self.energy).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_imaginary_part(&self) -> f64 {
        self.positions.iter().map(|x| x.im.abs()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Form {
    /// Equilibrium at E = −1/2.
    Constant(f64),
    /// −1 + (3/2) tanh²(√(3/2) t), from x = −1 at t = 0.
    Tanh,
    /// −1 + (3/2) coth²(√(3/2) t), from x = ∞ at t = 0.
    Coth,
    /// x₃ + (x₂−x₃) sn²(κt | m) = ℘(t + ω₃).
    SnSquared,
    /// x₁ + (x₁−x₂) sc²(κt | m) = ℘(t + ω₁).
    ScSquared,
}

/// One closed-form orbit at a fixed energy.
#[derive(Debug, Clone)]
pub struct Orbit {
    level: EnergyLevel,
    branch: Branch,
    /// Shift applied before evaluation: x(t) = x₀(t + time_offset).
    pub time_offset: f64,
    turning: TurningPoints,
    modulus: ModulusPair,
    kappa: Complex,
    wp: Weierstrass,
    form: Form,
}

fn mismatch(level: &EnergyLevel, branch: Branch) -> Error {
    Error::domain(format!(
        "branch {} does not exist at E = {} (region {})",
        branch.name(),
        level.energy,
        level.region
    ))
}

impl Orbit {
    pub fn new(level: &EnergyLevel, branch: Branch) -> Result<Orbit> {
        use RegionTag::*;
        let (form, effective) = match (branch, level.region) {
            (Branch::SeparatrixBounded, BoundaryHigh) | (Branch::Bounded, BoundaryHigh) => {
                (Form::Tanh, Branch::SeparatrixBounded)
            }
            (Branch::SeparatrixUnbounded, BoundaryHigh) | (Branch::Unbounded, BoundaryHigh) => {
                (Form::Coth, Branch::SeparatrixUnbounded)
            }
            (Branch::SeparatrixBounded | Branch::SeparatrixUnbounded, _) => {
                return Err(mismatch(level, branch))
            }
            (Branch::Bounded, I | IV) => return Err(mismatch(level, branch)),
            (Branch::Bounded, BoundaryLow) => (Form::Constant(-0.5), Branch::Bounded),
            (Branch::Bounded, _) => (Form::SnSquared, Branch::Bounded),
            (Branch::Unbounded, IV) => (Form::SnSquared, Branch::Unbounded),
            (Branch::Unbounded, _) => (Form::ScSquared, Branch::Unbounded),
        };
        let turning = turning_points(level);
        Ok(Orbit {
            level: *level,
            branch: effective,
            time_offset: 0.0,
            turning,
            modulus: modulus(level),
            kappa: principal_sqrt(turning.x1 - turning.x3),
            wp: Weierstrass::from_invariants(level.invariants)?,
            form,
        })
    }

    /// Unbounded orbit with t = 0 at the pole, x(0) = ∞.
    pub fn pole_anchored(level: &EnergyLevel, branch: Branch) -> Result<Orbit> {
        let mut orbit = Orbit::new(level, branch)?;
        match orbit.form {
            Form::Coth => {}
            Form::ScSquared | Form::SnSquared if orbit.branch == Branch::Unbounded => {
                let t = orbit.escape_time()?.expect("unbounded elliptic orbit escapes");
                orbit.time_offset = -t;
            }
            _ => return Err(mismatch(level, branch)),
        }
        Ok(orbit)
    }

    pub fn level(&self) -> &EnergyLevel {
        &self.level
    }

    /// Branch after routing the double-root energies to a separatrix.
    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn turning_points(&self) -> &TurningPoints {
        &self.turning
    }

    pub fn modulus(&self) -> &ModulusPair {
        &self.modulus
    }

    /// κ = √(x₁ − x₃).
    pub fn kappa(&self) -> Complex {
        self.kappa
    }

    /// Amplitude α of the Jacobi form: x₂ − x₃ for sn², x₁ − x₂ for sc².
    pub fn alpha(&self) -> Complex {
        match self.form {
            Form::ScSquared => self.turning.x1 - self.turning.x2,
            Form::SnSquared => self.turning.x2 - self.turning.x3,
            Form::Tanh | Form::Coth => c(1.5, 0.0),
            Form::Constant(_) => c(0.0, 0.0),
        }
    }

    /// Shift γ in x(t) = ℘(t + γ).
    pub fn gamma(&self) -> Complex {
        let hp = self.wp.half_periods();
        match self.form {
            Form::SnSquared | Form::Tanh => hp.omega3,
            Form::ScSquared => hp.omega1,
            Form::Coth | Form::Constant(_) => c(0.0, 0.0),
        }
    }

    /// Position and velocity at complex time τ (before `time_offset`).
    pub fn state_at(&self, method: Method, tau: Complex) -> Result<(Complex, Complex)> {
        let tau = tau + self.time_offset;
        match method {
            Method::Weierstrass => self.state_weierstrass(tau),
            Method::Jacobi => self.state_jacobi(tau),
            Method::Ode => Err(Error::domain("the ODE oracle has no pointwise evaluator")),
        }
    }

    pub fn position(&self, method: Method, t: f64) -> Result<Complex> {
        Ok(self.state_at(method, c(t, 0.0))?.0)
    }

    fn state_weierstrass(&self, tau: Complex) -> Result<(Complex, Complex)> {
        if let Form::Constant(x) = self.form {
            return Ok((c(x, 0.0), c(0.0, 0.0)));
        }
        self.wp.wp_and_prime(tau + self.gamma())
    }

    fn state_jacobi(&self, tau: Complex) -> Result<(Complex, Complex)> {
        let s = SEP_RATE;
        match self.form {
            Form::Constant(x) => Ok((c(x, 0.0), c(0.0, 0.0))),
            Form::Tanh => {
                let th = (s * tau).tanh();
                Ok((-1.0 + 1.5 * th * th, 3.0 * s * th * (1.0 - th * th)))
            }
            Form::Coth => {
                let sh = (s * tau).sinh();
                if sh.norm() < RATIO_POLE_TOL {
                    return Err(Error::pole(tau));
                }
                let ct = (s * tau).cosh() / sh;
                Ok((-1.0 + 1.5 * ct * ct, 3.0 * s * ct * (1.0 - ct * ct)))
            }
            Form::SnSquared => {
                let j = jacobi_sn_cn_dn(self.kappa * tau, self.modulus.m)?;
                let a = self.alpha();
                Ok((
                    self.turning.x3 + a * j.sn * j.sn,
                    2.0 * a * self.kappa * j.sn * j.cn * j.dn,
                ))
            }
            Form::ScSquared => {
                let j = jacobi_sn_cn_dn(self.kappa * tau, self.modulus.m)?;
                if j.cn.norm() < RATIO_POLE_TOL {
                    return Err(Error::pole(tau));
                }
                let a = self.alpha();
                let sc = j.sn / j.cn;
                Ok((
                    self.turning.x1 + a * sc * sc,
                    2.0 * a * self.kappa * sc * j.dn / (j.cn * j.cn),
                ))
            }
        }
    }

    /// Real time at which an unbounded orbit reaches infinity, counted in
    /// this orbit's own time. `None` for bounded orbits and the unbounded
    /// separatrix, which comes in from infinity.
    pub fn escape_time(&self) -> Result<Option<f64>> {
        if self.branch != Branch::Unbounded {
            return Ok(None);
        }
        let t = match self.form {
            // K(m)/κ, the real half-period ω₁.
            Form::ScSquared => (complete_k(self.modulus.m)? / self.kappa).re,
            Form::SnSquared => self.escape_by_bisection()?,
            _ => return Ok(None),
        };
        Ok(Some(t - self.time_offset))
    }

    fn escape_by_bisection(&self) -> Result<f64> {
        // The velocity is positive on (0, T) and negative on (T, 2T).
        let past = |t: f64| match self.state_jacobi(c(t, 0.0)) {
            Ok((_, v)) => v.re <= 0.0,
            Err(Error::Pole { .. }) => true,
            Err(_) => false,
        };
        let mut lo = 0.0;
        let mut hi = 0.05;
        while !past(hi) {
            lo = hi;
            hi *= 2.0;
            if hi > 1e6 {
                return Err(Error::numerical("no escape found for the unbounded orbit"));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if past(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Starting point x(0) and velocity sign for the ODE oracle, when the
    /// orbit begins at a finite turning point.
    fn start(&self) -> Option<f64> {
        if self.time_offset != 0.0 {
            return None;
        }
        match self.form {
            Form::Constant(x) => Some(x),
            Form::Tanh => Some(-1.0),
            Form::Coth => None,
            Form::SnSquared => Some(self.turning.x3.re),
            Form::ScSquared => Some(self.turning.x1.re),
        }
    }

    /// Samples the orbit on `times`.
    pub fn trajectory(&self, method: Method, times: &[f64]) -> Result<Trajectory> {
        if method == Method::Ode {
            return self.ode_trajectory(times);
        }
        let mut positions = Vec::with_capacity(times.len());
        let mut velocities = Vec::with_capacity(times.len());
        for &t in times {
            let (x, v) = self.state_at(method, c(t, 0.0))?;
            positions.push(x);
            velocities.push(v);
        }
        Ok(Trajectory {
            times: times.to_vec(),
            positions,
            velocities,
            method,
            branch: self.branch,
            energy: self.level.energy,
            escape: None,
        })
    }

    fn ode_trajectory(&self, times: &[f64]) -> Result<Trajectory> {
        let first = *times
            .first()
            .ok_or_else(|| Error::domain("empty time grid"))?;
        let mut traj = match self.start() {
            Some(x0) if first >= 0.0 => {
                let mut grid = Vec::with_capacity(times.len() + 1);
                let prepend = first > 0.0;
                if prepend {
                    grid.push(0.0);
                }
                grid.extend_from_slice(times);
                let mut traj = ode_reference(&self.level, x0, 1.0, &grid)?;
                if prepend && !traj.is_empty() {
                    traj.times.remove(0);
                    traj.positions.remove(0);
                    traj.velocities.remove(0);
                }
                traj
            }
            _ => {
                let (x, v) = self.state_jacobi(c(first + self.time_offset, 0.0))?;
                let sign = if v.re < 0.0 { -1.0 } else { 1.0 };
                ode_reference(&self.level, x.re, sign, times)?
            }
        };
        traj.branch = self.branch;
        Ok(traj)
    }
}

/// x(t) = ℘(t + γ; 3, −2E).
pub fn orbit_weierstrass(level: &EnergyLevel, branch: Branch, t: f64) -> Result<Complex> {
    Orbit::new(level, branch)?.position(Method::Weierstrass, t)
}

/// The sn² / sc² Jacobi forms, or the hyperbolic ones at E = ±1/2.
pub fn orbit_jacobi(level: &EnergyLevel, branch: Branch, t: f64) -> Result<Complex> {
    Orbit::new(level, branch)?.position(Method::Jacobi, t)
}

/// Pole-anchored unbounded orbit x₁ + (x₁−x₃) cs²(κt | m), x(0) = ∞.
pub fn orbit_jacobi_cs(level: &EnergyLevel, t: f64) -> Result<Complex> {
    if matches!(level.region, RegionTag::IV | RegionTag::BoundaryHigh) {
        return Err(mismatch(level, Branch::Unbounded));
    }
    let tp = turning_points(level);
    let kappa = principal_sqrt(tp.x1 - tp.x3);
    let j = jacobi_sn_cn_dn(kappa * t, modulus(level).m)?;
    if j.sn.norm() < RATIO_POLE_TOL {
        return Err(Error::pole(c(t, 0.0)));
    }
    let cs = j.cn / j.sn;
    Ok(tp.x1 + (tp.x1 - tp.x3) * cs * cs)
}

/// The E = 1/2 orbits: tanh² from x = −1, coth² from x = ∞.
pub fn separatrix(branch: Branch, t: f64) -> Result<f64> {
    let u = SEP_RATE * t;
    match branch {
        Branch::SeparatrixBounded => {
            let th = u.tanh();
            Ok(-1.0 + 1.5 * th * th)
        }
        Branch::SeparatrixUnbounded => {
            if t == 0.0 {
                return Err(Error::pole(c(0.0, 0.0)));
            }
            let ct = 1.0 / u.tanh();
            Ok(-1.0 + 1.5 * ct * ct)
        }
        _ => Err(Error::domain(format!("{} is not a separatrix branch", branch.name()))),
    }
}

/// T = 2K(m)/√(x₁ − x₃) for |E| < 1/2.
pub fn bounded_period(level: &EnergyLevel) -> Result<f64> {
    if level.energy.abs() >= 0.5 {
        return Err(Error::domain(format!(
            "no finite period for E = {}: bounded motion needs |E| < 1/2",
            level.energy
        )));
    }
    let tp = turning_points(level);
    let m = modulus(level).m.re;
    Ok(2.0 * complete_k_real(m)? / (tp.x1.re - tp.x3.re).sqrt())
}

/// |x_A(t) + x_B(it)| for the pairs (IIᵇ, IIIᵘ), (IIIᵇ, IIᵘ), (IVᵘ, Iᵘ) with
/// E_B = −E_A, evaluated in Jacobi form.
pub fn imaginary_time_check(
    level_a: &EnergyLevel,
    branch_a: Branch,
    level_b: &EnergyLevel,
    branch_b: Branch,
    t: f64,
) -> Result<f64> {
    if (level_a.energy + level_b.energy).abs() > 1e-12 {
        return Err(Error::domain(format!(
            "energies {} and {} are not mirrored",
            level_a.energy, level_b.energy
        )));
    }
    let e = level_a.energy;
    let allowed = match (branch_a, branch_b) {
        (Branch::Bounded, Branch::Unbounded) => e.abs() < 0.5,
        (Branch::Unbounded, Branch::Unbounded) => level_a.region == RegionTag::IV,
        _ => false,
    };
    if !allowed {
        return Err(Error::domain(format!(
            "({} at E = {}, {} at E = {}) is not an imaginary-time pair",
            branch_a.name(),
            level_a.energy,
            branch_b.name(),
            level_b.energy
        )));
    }
    let a = Orbit::new(level_a, branch_a)?;
    let b = Orbit::new(level_b, branch_b)?;
    let xa = a.state_at(Method::Jacobi, c(t, 0.0))?.0;
    let xb = b.state_at(Method::Jacobi, c(0.0, t))?.0;
    Ok((xa + xb).norm())
}
