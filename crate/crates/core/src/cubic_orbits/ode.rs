//! Brute-force oracle: classic RK4 on ẍ = 6x² − 3/2.

use super::{force, potential, velocity_squared, Branch, EnergyLevel, Method, Trajectory};
use crate::error::{Error, Result};
use crate::weierstrass::RegionTag;
use crate::Complex;

/// Largest RK4 step.
pub const MAX_STEP: f64 = 1e-4;
/// |x| beyond which a run counts as escaped.
pub const ESCAPE_RADIUS: f64 = 1e6;

/// Where and when an integration left the finite region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EscapeNotice {
    pub time: f64,
    pub position: f64,
}

fn rk4_step(x: f64, v: f64, h: f64) -> (f64, f64) {
    let k1x = v;
    let k1v = force(x);
    let k2x = v + 0.5 * h * k1v;
    let k2v = force(x + 0.5 * h * k1x);
    let k3x = v + 0.5 * h * k2v;
    let k3v = force(x + 0.5 * h * k2x);
    let k4x = v + h * k3v;
    let k4v = force(x + h * k3x);
    (
        x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    )
}

fn infer_branch(level: &EnergyLevel, x0: f64) -> Branch {
    match level.region {
        RegionTag::BoundaryHigh => {
            if x0 < 0.5 {
                Branch::SeparatrixBounded
            } else {
                Branch::SeparatrixUnbounded
            }
        }
        RegionTag::I | RegionTag::IV => Branch::Unbounded,
        _ => {
            let x2 = super::turning_points(level).x2.re;
            if x0 <= x2 + 1e-9 {
                Branch::Bounded
            } else {
                Branch::Unbounded
            }
        }
    }
}

/// Integrates from (t_grid[0], x0) with initial velocity
/// v_sign·√(2E − 2V(x0)) and samples on the grid.
pub fn ode_reference(level: &EnergyLevel, x0: f64, v_sign: f64, t_grid: &[f64]) -> Result<Trajectory> {
    if t_grid.is_empty() {
        return Err(Error::domain("empty time grid"));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) || t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::domain("time grid must be finite and strictly increasing"));
    }
    let e = level.energy;
    let vsq = velocity_squared(e, x0);
    if !x0.is_finite() || vsq < -1e-12 * (1.0 + x0.abs().powi(3)) {
        return Err(Error::domain(format!(
            "x0 = {x0} is not reachable at E = {e} (2E − 2V = {vsq})"
        )));
    }
    let branch = infer_branch(level, x0);
    let mut x = x0;
    let mut v = v_sign.signum() * vsq.max(0.0).sqrt();
    if v_sign == 0.0 {
        v = 0.0;
    }
    let equilibrium = level.region == RegionTag::BoundaryLow && (x0 + 0.5).abs() < 1e-12;

    let mut times = vec![t_grid[0]];
    let mut positions = vec![Complex::new(x, 0.0)];
    let mut velocities = vec![Complex::new(v, 0.0)];
    let mut escape = None;
    'grid: for w in t_grid.windows(2) {
        if !equilibrium {
            let span = w[1] - w[0];
            let n = (span / MAX_STEP).ceil().max(1.0) as usize;
            let h = span / n as f64;
            for i in 0..n {
                let (nx, nv) = rk4_step(x, v, h);
                if !nx.is_finite() || nx.abs() > ESCAPE_RADIUS {
                    escape = Some(EscapeNotice {
                        time: w[0] + (i + 1) as f64 * h,
                        position: nx,
                    });
                    break 'grid;
                }
                x = nx;
                v = nv;
            }
        }
        times.push(w[1]);
        positions.push(Complex::new(x, 0.0));
        velocities.push(Complex::new(v, 0.0));
    }
    Ok(Trajectory {
        times,
        positions,
        velocities,
        method: Method::Ode,
        branch,
        energy: e,
        escape,
    })
}

/// Largest |v²/2 + V(x) − E| along a real trajectory.
pub fn energy_drift(traj: &Trajectory) -> f64 {
    traj.positions
        .iter()
        .zip(&traj.velocities)
        .map(|(x, v)| (0.5 * v.re * v.re + potential(x.re) - traj.energy).abs())
        .fold(0.0, f64::max)
}
