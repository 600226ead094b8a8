//! CSV and markdown reports behind the `weierkit` command line.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::cubic_orbits::{
    bounded_period, energy_level, modulus, turning_points, velocity_squared, Branch, EnergyLevel, Method, Orbit,
};
use crate::error::{Error, Result};
use crate::weierstrass::{
    adapter_mapping, half_periods, omega1_quadrature, omega3_quadrature, phase_from_invariants, standard_outputs,
    weierstrass_roots, HalfPeriods, Invariants, RegionTag,
};
use crate::Complex;

mod table;

pub use table::{format_float, Cell, CsvTable};

/// Self-check tolerance when `WEIERKIT_TOL` is unset.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Relative bound on |v² − (2E − 3x + 4x³)| for emitted orbit rows.
pub const CLOSURE_TOL: f64 = 1e-8;
pub const DEFAULT_SCAN_STEP: f64 = 0.05;
/// Samples per bounded period (or per default window) in orbit output.
pub const DEFAULT_SAMPLES: usize = 512;
/// Energies shown in the tables: the representative ones plus the boundaries.
pub const TABLE_ENERGIES: [f64; 7] = [-1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0];

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Roots,
    HalfPeriods,
    Orbit,
    PhasePlot,
    Scan,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanQuantity {
    Roots,
    HalfPeriods,
    Modulus,
}

impl std::str::FromStr for ScanQuantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "roots" => Ok(ScanQuantity::Roots),
            "half-periods" => Ok(ScanQuantity::HalfPeriods),
            "modulus" => Ok(ScanQuantity::Modulus),
            _ => Err(usage(format!("unknown scan quantity '{s}' (roots, half-periods, modulus)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    EnergyLevels,
    TurningPoints,
    HalfPeriods,
    Adapter,
}

impl std::str::FromStr for TableId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "energy-levels" => Ok(TableId::EnergyLevels),
            "turning-points" => Ok(TableId::TurningPoints),
            "half-periods" => Ok(TableId::HalfPeriods),
            "adapter" => Ok(TableId::Adapter),
            _ => Err(usage(format!(
                "unknown table '{s}' (energy-levels, turning-points, half-periods, adapter)"
            ))),
        }
    }
}

pub fn parse_branch(s: &str) -> Result<Branch> {
    match s {
        "bounded" => Ok(Branch::Bounded),
        "unbounded" => Ok(Branch::Unbounded),
        "separatrix_bounded" => Ok(Branch::SeparatrixBounded),
        "separatrix_unbounded" => Ok(Branch::SeparatrixUnbounded),
        _ => Err(usage(format!(
            "unknown branch '{s}' (bounded, unbounded, separatrix_bounded, separatrix_unbounded)"
        ))),
    }
}

pub fn parse_method(s: &str) -> Result<Method> {
    match s {
        "weierstrass" => Ok(Method::Weierstrass),
        "jacobi" => Ok(Method::Jacobi),
        "ode" => Ok(Method::Ode),
        _ => Err(usage(format!("unknown method '{s}' (weierstrass, jacobi, ode)"))),
    }
}

/// Reads `WEIERKIT_TOL`; unset means [`DEFAULT_TOL`].
pub fn tolerance_from_env() -> Result<f64> {
    match std::env::var("WEIERKIT_TOL") {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(usage(format!("WEIERKIT_TOL must be a positive number, got '{s}'"))),
        },
    }
}

/// Everything one invocation needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRequest {
    pub command: Command,
    pub g2: f64,
    pub g3: f64,
    pub energy: f64,
    /// `None` in a phase plot means every branch that exists at the energy.
    pub branch: Option<Branch>,
    pub method: Method,
    pub e_min: f64,
    pub e_max: f64,
    pub e_step: f64,
    pub t0: Option<f64>,
    pub t1: Option<f64>,
    pub dt: Option<f64>,
    pub quantity: ScanQuantity,
    pub table: TableId,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub tolerance: f64,
}

impl ReportRequest {
    pub fn new(command: Command) -> Self {
        ReportRequest {
            command,
            g2: 3.0,
            g3: 0.0,
            energy: 0.0,
            branch: None,
            method: Method::Weierstrass,
            e_min: -2.0,
            e_max: 2.0,
            e_step: DEFAULT_SCAN_STEP,
            t0: None,
            t1: None,
            dt: None,
            quantity: ScanQuantity::HalfPeriods,
            table: TableId::HalfPeriods,
            output_path: None,
            format: Format::Csv,
            tolerance: DEFAULT_TOL,
        }
    }
}

/// Dispatches on `request.command`.
pub fn run(request: &ReportRequest) -> Result<CsvTable> {
    match request.command {
        Command::Roots => cmd_roots(request.g2, request.g3),
        Command::HalfPeriods => cmd_half_periods(request.g2, request.g3, request.tolerance),
        Command::Orbit => cmd_orbit(request),
        Command::PhasePlot => cmd_phase_plot(request),
        Command::Scan => cmd_scan(
            request.quantity,
            request.e_min,
            request.e_max,
            request.e_step,
            request.tolerance,
        ),
        Command::Table => cmd_table(request.table),
    }
}

fn complex_header(names: &[&str]) -> Vec<String> {
    names.iter().flat_map(|n| [format!("re_{n}"), format!("im_{n}")]).collect()
}

fn push_complex(row: &mut Vec<Cell>, values: &[Complex]) {
    for z in values {
        row.push(Cell::Num(z.re));
        row.push(Cell::Num(z.im));
    }
}

fn header(lead: &[&str], complex: &[&str], tail: &[&str]) -> Vec<String> {
    let mut h: Vec<String> = lead.iter().map(|s| s.to_string()).collect();
    h.extend(complex_header(complex));
    h.extend(tail.iter().map(|s| s.to_string()));
    h
}

fn invariants(g2: f64, g3: f64) -> Result<Invariants> {
    phase_from_invariants(g2, g3).map_err(|e| match e {
        Error::Domain(msg) => Error::Usage(msg),
        other => other,
    })
}

/// AGM half-periods checked against direct quadrature where a real root
/// anchors the integral.
fn checked_half_periods(inv: &Invariants, tol: f64) -> Result<HalfPeriods> {
    let hp = half_periods(inv)?;
    if inv.region.is_boundary() {
        return Ok(hp);
    }
    let check = |label: &str, agm: Complex, q: Result<Complex>| -> Result<()> {
        let q = q?;
        let rel = (q - agm).norm() / agm.norm();
        if !(rel <= tol) {
            return Err(Error::numerical(format!(
                "{label}: AGM {agm} and quadrature {q} differ by {rel:e} (g2 = {}, g3 = {})",
                inv.g2, inv.g3
            )));
        }
        Ok(())
    };
    if inv.region != RegionTag::IV {
        check("omega1", hp.omega1, omega1_quadrature(inv))?;
    }
    if inv.region != RegionTag::I {
        check("omega3", hp.omega3, omega3_quadrature(inv))?;
    }
    Ok(hp)
}

pub fn cmd_roots(g2: f64, g3: f64) -> Result<CsvTable> {
    let inv = invariants(g2, g3)?;
    let r = weierstrass_roots(&inv);
    let mut table = CsvTable::new(header(&["g2", "g3", "region", "delta"], &["e1", "e2", "e3"], &[]));
    let mut row = vec![
        Cell::Num(g2),
        Cell::Num(g3),
        Cell::Text(inv.region.to_string()),
        Cell::Num(inv.delta),
    ];
    push_complex(&mut row, &r.as_array());
    table.push(row)?;
    Ok(table)
}

pub fn cmd_half_periods(g2: f64, g3: f64, tol: f64) -> Result<CsvTable> {
    let inv = invariants(g2, g3)?;
    let hp = checked_half_periods(&inv, tol)?;
    let mut table = CsvTable::new(header(&["g2", "g3", "region"], &["omega1", "omega3", "omega2"], &[]));
    let mut row = vec![Cell::Num(g2), Cell::Num(g3), Cell::Text(inv.region.to_string())];
    push_complex(&mut row, &[hp.omega1, hp.omega3, hp.omega2]);
    table.push(row)?;
    Ok(table)
}

fn levels(energies: &[f64]) -> Result<Vec<EnergyLevel>> {
    energies.iter().map(|&e| energy_level(e)).collect()
}

/// Tables of energy levels, turning points, half-periods, and the
/// reference-convention adapter, on [`TABLE_ENERGIES`].
pub fn cmd_table(id: TableId) -> Result<CsvTable> {
    let rows = levels(&TABLE_ENERGIES)?;
    let table = match id {
        TableId::EnergyLevels => {
            let mut t = CsvTable::new(header(
                &["E", "region", "sign_g3", "sign_delta", "g3"],
                &["phi"],
                &["psi_or_varphi"],
            ));
            for l in &rows {
                let (s3, sd) = l.region.signs();
                let mut row = vec![
                    Cell::Num(l.energy),
                    Cell::Text(l.region.to_string()),
                    Cell::Text(s3.into()),
                    Cell::Text(sd.into()),
                    Cell::Num(l.g3),
                ];
                push_complex(&mut row, &[l.phi]);
                row.push(Cell::Num(l.psi_or_varphi));
                t.push(row)?;
            }
            t
        }
        TableId::TurningPoints => {
            let mut t = CsvTable::new(header(&["E", "region"], &["x1", "x2", "x3"], &[]));
            for l in &rows {
                let mut row = vec![Cell::Num(l.energy), Cell::Text(l.region.to_string())];
                push_complex(&mut row, &turning_points(l).as_array());
                t.push(row)?;
            }
            t
        }
        TableId::HalfPeriods => {
            let mut t = CsvTable::new(header(&["E", "region"], &["omega1", "omega3", "omega2"], &[]));
            for l in &rows {
                let hp = half_periods(&l.invariants)?;
                let mut row = vec![Cell::Num(l.energy), Cell::Text(l.region.to_string())];
                push_complex(&mut row, &[hp.omega1, hp.omega3, hp.omega2]);
                t.push(row)?;
            }
            t
        }
        TableId::Adapter => {
            let mut t = CsvTable::new(header(
                &["E", "region", "sign_g3", "sign_delta", "mapping"],
                &["omega_a", "omega_b"],
                &[],
            ));
            for l in &rows {
                let hp = half_periods(&l.invariants)?;
                let (a, b) = standard_outputs(&hp, l.region, false);
                let (s3, sd) = l.region.signs();
                let mut row = vec![
                    Cell::Num(l.energy),
                    Cell::Text(l.region.to_string()),
                    Cell::Text(s3.into()),
                    Cell::Text(sd.into()),
                    Cell::Text(adapter_mapping(l.region).into()),
                ];
                push_complex(&mut row, &[a, b]);
                t.push(row)?;
            }
            t
        }
    };
    Ok(table)
}

/// Energies emin + i·step up to emax, each snapped onto a boundary within
/// 1e−12.
pub fn scan_energies(e_min: f64, e_max: f64, e_step: f64) -> Result<Vec<f64>> {
    if !(e_min.is_finite() && e_max.is_finite() && e_step.is_finite()) {
        return Err(usage("scan range must be finite"));
    }
    if !(e_min < e_max) {
        return Err(usage(format!("scan needs emin < emax, got {e_min} and {e_max}")));
    }
    if !(e_step > 0.0) {
        return Err(usage(format!("scan needs step > 0, got {e_step}")));
    }
    let n = ((e_max - e_min) / e_step + 1e-9).floor();
    if n > 1e7 {
        return Err(usage("scan would produce more than 10^7 rows"));
    }
    Ok((0..=n as usize)
        .map(|i| {
            let e = e_min + i as f64 * e_step;
            [-0.5, 0.0, 0.5]
                .into_iter()
                .find(|b| (e - b).abs() <= 1e-12)
                .unwrap_or(e)
        })
        .collect())
}

/// One row per energy with re_/im_ pairs.
pub fn cmd_scan(quantity: ScanQuantity, e_min: f64, e_max: f64, e_step: f64, tol: f64) -> Result<CsvTable> {
    let energies = scan_energies(e_min, e_max, e_step)?;
    let mut table = match quantity {
        ScanQuantity::Roots => CsvTable::new(header(&["E"], &["x1", "x2", "x3"], &[])),
        ScanQuantity::HalfPeriods => CsvTable::new(header(&["E"], &["omega1", "omega3", "omega2"], &[])),
        ScanQuantity::Modulus => CsvTable::new(header(&["E"], &["m", "m_prime"], &["chi"])),
    };
    for e in energies {
        let l = energy_level(e)?;
        let mut row = vec![Cell::Num(l.energy)];
        match quantity {
            ScanQuantity::Roots => {
                let tp = turning_points(&l);
                for x in tp.as_array() {
                    let residual = (4.0 * x * x * x - 3.0 * x + 2.0 * l.energy).norm();
                    if !(residual <= tol * (1.0 + x.norm().powi(3))) {
                        return Err(Error::numerical(format!(
                            "turning point {x} at E = {e} misses the cubic by {residual:e}"
                        )));
                    }
                }
                push_complex(&mut row, &tp.as_array());
            }
            ScanQuantity::HalfPeriods => {
                let hp = checked_half_periods(&l.invariants, tol)?;
                push_complex(&mut row, &[hp.omega1, hp.omega3, hp.omega2]);
            }
            ScanQuantity::Modulus => {
                let mp = modulus(&l);
                push_complex(&mut row, &[mp.m, mp.m_prime]);
                row.push(Cell::Num(mp.chi.unwrap_or(f64::NAN)));
            }
        }
        table.push(row)?;
    }
    Ok(table)
}

fn orbit_for(level: &EnergyLevel, branch: Branch) -> Result<Orbit> {
    Orbit::new(level, branch).map_err(|e| match e {
        Error::Domain(msg) => Error::Usage(format!(
            "{msg}; bounded motion needs |E| < 1/2 and separatrix branches need E = 1/2"
        )),
        other => other,
    })
}

/// Default window: one period for bounded motion, up to 0.9 of the escape
/// time for unbounded motion, and [0.1, 3] on the unbounded separatrix.
fn default_window(orbit: &Orbit) -> Result<(f64, f64)> {
    let level = orbit.level();
    Ok(match orbit.branch() {
        Branch::Bounded => match bounded_period(level) {
            Ok(t) => (0.0, t),
            // Equilibrium: any window; use the small-oscillation period.
            Err(_) => (0.0, 2.0 * std::f64::consts::PI / 6f64.sqrt()),
        },
        Branch::Unbounded => {
            let t = orbit.escape_time()?.expect("unbounded orbit escapes");
            (0.0, 0.9 * t)
        }
        Branch::SeparatrixBounded => (0.0, 3.0),
        Branch::SeparatrixUnbounded => (0.1, 3.0),
    })
}

fn time_grid(orbit: &Orbit, request: &ReportRequest) -> Result<Vec<f64>> {
    let (d0, d1) = default_window(orbit)?;
    let t0 = request.t0.unwrap_or(d0);
    let t1 = request.t1.unwrap_or(d1);
    if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
        return Err(usage(format!("orbit needs t0 < t1, got {t0} and {t1}")));
    }
    let dt = request.dt.unwrap_or((t1 - t0) / DEFAULT_SAMPLES as f64);
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(usage(format!("orbit needs dt > 0, got {dt}")));
    }
    let n = ((t1 - t0) / dt + 1e-9).floor();
    if n > 1e7 {
        return Err(usage("orbit would produce more than 10^7 rows"));
    }
    if let Some(escape) = orbit.escape_time()? {
        let last = t0 + n * dt;
        if t0 <= -escape || last >= escape {
            // The closed form continues periodically past the pole, but the
            // particle has left.
            return Err(Error::pole(Complex::new(escape, 0.0)));
        }
    }
    Ok((0..=n as usize).map(|i| t0 + i as f64 * dt).collect())
}

/// Real (x, v) rows of an orbit, each checked against v² = 2E − 3x + 4x³.
fn sampled_states(level: &EnergyLevel, branch: Branch, request: &ReportRequest) -> Result<(Vec<f64>, Vec<(f64, f64)>)> {
    let orbit = orbit_for(level, branch)?;
    let times = time_grid(&orbit, request)?;
    let traj = orbit.trajectory(request.method, &times)?;
    if let Some(notice) = traj.escape {
        return Err(Error::numerical(format!(
            "trajectory escaped past |x| = 1e6 at t = {}",
            notice.time
        )));
    }
    let mut states = Vec::with_capacity(traj.len());
    for (i, (x, v)) in traj.positions.iter().zip(&traj.velocities).enumerate() {
        let scale = 1.0 + x.norm().powi(3);
        if x.im.abs() > CLOSURE_TOL * scale.cbrt() || v.im.abs() > CLOSURE_TOL * scale {
            return Err(Error::numerical(format!(
                "non-real state x = {x}, v = {v} at t = {}",
                traj.times[i]
            )));
        }
        let closure = (v.re * v.re - velocity_squared(level.energy, x.re)).abs();
        if !(closure <= CLOSURE_TOL * scale) {
            return Err(Error::numerical(format!(
                "v² misses 2E − 3x + 4x³ by {closure:e} at t = {}",
                traj.times[i]
            )));
        }
        states.push((x.re, v.re));
    }
    Ok((traj.times, states))
}

/// Columns t, x, v for one orbit.
pub fn cmd_orbit(request: &ReportRequest) -> Result<CsvTable> {
    let level = energy_level(request.energy).map_err(|e| usage(e.to_string()))?;
    let branch = request
        .branch
        .ok_or_else(|| usage("orbit needs --branch"))?;
    let (times, states) = sampled_states(&level, branch, request)?;
    let mut table = CsvTable::new(vec!["t".into(), "x".into(), "v".into()]);
    for (t, (x, v)) in times.into_iter().zip(states) {
        table.push(vec![Cell::Num(t), Cell::Num(x), Cell::Num(v)])?;
    }
    Ok(table)
}

/// Columns orbit, x, v over every requested orbit. A separatrix request
/// draws both E = 1/2 separatrices; no branch draws all branches at E.
pub fn cmd_phase_plot(request: &ReportRequest) -> Result<CsvTable> {
    let branches: Vec<Branch> = match request.branch {
        Some(Branch::SeparatrixBounded | Branch::SeparatrixUnbounded) => {
            vec![Branch::SeparatrixBounded, Branch::SeparatrixUnbounded]
        }
        Some(b) => vec![b],
        None => vec![Branch::Bounded, Branch::Unbounded],
    };
    let energy = match request.branch {
        Some(Branch::SeparatrixBounded | Branch::SeparatrixUnbounded) => 0.5,
        _ => request.energy,
    };
    let level = energy_level(energy).map_err(|e| usage(e.to_string()))?;
    let mut table = CsvTable::new(vec!["orbit".into(), "x".into(), "v".into()]);
    for b in branches {
        if request.branch.is_none() && Orbit::new(&level, b).is_err() {
            continue;
        }
        let label = orbit_for(&level, b)?.branch().name();
        let (_, states) = sampled_states(&level, b, request)?;
        for (x, v) in states {
            table.push(vec![Cell::Text(label.into()), Cell::Num(x), Cell::Num(v)])?;
        }
    }
    Ok(table)
}

/// Renders in the requested format.
pub fn render(table: &CsvTable, format: Format) -> Result<String> {
    match format {
        Format::Csv => table.to_csv(),
        Format::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "| {} |", table.header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(table.header.len()));
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Cell::render).collect();
                let _ = writeln!(out, "| {} |", cells.join(" | "));
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests;
