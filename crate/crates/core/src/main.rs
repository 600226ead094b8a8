use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weierkit::cli_reports::{
    parse_branch, parse_method, render, run, tolerance_from_env, Command, Format, ReportRequest,
};
use weierkit::Error;

#[derive(Parser)]
#[command(name = "weierkit", version, about = "Weierstrass ℘ half-periods and cubic-potential orbits")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Roots e₁, e₂, e₃ of 4w³ − g₂w − g₃
    Roots(Invariants),
    /// Half-periods ω₁, ω₃, ω₂ = ω₁ + ω₃
    HalfPeriods(Invariants),
    /// Samples t, x, v along one orbit
    Orbit(OrbitArgs),
    /// Samples x, v along the orbits at one energy
    PhasePlot(OrbitArgs),
    /// One row per energy on a grid
    Scan(ScanArgs),
    /// energy-levels, turning-points, half-periods or adapter
    Table(TableArgs),
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Defaults to standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

#[derive(Args)]
struct Invariants {
    #[arg(long, allow_hyphen_values = true)]
    g2: f64,
    #[arg(long, allow_hyphen_values = true)]
    g3: f64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    energy: f64,
    /// bounded, unbounded, separatrix_bounded, separatrix_unbounded
    #[arg(long)]
    branch: Option<String>,
    /// weierstrass, jacobi, ode
    #[arg(long, default_value = "weierstrass")]
    method: String,
    #[arg(long, allow_hyphen_values = true)]
    t0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    dt: Option<f64>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ScanArgs {
    /// roots, half-periods, modulus
    quantity: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = -2.0)]
    emin: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
    emax: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.05)]
    step: f64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct TableArgs {
    id: String,
    #[command(flatten)]
    out: Output,
}

fn apply_output(req: &mut ReportRequest, out: Output) {
    req.format = match out.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Markdown => Format::Markdown,
    };
    req.output_path = out.output;
}

fn orbit_request(command: Command, a: OrbitArgs) -> Result<ReportRequest, Error> {
    let mut req = ReportRequest::new(command);
    req.energy = a.energy;
    req.branch = a.branch.as_deref().map(parse_branch).transpose()?;
    req.method = parse_method(&a.method)?;
    req.t0 = a.t0;
    req.t1 = a.t1;
    req.dt = a.dt;
    apply_output(&mut req, a.out);
    Ok(req)
}

fn build(cli: Cli) -> Result<ReportRequest, Error> {
    let mut req = match cli.command {
        Cmd::Roots(a) => {
            let mut r = ReportRequest::new(Command::Roots);
            (r.g2, r.g3) = (a.g2, a.g3);
            apply_output(&mut r, a.out);
            r
        }
        Cmd::HalfPeriods(a) => {
            let mut r = ReportRequest::new(Command::HalfPeriods);
            (r.g2, r.g3) = (a.g2, a.g3);
            apply_output(&mut r, a.out);
            r
        }
        Cmd::Orbit(a) => orbit_request(Command::Orbit, a)?,
        Cmd::PhasePlot(a) => orbit_request(Command::PhasePlot, a)?,
        Cmd::Scan(a) => {
            let mut r = ReportRequest::new(Command::Scan);
            r.quantity = a.quantity.parse()?;
            (r.e_min, r.e_max, r.e_step) = (a.emin, a.emax, a.step);
            apply_output(&mut r, a.out);
            r
        }
        Cmd::Table(a) => {
            let mut r = ReportRequest::new(Command::Table);
            r.table = a.id.parse()?;
            apply_output(&mut r, a.out);
            r
        }
    };
    req.tolerance = tolerance_from_env()?;
    Ok(req)
}

fn execute(cli: Cli) -> Result<(), Error> {
    let req = build(cli)?;
    let text = render(&run(&req)?, req.format)?;
    let written = match &req.output_path {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    written.map_err(|e| Error::Usage(format!("cannot write output: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("weierkit: {e}");
            match e {
                Error::Usage(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
