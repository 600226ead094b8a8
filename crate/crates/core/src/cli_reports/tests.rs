use super::*;

fn num(t: &CsvTable, row: usize, col: &str) -> f64 {
    t.rows[row][t.column(col).unwrap()].as_f64().unwrap()
}

fn text(t: &CsvTable, row: usize, col: &str) -> String {
    t.rows[row][t.column(col).unwrap()].render()
}

fn row_of(t: &CsvTable, e: f64) -> usize {
    (0..t.rows.len()).find(|&i| num(t, i, "E") == e).unwrap()
}

#[test]
fn float_format() {
    assert_eq!(format_float(f64::NAN), "nan");
    assert_eq!(format_float(f64::INFINITY), "inf");
    assert_eq!(format_float(f64::NEG_INFINITY), "-inf");
    for x in [0.1, -1.0 / 3.0, 1e-300, 6.02e23, std::f64::consts::PI] {
        assert_eq!(format_float(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
    }
}

#[test]
fn half_period_table() {
    let t = cmd_table(TableId::HalfPeriods).unwrap();
    let r = row_of(&t, 0.0);
    assert!((num(&t, r, "re_omega1") - 1.408_792_103_676_543).abs() < 1e-12);
    assert!((num(&t, r, "im_omega3") - 1.408_792_103_676_543).abs() < 1e-12);
    assert_eq!(t.rows.len(), 7);
}

#[test]
fn turning_point_table() {
    let t = cmd_table(TableId::TurningPoints).unwrap();
    let r = row_of(&t, -0.5);
    assert!((num(&t, r, "re_x1") - 1.0).abs() < 1e-15);
    assert!((num(&t, r, "re_x2") + 0.5).abs() < 1e-15);
    assert!((num(&t, r, "re_x3") + 0.5).abs() < 1e-15);
}

#[test]
fn adapter_table() {
    let t = cmd_table(TableId::Adapter).unwrap();
    let r = row_of(&t, 0.25);
    assert_eq!(text(&t, r, "region"), "III");
    assert_eq!(text(&t, r, "mapping"), "ω₃ = ω_a, ω₁ = ω_b");
    let back = CsvTable::from_csv(&t.to_csv().unwrap()).unwrap();
    assert_eq!(text(&back, r, "mapping"), "ω₃ = ω_a, ω₁ = ω_b");
    assert!(cmd_table(TableId::EnergyLevels).is_ok());
    assert!(matches!("fig9".parse::<TableId>(), Err(Error::Usage(_))));
}

#[test]
fn scan_half_periods() {
    let t = cmd_scan(ScanQuantity::HalfPeriods, -2.0, 2.0, 0.05, DEFAULT_TOL).unwrap();
    assert_eq!(t.rows.len(), 81);
    assert_eq!(
        t.header.join(","),
        "E,re_omega1,im_omega1,re_omega3,im_omega3,re_omega2,im_omega2"
    );
    assert_eq!(num(&t, 30, "E"), -0.5);
    assert_eq!(num(&t, 40, "E"), 0.0);
    assert!(num(&t, 30, "im_omega3").is_infinite());
    assert!(num(&t, 50, "re_omega1").is_infinite());
    // ω₁ is continuous on E < 0 away from the −1/2 boundary.
    for i in 1..30 {
        let (a, b) = (num(&t, i - 1, "re_omega1"), num(&t, i, "re_omega1"));
        assert!((a - b).abs() < 0.05, "{i}");
    }
}

#[test]
fn scan_roots_and_modulus() {
    let t = cmd_scan(ScanQuantity::Roots, -2.0, 2.0, 0.05, DEFAULT_TOL).unwrap();
    let r = row_of(&t, -1.0);
    assert!((num(&t, r, "re_x1") - 1.097_911_672_722_823_6).abs() < 1e-14);
    assert_eq!(num(&t, r, "re_x2"), num(&t, r, "re_x3"));
    assert_eq!(num(&t, r, "im_x2"), -num(&t, r, "im_x3"));
    let t = cmd_scan(ScanQuantity::Modulus, -1.0, 1.0, 0.25, DEFAULT_TOL).unwrap();
    assert_eq!(num(&t, row_of(&t, 0.0), "re_m"), 0.5);
    assert!(num(&t, row_of(&t, 0.0), "chi").is_nan());
}

#[test]
fn scan_rejects_bad_ranges() {
    for (a, b, s) in [(1.0, -1.0, 0.1), (0.0, 1.0, 0.0), (0.0, 1.0, -0.1), (0.0, f64::NAN, 0.1)] {
        assert!(matches!(cmd_scan(ScanQuantity::Roots, a, b, s, DEFAULT_TOL), Err(Error::Usage(_))));
    }
}

#[test]
fn tight_tolerance_fails_the_self_check() {
    let r = cmd_scan(ScanQuantity::HalfPeriods, -0.3, -0.2, 0.1, 1e-30);
    assert!(matches!(r, Err(Error::NumericalFailure(_))));
}

fn orbit_request(e: f64, branch: Branch, method: Method) -> ReportRequest {
    let mut r = ReportRequest::new(Command::Orbit);
    r.energy = e;
    r.branch = Some(branch);
    r.method = method;
    r
}

#[test]
fn orbit_spans_turning_points() {
    let t = cmd_orbit(&orbit_request(-0.25, Branch::Bounded, Method::Weierstrass)).unwrap();
    let xs: Vec<f64> = (0..t.rows.len()).map(|i| num(&t, i, "x")).collect();
    let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!((lo + 0.766_044_443_118_978).abs() < 1e-6);
    assert!((hi + 0.173_648_177_666_930_3).abs() < 1e-4);
    assert_eq!(t.rows.len(), DEFAULT_SAMPLES + 1);
}

#[test]
fn orbit_at_equilibrium() {
    let t = cmd_orbit(&orbit_request(-0.5, Branch::Bounded, Method::Jacobi)).unwrap();
    for i in 0..t.rows.len() {
        assert_eq!(num(&t, i, "x"), -0.5);
        assert_eq!(num(&t, i, "v"), 0.0);
    }
}

#[test]
fn orbit_closure_every_method() {
    for m in [Method::Weierstrass, Method::Jacobi, Method::Ode] {
        for (e, b) in [(-1.0, Branch::Unbounded), (0.3, Branch::Bounded), (1.2, Branch::Unbounded)] {
            let t = cmd_orbit(&orbit_request(e, b, m)).unwrap();
            for i in 0..t.rows.len() {
                let (x, v) = (num(&t, i, "x"), num(&t, i, "v"));
                assert!((v * v - (2.0 * e - 3.0 * x + 4.0 * x * x * x)).abs() <= 1e-8 * (1.0 + x.abs().powi(3)));
            }
        }
    }
}

#[test]
fn orbit_branch_mismatch_is_usage() {
    let r = cmd_orbit(&orbit_request(1.0, Branch::Bounded, Method::Weierstrass));
    assert!(matches!(r, Err(Error::Usage(_))));
    let mut req = orbit_request(0.1, Branch::Bounded, Method::Weierstrass);
    req.t0 = Some(1.0);
    req.t1 = Some(0.5);
    assert!(matches!(cmd_orbit(&req), Err(Error::Usage(_))));
}

#[test]
fn orbit_past_escape_fails() {
    let mut req = orbit_request(0.25, Branch::Unbounded, Method::Weierstrass);
    req.t1 = Some(5.0);
    req.dt = Some(0.01);
    assert!(matches!(cmd_orbit(&req), Err(Error::Pole { .. })));
}

#[test]
fn separatrix_phase_plot() {
    let mut req = ReportRequest::new(Command::PhasePlot);
    req.branch = Some(Branch::SeparatrixBounded);
    let t = cmd_phase_plot(&req).unwrap();
    let first = 0;
    assert_eq!(text(&t, first, "orbit"), "separatrix_bounded");
    assert_eq!(num(&t, first, "x"), -1.0);
    assert_eq!(num(&t, first, "v"), 0.0);
    let last_bounded = (0..t.rows.len()).filter(|&i| text(&t, i, "orbit") == "separatrix_bounded").last().unwrap();
    assert!((num(&t, last_bounded, "x") - 0.5).abs() < 1e-2);
    assert!((0..t.rows.len()).any(|i| text(&t, i, "orbit") == "separatrix_unbounded"));
}

#[test]
fn phase_plot_all_branches() {
    let mut req = ReportRequest::new(Command::PhasePlot);
    req.energy = -0.1;
    let t = cmd_phase_plot(&req).unwrap();
    let labels: std::collections::BTreeSet<String> = (0..t.rows.len()).map(|i| text(&t, i, "orbit")).collect();
    assert_eq!(labels.len(), 2);
    req.energy = 1.0;
    let t = cmd_phase_plot(&req).unwrap();
    assert!((0..t.rows.len()).all(|i| text(&t, i, "orbit") == "unbounded"));
}

#[test]
fn csv_round_trip_is_exact() {
    let t = cmd_scan(ScanQuantity::HalfPeriods, -2.0, 2.0, 0.05, DEFAULT_TOL).unwrap();
    let back = CsvTable::from_csv(&t.to_csv().unwrap()).unwrap();
    assert_eq!(back.header, t.header);
    for (a, b) in t.rows.iter().zip(&back.rows) {
        for (x, y) in a.iter().zip(b) {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            assert!(x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()));
        }
    }
}

#[test]
fn markdown_render() {
    let t = cmd_roots(3.0, 1.0).unwrap();
    let md = render(&t, Format::Markdown).unwrap();
    assert!(md.starts_with("| g2 | g3 | region |"));
    assert_eq!(md.lines().count(), 3);
}

#[test]
fn single_shot_commands() {
    let t = cmd_roots(3.0, 0.0).unwrap();
    assert_eq!(text(&t, 0, "region"), "II/III");
    let t = cmd_half_periods(3.0, 1.0, DEFAULT_TOL).unwrap();
    assert!((num(&t, 0, "re_omega1") - std::f64::consts::PI / 6f64.sqrt()).abs() < 1e-15);
    assert!(matches!(cmd_roots(-1.0, 0.0), Err(Error::Usage(_))));
}
