//! One PASS/FAIL line per acceptance criterion.

use std::f64::consts::PI;
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use weierkit::cubic_orbits::{
    bounded_period, chi_from_psi, energy_level, imaginary_time_check, modulus, separatrix, Branch, Method, Orbit,
};
use weierkit::elliptic_core::{complete_k_real, jacobi_sn_cn_dn, principal_sqrt};
use weierkit::weierstrass::{
    adapt_standard_halfperiods, half_periods, omega1_quadrature, omega3_quadrature, phase_from_invariants, standard_outputs, weierstrass_roots, wp,
    Invariants, RegionTag, Weierstrass,
};
use weierkit::Complex;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn inv(g2: f64, g3: f64) -> Invariants {
    phase_from_invariants(g2, g3).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn crit1() -> Outcome {
    let a = (half_periods(&inv(3.0, 1.0)).unwrap().omega1 - PI / 6f64.sqrt()).norm();
    let w0 = complete_k_real(0.5).unwrap() / 3f64.powf(0.25);
    let b = (half_periods(&inv(3.0, 0.0)).unwrap().omega1 - w0).norm();
    let d = (half_periods(&inv(3.0, -1.0)).unwrap().omega3 - c(0.0, -PI / 6f64.sqrt())).norm();
    // The same three values by direct quadrature of dw/√P(w).
    let qa = (omega1_quadrature(&inv(3.0, 1.0)).unwrap() - PI / 6f64.sqrt()).norm();
    let qb = (omega1_quadrature(&inv(3.0, 0.0)).unwrap() - w0).norm();
    let qd = (omega3_quadrature(&inv(3.0, -1.0)).unwrap() - c(0.0, -PI / 6f64.sqrt())).norm();
    let worst = a.max(b).max(d).max(qa).max(qb).max(qd);
    outcome(
        worst <= 1e-10,
        format!("errors {a:.1e}, {b:.1e}, {d:.1e}; by quadrature {qa:.1e}, {qb:.1e}, {qd:.1e} (tol 1e-10)"),
    )
}

fn crit2() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut regions = std::collections::BTreeSet::new();
    let mut failures = 0;
    for i in 0..40 {
        let e = -1.975 + 0.1 * i as f64;
        let w = Weierstrass::new(3.0, -2.0 * e).unwrap();
        regions.insert(w.invariants().region.to_string());
        let hp = *w.half_periods();
        let r = *w.roots();
        for (om, root) in [(hp.omega1, r.e1), (hp.omega2, r.e2), (hp.omega3, r.e3)] {
            match w.wp(om) {
                Ok(v) => worst = worst.max((v - root).norm()),
                Err(_) => failures += 1,
            }
        }
    }
    outcome(
        worst <= 1e-8 && failures == 0 && regions.len() == 4,
        format!(
            "max |℘(ω_k) − e_k| = {worst:.1e} over 40 energies in regions {:?} (tol 1e-8)",
            regions
        ),
    )
}

fn crit3(rng: &mut StdRng) -> Outcome {
    let ranges = [(1.05, 3.0), (0.05, 0.95), (-0.95, -0.05), (-3.0, -1.05)];
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for (lo, hi) in ranges {
        for _ in 0..200 {
            let g3 = rng.gen_range(lo..hi);
            let w = Weierstrass::new(3.0, g3).unwrap();
            let hp = *w.half_periods();
            let z = rng.gen_range(0.05..0.95) * 2.0 * hp.omega1 + rng.gen_range(0.05..0.95) * 2.0 * hp.omega3;
            match w.wp_and_prime(z) {
                Ok((p, dp)) => {
                    let res = (dp * dp - 4.0 * p * p * p + 3.0 * p + g3).norm();
                    worst = worst.max(res / (1.0 + p.norm().powi(3)));
                }
                Err(_) => failures += 1,
            }
        }
    }
    outcome(
        worst < 1e-8 && failures == 0,
        format!("max scaled residual {worst:.1e} over 4 × 200 points (tol 1e-8)"),
    )
}

/// ℘(z) = e₃ + (e₁ − e₃) / sn²(√(e₁ − e₃) z | m), an evaluation route
/// that shares nothing with the Laurent series for real m.
fn wp_via_jacobi(z: Complex, inv: &Invariants) -> Complex {
    let r = weierstrass_roots(inv);
    let d = r.e1 - r.e3;
    let sn = jacobi_sn_cn_dn(principal_sqrt(d) * z, (r.e2 - r.e3) / d).unwrap().sn;
    r.e3 + d / (sn * sn)
}

fn crit4(rng: &mut StdRng) -> Outcome {
    let mut inversion: f64 = 0.0;
    for _ in 0..50 {
        let g3 = -rng.gen_range(0.05..3.0);
        let z = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let a = wp(z, &inv(3.0, g3)).unwrap();
        let scale = 1.0 + a.norm();
        let b = wp(c(0.0, 1.0) * z, &inv(3.0, g3.abs())).unwrap();
        let b_jacobi = wp_via_jacobi(c(0.0, 1.0) * z, &inv(3.0, g3.abs()));
        inversion = inversion.max((a + b).norm() / scale).max((a + b_jacobi).norm() / scale);
    }
    let mut roots: f64 = 0.0;
    let mut periods: f64 = 0.0;
    for g3 in [0.05, 0.3, 0.7, 0.95, 1.05, 1.5, 2.5, 4.0] {
        let p = weierstrass_roots(&inv(3.0, g3));
        let m = weierstrass_roots(&inv(3.0, -g3));
        roots = roots
            .max((m.e3 + p.e1).norm())
            .max((m.e2 + p.e2).norm())
            .max((m.e1 + p.e3).norm());
        let hp = half_periods(&inv(3.0, g3)).unwrap();
        let hm = half_periods(&inv(3.0, -g3)).unwrap();
        periods = periods
            .max((hm.omega3 - c(0.0, -1.0) * hp.omega1).norm())
            .max((hm.omega1 - c(0.0, -1.0) * hp.omega3).norm());
        // The same relation between integrals computed by quadrature alone.
        let q_minus = omega3_quadrature(&inv(3.0, -g3)).unwrap();
        let q_plus = omega1_quadrature(&inv(3.0, g3)).unwrap();
        periods = periods.max((q_minus - c(0.0, -1.0) * q_plus).norm());
    }
    outcome(
        inversion <= 1e-9 && roots <= 1e-12 && periods <= 1e-9,
        format!("℘ inversion {inversion:.1e} (1e-9), roots {roots:.1e} (1e-12), half-periods {periods:.1e} (1e-9)"),
    )
}

fn crit5() -> Outcome {
    let low = bounded_period(&energy_level(-0.5 + 1e-4).unwrap()).unwrap();
    let mid = bounded_period(&energy_level(0.0).unwrap()).unwrap();
    let high = bounded_period(&energy_level(0.5 - 1e-4).unwrap()).unwrap();
    let target = 2.0 * complete_k_real(0.5).unwrap() / 3f64.powf(0.25);
    let a = (low - 2.0 * PI / 6f64.sqrt()).abs();
    let b = (mid - target).abs();
    outcome(
        a <= 1e-3 && b <= 1e-9 && high > 5.0,
        format!("T(−1/2+1e-4) off by {a:.1e}, T(0) off by {b:.1e}, T(1/2−1e-4) = {high:.3}"),
    )
}

fn crit6() -> Outcome {
    let grid = [-1.5, -1.0, -0.75, -0.4, -0.25, -0.1, 0.1, 0.25, 0.4, 0.75, 1.0, 1.5];
    let mut closed: f64 = 0.0;
    let mut oracle: f64 = 0.0;
    let mut cases = 0;
    let mut errors = Vec::new();
    for e in grid {
        let level = energy_level(e).unwrap();
        for branch in [Branch::Bounded, Branch::Unbounded] {
            let Ok(orbit) = Orbit::new(&level, branch) else { continue };
            let (t0, t1) = match orbit.escape_time().unwrap() {
                Some(t) => (0.1, 0.9 * t),
                None => (0.0, bounded_period(&level).unwrap().min(3.0)),
            };
            let times: Vec<f64> = (0..50).map(|i| t0 + (t1 - t0) * i as f64 / 49.0).collect();
            let run = |m| orbit.trajectory(m, &times);
            match (run(Method::Weierstrass), run(Method::Jacobi), run(Method::Ode)) {
                (Ok(w), Ok(j), Ok(o)) if o.len() == times.len() => {
                    for i in 0..times.len() {
                        closed = closed.max((w.positions[i] - j.positions[i]).norm());
                        oracle = oracle
                            .max((w.positions[i] - o.positions[i]).norm())
                            .max((j.positions[i] - o.positions[i]).norm());
                    }
                    cases += 1;
                }
                _ => errors.push(format!("E={e} {branch:?}")),
            }
        }
    }
    outcome(
        closed < 1e-7 && oracle < 1e-5 && errors.is_empty() && cases == 18,
        format!(
            "{cases} orbits: |℘ − Jacobi| ≤ {closed:.1e} (1e-7), |closed − RK4| ≤ {oracle:.1e} (1e-5){}",
            if errors.is_empty() { String::new() } else { format!(", failed: {errors:?}") }
        ),
    )
}

fn crit7() -> Outcome {
    let pairs = [
        (-0.4, Branch::Bounded),
        (-0.25, Branch::Bounded),
        (-0.1, Branch::Bounded),
        (0.1, Branch::Bounded),
        (0.25, Branch::Bounded),
        (0.4, Branch::Bounded),
        (0.75, Branch::Unbounded),
        (1.0, Branch::Unbounded),
        (1.5, Branch::Unbounded),
    ];
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for (e, branch_a) in pairs {
        let a = energy_level(e).unwrap();
        let b = energy_level(-e).unwrap();
        for i in 0..10 {
            let t = 0.05 + 0.05 * i as f64;
            match imaginary_time_check(&a, branch_a, &b, Branch::Unbounded, t) {
                Ok(r) => worst = worst.max(r),
                Err(_) => failures += 1,
            }
        }
    }
    outcome(
        worst < 1e-8 && failures == 0,
        format!("max |x_A(t) + x_B(it)| = {worst:.1e} over 9 pairs × 10 times (tol 1e-8)"),
    )
}

fn crit8() -> Outcome {
    let a = separatrix(Branch::SeparatrixBounded, 0.0).unwrap();
    let b = (separatrix(Branch::SeparatrixBounded, 10.0).unwrap() - 0.5).abs();
    let d = (separatrix(Branch::SeparatrixUnbounded, 10.0).unwrap() - 0.5).abs();
    outcome(
        a == -1.0 && b < 1e-8 && d < 1e-8,
        format!("x_b(0) = {a}, |x_b(10) − 1/2| = {b:.1e}, |x_u(10) − 1/2| = {d:.1e}"),
    )
}

fn crit9() -> Outcome {
    let m0 = (modulus(&energy_level(0.0).unwrap()).m - 0.5).norm();
    let mh = modulus(&energy_level(-0.5).unwrap()).m.norm();
    let chi = (chi_from_psi(50.0) - PI / 3.0).abs();
    outcome(
        m0 <= 1e-12 && mh <= 1e-12 && chi <= 1e-6,
        format!("|m(0) − 1/2| = {m0:.1e}, |m(−1/2)| = {mh:.1e}, |χ(50) − π/3| = {chi:.1e}"),
    )
}

fn crit10() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut sum: f64 = 0.0;
    let mut regions = std::collections::HashSet::new();
    let mut failures = 0;
    for e in [-1.5, -1.0, -0.75, -0.25, -0.1, 0.1, 0.25, 0.75, 1.0, 1.5] {
        let level = energy_level(e).unwrap();
        let hp = half_periods(&level.invariants).unwrap();
        for flipped in [false, true] {
            let (a, b) = standard_outputs(&hp, level.region, flipped);
            match adapt_standard_halfperiods(a, b, &level.invariants) {
                Ok(out) => {
                    worst = worst
                        .max((out.omega1 - hp.omega1).norm())
                        .max((out.omega3 - hp.omega3).norm())
                        .max((out.omega2 - hp.omega2).norm());
                    sum = sum.max((out.omega2 - out.omega1 - out.omega3).norm());
                    regions.insert(level.region);
                }
                Err(_) => failures += 1,
            }
        }
    }
    let all = [RegionTag::I, RegionTag::II, RegionTag::III, RegionTag::IV];
    outcome(
        worst <= 1e-10 && sum <= 1e-15 && failures == 0 && all.iter().all(|r| regions.contains(r)),
        format!("max recovery error {worst:.1e} (1e-10), |ω₂ − ω₁ − ω₃| ≤ {sum:.1e}, 20 inputs over I–IV"),
    )
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_weierkit"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn parse(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().map_err(|e| e.to_string())?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        if rec.len() != header.len() {
            return Err("ragged row".into());
        }
        rows.push(rec.iter().map(|f| f.parse::<f64>().map_err(|e| format!("{f}: {e}"))).collect::<Result<_, _>>()?);
    }
    Ok((header, rows))
}

fn crit11() -> Outcome {
    let scan = run_cli(&["scan", "half-periods", "--emin", "-2", "--emax", "2", "--step", "0.05"])
        .and_then(|t| parse(&t));
    let scan_ok = match &scan {
        Ok((h, rows)) => {
            h.join(",") == "E,re_omega1,im_omega1,re_omega3,im_omega3,re_omega2,im_omega2" && rows.len() == 81
        }
        Err(_) => false,
    };
    let orbits: [&[&str]; 5] = [
        &["orbit", "--energy", "-0.25", "--branch", "bounded"],
        &["orbit", "--energy", "0.3", "--branch", "unbounded", "--method", "jacobi"],
        &["orbit", "--energy", "-1", "--branch", "unbounded", "--method", "ode"],
        &["orbit", "--energy", "1", "--branch", "unbounded"],
        &["orbit", "--energy", "0.5", "--branch", "separatrix_unbounded"],
    ];
    let mut worst: f64 = 0.0;
    let mut rows_checked = 0;
    let mut problems = Vec::new();
    for args in orbits {
        let energy: f64 = args[2].parse().unwrap();
        match run_cli(args).and_then(|t| parse(&t)) {
            Ok((h, rows)) if h == ["t", "x", "v"] => {
                for r in rows {
                    let (x, v) = (r[1], r[2]);
                    let res = (v * v - (2.0 * energy - 3.0 * x + 4.0 * x * x * x)).abs();
                    worst = worst.max(res / (1.0 + x.abs().powi(3)));
                    rows_checked += 1;
                }
            }
            Ok(_) => problems.push(format!("{args:?}: bad header")),
            Err(e) => problems.push(e),
        }
    }
    outcome(
        scan_ok && problems.is_empty() && worst <= 1e-8,
        format!(
            "scan: {} rows, header ok = {scan_ok}; orbit: max |v² − P(x)|/(1+|x|³) = {worst:.1e} over {rows_checked} rows{}",
            scan.as_ref().map(|s| s.1.len()).unwrap_or(0),
            if problems.is_empty() { String::new() } else { format!(", errors: {problems:?}") }
        ),
    )
}

fn main() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let results = [
        ("degenerate half-periods", crit1()),
        ("℘(ω_k) = e_k", crit2()),
        ("℘ differential equation", crit3(&mut rng)),
        ("inversion identities", crit4(&mut rng)),
        ("period limits", crit5()),
        ("orbit equivalence", crit6()),
        ("imaginary-time relations", crit7()),
        ("separatrix anchors", crit8()),
        ("modulus checks", crit9()),
        ("convention adapter", crit10()),
        ("CLI conformance", crit11()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "criterion {:>2} {:<26} {}  {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {} failed", results.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
