//! Arithmetic–geometric mean, the complete elliptic integral K(m), and the
//! Jacobi elliptic functions sn, cn, dn (plus the ratios sc, cs).
//!
//! Everything here uses the *parameter* convention m = k². For real
//! m ∈ [0, 1] the Jacobi functions come from descending Landen
//! transformations; complex arguments are assembled from real ones with
//! the imaginary-argument addition formulas. Any other m is routed
//! through ℘ of the cubic whose root cross-ratio is m.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::weierstrass::series::{is_finite, Lattice, WpSeries};
use crate::Complex;

const AGM_MAX_ITER: usize = 64;
const AGM_TOL: f64 = 1e-15;
const LANDEN_MAX_DEPTH: usize = 32;
const LANDEN_TOL: f64 = 1e-15;

/// Threshold on |sn| or |cn| below which a ratio is reported as a pole.
pub const RATIO_POLE_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Principal square root with the tie rule Re > 0, or Re = 0 and Im ≥ 0.
pub fn principal_sqrt(z: Complex) -> Complex {
    let s = z.sqrt();
    if s.re < 0.0 || (s.re == 0.0 && s.im < 0.0) {
        -s
    } else {
        s
    }
}

/// Arithmetic–geometric mean of two nonzero complex numbers.
pub fn agm(a: Complex, b: Complex) -> Result<Complex> {
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(Error::domain("agm of zero"));
    }
    if !is_finite(a) || !is_finite(b) {
        return Err(Error::domain("agm of non-finite value"));
    }
    let (mut a, mut b) = (a, b);
    for _ in 0..AGM_MAX_ITER {
        if (a - b).norm() <= AGM_TOL * a.norm().max(b.norm()) {
            return Ok((a + b) * 0.5);
        }
        let next_a = (a + b) * 0.5;
        let next_b = principal_sqrt(a * b);
        a = next_a;
        b = next_b;
    }
    Err(Error::numerical(format!(
        "agm did not converge in {AGM_MAX_ITER} iterations"
    )))
}

/// Complete elliptic integral of the first kind, K(m) = π / (2·agm(1, √(1−m))).
pub fn complete_k(m: Complex) -> Result<Complex> {
    if m == c(1.0, 0.0) {
        return Err(Error::domain("K(m) diverges at m = 1"));
    }
    let g = agm(c(1.0, 0.0), principal_sqrt(c(1.0, 0.0) - m))?;
    Ok(c(PI / 2.0, 0.0) / g)
}

/// Real-parameter shortcut for K(m), m < 1.
pub fn complete_k_real(m: f64) -> Result<f64> {
    if m > 1.0 {
        return Err(Error::domain(format!("real K(m) requires m ≤ 1, got {m}")));
    }
    Ok(complete_k(c(m, 0.0))?.re)
}

/// sn, cn, dn at one argument and parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: Complex,
    pub cn: Complex,
    pub dn: Complex,
    pub parameter_m: Complex,
    pub argument_z: Complex,
}

impl JacobiTriple {
    /// Largest residual of sn² + cn² = 1 and dn² + m·sn² = 1.
    pub fn identity_residual(&self) -> f64 {
        let one = c(1.0, 0.0);
        let r1 = (self.sn * self.sn + self.cn * self.cn - one).norm();
        let r2 = (self.dn * self.dn + self.parameter_m * self.sn * self.sn - one).norm();
        r1.max(r2)
    }
}

/// Descending Landen (AGM) scheme for real u and m ∈ [0, 1].
fn sncndn_real(u: f64, m: f64) -> (f64, f64, f64) {
    if m == 0.0 {
        return (u.sin(), u.cos(), 1.0);
    }
    let mut emc = 1.0 - m;
    if emc == 0.0 {
        let sech = 1.0 / u.cosh();
        return (u.tanh(), sech, sech);
    }
    let mut em = [0.0; LANDEN_MAX_DEPTH];
    let mut en = [0.0; LANDEN_MAX_DEPTH];
    let mut a = 1.0;
    let mut dn = 1.0;
    let mut cc = 1.0;
    let mut depth = 0;
    for i in 0..LANDEN_MAX_DEPTH {
        depth = i;
        em[i] = a;
        emc = emc.sqrt();
        en[i] = emc;
        cc = 0.5 * (a + emc);
        if (a - emc).abs() <= LANDEN_TOL * a {
            break;
        }
        emc *= a;
        a = cc;
    }
    let v = u * cc;
    let mut sn = v.sin();
    let mut cn = v.cos();
    if sn != 0.0 {
        let mut ratio = cn / sn;
        cc *= ratio;
        for i in (0..=depth).rev() {
            let b = em[i];
            ratio *= cc;
            cc *= dn;
            dn = (en[i] + ratio) / (b + ratio);
            ratio = cc / b;
        }
        let s = 1.0 / (cc * cc + 1.0).sqrt();
        sn = if sn >= 0.0 { s } else { -s };
        cn = cc * sn;
    }
    (sn, cn, dn)
}

fn landen_lattice_pole(z: Complex, m: f64) -> Option<Complex> {
    // Poles of sn, cn, dn sit at 2aK + (2b+1)iK′.
    if m == 0.0 {
        return None;
    }
    let kp = complete_k_real(1.0 - m).ok()?;
    let x = if m < 1.0 {
        let k = complete_k_real(m).ok()?;
        z.re - 2.0 * k * (z.re / (2.0 * k)).round()
    } else {
        z.re
    };
    let dy = z.im - kp - 2.0 * kp * ((z.im - kp) / (2.0 * kp)).round();
    if x.hypot(dy) < crate::weierstrass::series::POLE_TOLERANCE {
        Some(c(x, kp + dy))
    } else {
        None
    }
}

/// Jacobi functions for real m ∈ [0, 1] and complex z via Landen plus the
/// imaginary-argument addition formulas.
pub fn jacobi_landen(z: Complex, m: f64) -> Result<JacobiTriple> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::domain(format!("Landen path needs m in [0, 1], got {m}")));
    }
    if !is_finite(z) {
        return Err(Error::domain("non-finite argument"));
    }
    if let Some(location) = landen_lattice_pole(z, m) {
        return Err(Error::pole(location));
    }
    let (s, cn, d) = sncndn_real(z.re, m);
    let triple = if z.im == 0.0 {
        (c(s, 0.0), c(cn, 0.0), c(d, 0.0))
    } else {
        let (s1, c1, d1) = sncndn_real(z.im, 1.0 - m);
        let den = c1 * c1 + m * s * s * s1 * s1;
        if den == 0.0 {
            return Err(Error::pole(z));
        }
        (
            c(s * d1, cn * d * s1 * c1) / den,
            c(cn * c1, -s * d * s1 * d1) / den,
            c(d * c1 * d1, -m * s * cn * s1) / den,
        )
    };
    Ok(JacobiTriple {
        sn: triple.0,
        cn: triple.1,
        dn: triple.2,
        parameter_m: c(m, 0.0),
        argument_z: z,
    })
}

/// Jacobi functions for arbitrary complex m through ℘ of the cubic with
/// roots e₃ = −(1+m)/3, e₂ = e₃ + m, e₁ = e₃ + 1, using the half-argument
/// forms
///
/// ```text
/// sn(z) = −℘′(z/2) / D,   cn(z) = [(℘−e₁)(℘−e₃) − (℘−e₂)] / D,
/// dn(z) = [(℘−e₂)(℘−e₃) − m(℘−e₁)] / D,   D = (℘−e₃)² − m,
/// ```
///
/// with ℘ evaluated at z/2. These are single-valued, so no branch of
/// √(℘ − e₃) has to be chosen.
pub fn jacobi_via_weierstrass(z: Complex, m: Complex) -> Result<JacobiTriple> {
    if !is_finite(z) {
        return Err(Error::domain("non-finite argument"));
    }
    if z.norm() == 0.0 {
        return Ok(JacobiTriple {
            sn: c(0.0, 0.0),
            cn: c(1.0, 0.0),
            dn: c(1.0, 0.0),
            parameter_m: m,
            argument_z: z,
        });
    }
    let e3 = -(c(1.0, 0.0) + m) / 3.0;
    let e2 = e3 + m;
    let e1 = e3 + 1.0;
    let g2 = 2.0 * (e1 * e1 + e2 * e2 + e3 * e3);
    let g3 = 4.0 * e1 * e2 * e3;
    // Full periods 2K and 2iK′ when both are finite.
    let lattice = match (complete_k(m), complete_k(c(1.0, 0.0) - m)) {
        (Ok(k), Ok(kp)) => Lattice::from_periods(2.0 * k, c(0.0, 2.0) * kp),
        _ => Lattice::Unknown,
    };
    let series = WpSeries::new(g2, g3).with_lattice(lattice);
    let half = z * 0.5;
    let (p, dp) = match series.eval(half) {
        Ok(v) => v,
        // ℘ has a pole at z/2, which is a regular point of sn, cn, dn
        // (z ≡ 0 modulo 4K, 4iK′ up to sign); use the limiting values.
        Err(Error::Pole { .. }) => return jacobi_at_double_lattice(z, m, &series),
        Err(e) => return Err(e),
    };
    let pe3 = p - e3;
    let den = pe3 * pe3 - m;
    if den.norm() < 1e-300 || !is_finite(den) {
        return Err(Error::pole(z));
    }
    let sn = -dp / den;
    let cn = ((p - e1) * pe3 - (p - e2)) / den;
    let dn = ((p - e2) * pe3 - m * (p - e1)) / den;
    if !is_finite(sn) || sn.norm() > 1e15 {
        return Err(Error::pole(z));
    }
    Ok(JacobiTriple {
        sn,
        cn,
        dn,
        parameter_m: m,
        argument_z: z,
    })
}

fn jacobi_at_double_lattice(z: Complex, m: Complex, series: &WpSeries) -> Result<JacobiTriple> {
    // z/2 is a lattice point 2aK + 2b·iK′, so sn = 0, cn = (−1)^a, dn = (−1)^b.
    let (a, b) = match series.lattice() {
        Lattice::Full(p, q) => {
            let det = p.re * q.im - p.im * q.re;
            let h = z * 0.5;
            (
                ((h.re * q.im - h.im * q.re) / det).round(),
                ((p.re * h.im - p.im * h.re) / det).round(),
            )
        }
        _ => (0.0, 0.0),
    };
    let sign = |n: f64| if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(JacobiTriple {
        sn: c(0.0, 0.0),
        cn: c(sign(a), 0.0),
        dn: c(sign(b), 0.0),
        parameter_m: m,
        argument_z: z,
    })
}

/// sn(z|m), cn(z|m), dn(z|m).
pub fn jacobi_sn_cn_dn(z: Complex, m: Complex) -> Result<JacobiTriple> {
    if z.norm() == 0.0 {
        return Ok(JacobiTriple {
            sn: c(0.0, 0.0),
            cn: c(1.0, 0.0),
            dn: c(1.0, 0.0),
            parameter_m: m,
            argument_z: z,
        });
    }
    if m.im == 0.0 && (0.0..=1.0).contains(&m.re) {
        jacobi_landen(z, m.re)
    } else {
        jacobi_via_weierstrass(z, m)
    }
}

/// sc(z|m) = sn/cn.
pub fn jacobi_sc(z: Complex, m: Complex) -> Result<Complex> {
    let t = jacobi_sn_cn_dn(z, m)?;
    if t.cn.norm() < RATIO_POLE_TOL {
        return Err(Error::pole(z));
    }
    Ok(t.sn / t.cn)
}

/// cs(z|m) = cn/sn.
pub fn jacobi_cs(z: Complex, m: Complex) -> Result<Complex> {
    let t = jacobi_sn_cn_dn(z, m)?;
    if t.sn.norm() < RATIO_POLE_TOL {
        return Err(Error::pole(z));
    }
    Ok(t.cn / t.sn)
}

/// Both ratios at once; fails if either one sits on a pole.
pub fn jacobi_sc_cs(z: Complex, m: Complex) -> Result<(Complex, Complex)> {
    let t = jacobi_sn_cn_dn(z, m)?;
    if t.cn.norm() < RATIO_POLE_TOL || t.sn.norm() < RATIO_POLE_TOL {
        return Err(Error::pole(z));
    }
    Ok((t.sn / t.cn, t.cn / t.sn))
}
