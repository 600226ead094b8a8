//! Evaluation engine for ℘ and ℘′ with arbitrary (complex) invariants.
//!
//! The argument is first reduced modulo the period lattice when one is
//! known, then halved until it sits well inside the disc of convergence
//! of the Laurent expansion about the origin, and finally doubled back.
//! The doubling step evaluates ℘(2w) and ℘′(2w) as rational functions of
//! ℘(w), which keeps the relative error from compounding near the pole.

use crate::error::{Error, Result};
use crate::Complex;

/// Highest Laurent index: the series is summed through z^(2·MAX_K − 2) = z^30.
const MAX_K: usize = 16;

/// Halving stops once |w|·scale is below this bound. The shortest lattice
/// vector is at least ~3/scale for every lattice, so the truncated terms
/// are below (0.5/3)^32.
const SERIES_RADIUS: f64 = 0.5;

/// Distance below which a reduced argument is treated as a lattice point.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Full periods used to pull arguments back towards the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lattice {
    Unknown,
    /// A single finite period (degenerate lattice, the other period infinite).
    Strip(Complex),
    Full(Complex, Complex),
}

impl Lattice {
    /// Builds a lattice from two full periods, dropping non-finite ones.
    pub fn from_periods(p: Complex, q: Complex) -> Self {
        match (is_finite(p), is_finite(q)) {
            (true, true) => Lattice::Full(p, q),
            (true, false) => Lattice::Strip(p),
            (false, true) => Lattice::Strip(q),
            (false, false) => Lattice::Unknown,
        }
    }

    /// Representative of `z` modulo the lattice, close to the origin.
    pub fn reduce(&self, z: Complex) -> Complex {
        match *self {
            Lattice::Unknown => z,
            Lattice::Strip(p) => {
                let a = (z / p).re;
                z - p * a.round()
            }
            Lattice::Full(p, q) => {
                let det = p.re * q.im - p.im * q.re;
                if det.abs() < 1e-300 {
                    return z;
                }
                let a = (z.re * q.im - z.im * q.re) / det;
                let b = (p.re * z.im - p.im * z.re) / det;
                let base = z - p * a.round() - q * b.round();
                // The centred parallelogram can miss the nearest lattice
                // point for skewed bases; check the neighbouring cells.
                let mut best = base;
                for i in -1..=1 {
                    for j in -1..=1 {
                        let cand = base - p * f64::from(i) - q * f64::from(j);
                        if cand.norm() < best.norm() {
                            best = cand;
                        }
                    }
                }
                best
            }
        }
    }
}

pub(crate) fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Precomputed Laurent data for one pair of invariants.
#[derive(Debug, Clone)]
pub struct WpSeries {
    g2: Complex,
    g3: Complex,
    coeffs: [Complex; MAX_K + 1],
    scale: f64,
    lattice: Lattice,
}

impl WpSeries {
    pub fn new(g2: Complex, g3: Complex) -> Self {
        let mut coeffs = [Complex::new(0.0, 0.0); MAX_K + 1];
        coeffs[2] = g2 / 20.0;
        coeffs[3] = g3 / 28.0;
        for k in 4..=MAX_K {
            let mut acc = Complex::new(0.0, 0.0);
            for m in 2..=k - 2 {
                acc += coeffs[m] * coeffs[k - m];
            }
            coeffs[k] = acc * (3.0 / (((2 * k + 1) * (k - 3)) as f64));
        }
        let scale = g2.norm().powf(0.25).max(g3.norm().powf(1.0 / 6.0));
        WpSeries {
            g2,
            g3,
            coeffs,
            scale,
            lattice: Lattice::Unknown,
        }
    }

    pub fn with_lattice(mut self, lattice: Lattice) -> Self {
        self.lattice = lattice;
        self
    }

    pub fn g2(&self) -> Complex {
        self.g2
    }

    pub fn g3(&self) -> Complex {
        self.g3
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    /// Laurent coefficient c_k of z^(2k−2); `k` in 2..=16.
    pub fn coefficient(&self, k: usize) -> Complex {
        self.coeffs[k]
    }

    fn laurent(&self, w: Complex) -> (Complex, Complex) {
        let u = w * w;
        let mut p = Complex::new(0.0, 0.0);
        let mut dp = Complex::new(0.0, 0.0);
        for k in (2..=MAX_K).rev() {
            p = p * u + self.coeffs[k];
            dp = dp * u + self.coeffs[k] * ((2 * k - 2) as f64);
        }
        // p now holds Σ c_k u^(k−2); shift by one power of u.
        let value = u.inv() + p * u;
        let deriv = -2.0 * (u * w).inv() + dp * w;
        (value, deriv)
    }

    fn double(&self, p: Complex, dp: Complex) -> (Complex, Complex) {
        let (g2, g3) = (self.g2, self.g3);
        let p2 = p * p;
        let d = 4.0 * p2 * p - g2 * p - g3;
        let n = p2 * p2 + 0.5 * g2 * p2 + 2.0 * g3 * p + g2 * g2 / 16.0;
        let q = 4.0 * p2 * p2 * p2 - 5.0 * g2 * p2 * p2 - 20.0 * g3 * p2 * p
            - 1.25 * g2 * g2 * p2
            - g2 * g3 * p
            + g2 * g2 * g2 / 16.0
            - 2.0 * g3 * g3;
        (n / d, q / (2.0 * dp * d))
    }

    /// Returns (℘(z), ℘′(z)).
    pub fn eval(&self, z: Complex) -> Result<(Complex, Complex)> {
        if !is_finite(z) {
            return Err(Error::domain(format!("non-finite argument {z}")));
        }
        let reduced = self.lattice.reduce(z);
        if reduced.norm() < POLE_TOLERANCE {
            return Err(Error::pole(reduced));
        }
        let mut halvings = 0;
        let mut w = reduced;
        while w.norm() * self.scale > SERIES_RADIUS {
            w *= 0.5;
            halvings += 1;
        }
        let (mut p, mut dp) = self.laurent(w);
        for _ in 0..halvings {
            (p, dp) = self.double(p, dp);
        }
        if !is_finite(p) || !is_finite(dp) {
            return Err(Error::pole(reduced));
        }
        Ok((p, dp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn laurent_coefficients_follow_recurrence() {
        let s = WpSeries::new(c(3.0, 0.0), c(1.0, 0.0));
        assert!((s.coefficient(2) - c(0.15, 0.0)).norm() < 1e-16);
        assert!((s.coefficient(3) - c(1.0 / 28.0, 0.0)).norm() < 1e-16);
        // c4 = g2²/1200
        assert!((s.coefficient(4) - c(9.0 / 1200.0, 0.0)).norm() < 1e-16);
        // c5 = 3 g2 g3 / 6160
        assert!((s.coefficient(5) - c(9.0 / 6160.0, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn degenerate_trigonometric_case() {
        // g2 = 3, g3 = 1: ℘ = −1/2 + (3/2)/sin²(√(3/2) z)
        let s = WpSeries::new(c(3.0, 0.0), c(1.0, 0.0));
        let k = 1.5f64.sqrt();
        for &x in &[0.05, 0.3, 0.9, 1.2, 2.0] {
            let z = c(x, 0.37);
            let (p, dp) = s.eval(z).unwrap();
            let sn = (z * k).sin();
            let expect = -0.5 + 1.5 / (sn * sn);
            let dexpect = -3.0 * k * (z * k).cos() / (sn * sn * sn);
            assert!((p - expect).norm() < 1e-12 * (1.0 + expect.norm()), "{z}: {p} vs {expect}");
            assert!((dp - dexpect).norm() < 1e-11 * (1.0 + dexpect.norm()));
        }
    }

    #[test]
    fn degenerate_hyperbolic_case() {
        // g2 = 3, g3 = −1: ℘ = −1 + (3/2) coth²(√(3/2) z)
        let s = WpSeries::new(c(3.0, 0.0), c(-1.0, 0.0));
        let k = 1.5f64.sqrt();
        for &x in &[0.1, 0.7, 1.9, 3.5] {
            let z = c(x, -0.2);
            let (p, _) = s.eval(z).unwrap();
            let t = (z * k).tanh();
            let expect = -1.0 + 1.5 / (t * t);
            assert!((p - expect).norm() < 1e-12 * (1.0 + expect.norm()));
        }
    }

    #[test]
    fn zero_invariants_give_inverse_square() {
        let s = WpSeries::new(c(0.0, 0.0), c(0.0, 0.0));
        let (p, dp) = s.eval(c(0.3, 0.4)).unwrap();
        let z = c(0.3, 0.4);
        assert!((p - (z * z).inv()).norm() < 1e-14);
        assert!((dp + 2.0 * (z * z * z).inv()).norm() < 1e-13);
    }

    #[test]
    fn origin_is_a_pole() {
        let s = WpSeries::new(c(3.0, 0.0), c(0.5, 0.0));
        assert!(matches!(s.eval(c(0.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn reduction_picks_nearest_cell() {
        let lat = Lattice::Full(c(2.0, 0.0), c(1.0, 1.5));
        let z = lat.reduce(c(4.1, 3.05));
        assert!((z - c(0.1, 0.05)).norm() < 1e-14);
        let strip = Lattice::Strip(c(0.0, 3.0));
        assert!((strip.reduce(c(0.4, 7.0)) - c(0.4, 1.0)).norm() < 1e-14);
    }
}
