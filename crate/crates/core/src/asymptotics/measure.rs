//! Absolutely continuous measures on an interval, sampled at Chebyshev angles.
//!
//! With `y = m - h cos(theta)` the function `g(theta) = nu(y) h sin(theta)` is
//! even and, for square-root edges, smooth, so its cosine series
//! `g = sum a_k cos(k theta)` converges fast. Mass, distribution function,
//! logarithmic potential and Cauchy transform all have closed forms in the
//! `a_k`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;

#[derive(Clone, Debug)]
pub struct SampledMeasure {
    pub lo: f64,
    pub hi: f64,
    thetas: Vec<f64>,
    g: Vec<f64>,
    a: Vec<f64>,
}

impl SampledMeasure {
    /// Samples `density` at `samples` interior points of `[lo, hi]`.
    pub fn from_density(lo: f64, hi: f64, samples: usize, mut density: impl FnMut(f64) -> Result<f64>) -> Result<Self> {
        let (m, h) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
        let thetas: Vec<f64> = (0..samples).map(|i| (i as f64 + 0.5) * PI / samples as f64).collect();
        let mut g = Vec::with_capacity(samples);
        for &t in &thetas {
            g.push(density(m - h * t.cos())? * h * t.sin());
        }
        let a = (0..samples)
            .map(|k| {
                let s: f64 = thetas.iter().zip(&g).map(|(t, gi)| gi * (k as f64 * t).cos()).sum();
                if k == 0 {
                    s / samples as f64
                } else {
                    2.0 * s / samples as f64
                }
            })
            .collect();
        Ok(SampledMeasure { lo, hi, thetas, g, a })
    }

    fn center(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    fn half_width(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }

    pub fn mass(&self) -> f64 {
        PI * self.a[0]
    }

    /// Mass of `(-inf, x]`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.lo {
            return 0.0;
        }
        if x >= self.hi {
            return self.mass();
        }
        let phi = ((self.center() - x) / self.half_width()).clamp(-1.0, 1.0).acos();
        let mut s = self.a[0] * phi;
        for (k, ak) in self.a.iter().enumerate().skip(1) {
            s += ak * (k as f64 * phi).sin() / k as f64;
        }
        s
    }

    /// `U(x) = \int log(1/|x - y|) dnu(y)`.
    pub fn potential(&self, x: f64) -> f64 {
        let h = self.half_width();
        let u = (self.center() - x) / h;
        let mut s = 0.0;
        if u.abs() <= 1.0 {
            let phi = u.acos();
            for (k, ak) in self.a.iter().enumerate().skip(1) {
                s += ak * (k as f64 * phi).cos() / k as f64;
            }
            -PI * self.a[0] * (h / 2.0).ln() + PI * s
        } else {
            let rho = u.abs() + (u * u - 1.0).sqrt();
            let sign = u.signum();
            let mut q = 1.0;
            for (k, ak) in self.a.iter().enumerate().skip(1) {
                q *= sign / rho;
                s += ak * q / k as f64;
            }
            -PI * self.a[0] * (h * rho / 2.0).ln() + PI * s
        }
    }

    /// `\int dnu(y) / (z - y)` for `z` off the support.
    pub fn cauchy(&self, z: Complex64) -> Complex64 {
        let (m, h) = (self.center(), self.half_width());
        let w = PI / self.g.len() as f64;
        self.thetas
            .iter()
            .zip(&self.g)
            .map(|(t, g)| w * g / (z - (m - h * t.cos())))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn semicircle(samples: usize) -> SampledMeasure {
        // unit-mass semicircle on [-2, 2]
        SampledMeasure::from_density(-2.0, 2.0, samples, |y| Ok((4.0 - y * y).max(0.0).sqrt() / (2.0 * PI))).unwrap()
    }

    #[test]
    fn semicircle_closed_forms() {
        let m = semicircle(128);
        assert!((m.mass() - 1.0).abs() < 1e-13);
        assert!((m.cdf(0.0) - 0.5).abs() < 1e-13);
        // on the support U(x) = 1/2 - x^2/4
        for x in [-1.5, 0.0, 0.3, 1.9] {
            assert!((m.potential(x) - (0.5 - x * x / 4.0)).abs() < 1e-12, "x={x}");
        }
        // Cauchy transform (z - sqrt(z^2 - 4)) / 2
        let z = Complex64::new(0.5, 1.0);
        let exact = (z - (z * z - 4.0).sqrt()) / 2.0;
        assert!((m.cauchy(z) - exact).norm() < 1e-10);
    }

    #[test]
    fn far_field_is_minus_log() {
        let m = semicircle(64);
        let x = 1e6f64;
        assert!(((m.potential(x) + x.ln()) / x.ln()).abs() < 1e-5);
        assert!(((m.potential(-x) + x.ln()) / x.ln()).abs() < 1e-5);
    }
}
