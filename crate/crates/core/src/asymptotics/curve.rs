//! The two quartic curves of the symmetric triple and labeled branch values.
//!
//! ```text
//! S:  S^4 - 6z S^3 + (12z^2 - c^2 + 6) S^2 + (-8z^3 + 2c^2 z - 24z) S + 2(12z^2 - c^2) = 0
//! xi: xi^4 - 2z xi^3 + (6 - c^2) xi^2 + 2c^2 z xi - 2c^2 = 0
//! ```
//!
//! Branches are labeled by their behaviour at infinity and continued to the
//! target point along a vertical path in binary64, then polished with Newton's
//! method at the working precision.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{tol_below_precision, CWide, Wide};

type C64 = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curve {
    /// `S = 3 \int dmu(x)/(z - x)` and its continuations.
    S,
    /// `xi`, whose branches 2..4 are shifted Stieltjes transforms of `nu_1..nu_3`.
    Xi,
}

/// Four labeled roots of a curve at `z`.
#[derive(Clone, Debug)]
pub struct BranchValues {
    pub curve: Curve,
    pub z: CWide,
    pub values: [CWide; 4],
}

impl BranchValues {
    /// Largest relative residual `|F(v)| / sum |a_i||v|^i` over the four values.
    pub fn max_relative_residual(&self, chat: &Wide) -> Wide {
        let coeffs = self.curve.coeffs_wide(&self.z, chat);
        self.values
            .iter()
            .map(|v| relative_residual(&coeffs, v))
            .fold(Wide::zero(), Wide::max)
    }
}

impl Curve {
    /// Ascending coefficients in the branch variable.
    fn coeffs_c64(self, z: C64, c: f64) -> [C64; 5] {
        let c2 = c * c;
        match self {
            Curve::S => [
                2.0 * (12.0 * z * z - c2),
                -8.0 * z * z * z + (2.0 * c2 - 24.0) * z,
                12.0 * z * z + (6.0 - c2),
                -6.0 * z,
                C64::new(1.0, 0.0),
            ],
            Curve::Xi => [
                C64::new(-2.0 * c2, 0.0),
                2.0 * c2 * z,
                C64::new(6.0 - c2, 0.0),
                -2.0 * z,
                C64::new(1.0, 0.0),
            ],
        }
    }

    pub(crate) fn coeffs_wide(self, z: &CWide, c: &Wide) -> [CWide; 5] {
        let c2 = c.square();
        let k = |v: i64| Wide::from_i64(v);
        let z2 = z * z;
        match self {
            Curve::S => [
                (z2.scale(&k(12)) - CWide::real(c2.clone())).scale(&k(2)),
                (&z2 * z).scale(&k(-8)) + z.scale(&(k(2) * &c2 - k(24))),
                z2.scale(&k(12)) + CWide::real(k(6) - &c2),
                z.scale(&k(-6)),
                CWide::real(Wide::one()),
            ],
            Curve::Xi => [
                CWide::real(-(k(2) * &c2)),
                z.scale(&(k(2) * &c2)),
                CWide::real(k(6) - &c2),
                z.scale(&k(-2)),
                CWide::real(Wide::one()),
            ],
        }
    }

    /// `dF/dz` at `(z, v)`.
    fn dz_c64(self, z: C64, v: C64, c: f64) -> C64 {
        let c2 = c * c;
        match self {
            Curve::S => -6.0 * v * v * v + 24.0 * z * v * v + (-24.0 * z * z + 2.0 * c2 - 24.0) * v + 48.0 * z,
            Curve::Xi => -2.0 * v * v * v + 2.0 * c2 * v,
        }
    }

    /// Leading behaviour of the labeled branches as `z -> infinity`.
    fn asymptotic(self, z: C64, c: f64) -> [C64; 4] {
        let inv = 1.0 / z;
        match self {
            Curve::S => [3.0 * inv, 2.0 * z + c, 2.0 * z, 2.0 * z - c],
            Curve::Xi => [2.0 * z - 3.0 * inv, -c + inv, inv, c + inv],
        }
    }
}

fn horner_c64(coeffs: &[C64; 5], v: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for a in coeffs.iter().rev() {
        dp = dp * v + p;
        p = p * v + a;
    }
    (p, dp)
}

/// `sum |a_i| |v|^i`, the size of the terms entering `F(v)`.
fn term_scale_c64(coeffs: &[C64; 5], v: C64) -> f64 {
    let r = v.norm();
    coeffs.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

fn newton_c64(coeffs: &[C64; 5], mut v: C64, max_iter: usize) -> Option<C64> {
    for _ in 0..max_iter {
        let (p, dp) = horner_c64(coeffs, v);
        if dp == C64::new(0.0, 0.0) {
            return None;
        }
        let step = p / dp;
        let at_noise = p.norm() <= 64.0 * f64::EPSILON * term_scale_c64(coeffs, v);
        v -= step;
        if !v.is_finite() {
            return None;
        }
        if at_noise || step.norm() <= 1e-14 * (1.0 + v.norm()) {
            return Some(v);
        }
    }
    None
}

fn min_separation(v: &[C64; 4]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..4 {
        for j in i + 1..4 {
            m = m.min((v[i] - v[j]).norm());
        }
    }
    m
}

fn polish_all(curve: Curve, z: C64, c: f64, guesses: [C64; 4]) -> Option<[C64; 4]> {
    let coeffs = curve.coeffs_c64(z, c);
    let mut out = guesses;
    for (o, g) in out.iter_mut().zip(guesses) {
        *o = newton_c64(&coeffs, g, 60)?;
    }
    // every root must stay closest to its own guess
    for i in 0..4 {
        for j in 0..4 {
            if i != j && (out[i] - guesses[i]).norm() >= (out[i] - guesses[j]).norm() {
                return None;
            }
        }
    }
    Some(out)
}

/// Labeled roots at a point far from the branch points.
fn far_field(curve: Curve, z: C64, c: f64) -> Option<[C64; 4]> {
    polish_all(curve, z, c, curve.asymptotic(z, c))
}

/// Radius beyond which asymptotic labels are used directly.
fn far_radius(c: f64) -> f64 {
    10.0 * (1.0 + c + 1.0 / c)
}

/// Labeled branch values at `z` in binary64.
pub(crate) fn track_c64(curve: Curve, z: C64, c: f64) -> Result<[C64; 4]> {
    let fail = |reason: &str| Error::TrackingFailure {
        re: z.re,
        im: z.im,
        reason: reason.into(),
    };
    let r0 = far_radius(c);
    if z.norm() >= r0 {
        return far_field(curve, z, c).ok_or_else(|| fail("far-field labeling failed"));
    }
    let sign = if z.im < 0.0 { -1.0 } else { 1.0 };
    // descend the vertical line Re z + i sign t, in log t
    let t_end = z.im.abs().max(1e-20);
    let (tau0, tau1) = (r0.ln(), t_end.ln());
    let point = |tau: f64| C64::new(z.re, sign * tau.exp());
    let mut roots = far_field(curve, point(tau0), c).ok_or_else(|| fail("far-field labeling failed"))?;
    let length = tau0 - tau1;
    let min_step = 1e-6 * length;
    let mut tau = tau0;
    let mut h = (0.05f64).min(length);
    while tau > tau1 {
        let step = h.min(tau - tau1);
        let z0 = point(tau);
        let z1 = if tau - step <= tau1 {
            point(tau1)
        } else {
            point(tau - step)
        };
        let dz = z1 - z0;
        let coeffs0 = curve.coeffs_c64(z0, c);
        let mut predicted = roots;
        for (p, v) in predicted.iter_mut().zip(roots) {
            let (_, dv) = horner_c64(&coeffs0, v);
            if dv != C64::new(0.0, 0.0) {
                *p = v - curve.dz_c64(z0, v, c) / dv * dz;
            }
        }
        let sep = min_separation(&predicted);
        let coeffs1 = curve.coeffs_c64(z1, c);
        let mut corrected = predicted;
        let mut ok = sep > 0.0;
        for (o, p) in corrected.iter_mut().zip(predicted) {
            match newton_c64(&coeffs1, p, 8) {
                Some(v) if (v - p).norm() <= 0.25 * sep => *o = v,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && min_separation(&corrected) > 0.0 {
            roots = corrected;
            tau -= step;
            h = (h * 1.5).min(0.2);
        } else {
            h *= 0.5;
            if h < min_step {
                return Err(fail("continuation step underflow"));
            }
        }
    }
    if z.im == 0.0 {
        let coeffs = curve.coeffs_c64(z, c);
        for r in roots.iter_mut() {
            *r = newton_c64(&coeffs, *r, 60).ok_or_else(|| fail("final polish diverged"))?;
        }
    }
    Ok(roots)
}

fn horner_wide(coeffs: &[CWide; 5], v: &CWide) -> (CWide, CWide) {
    let mut p = CWide::zero();
    let mut dp = CWide::zero();
    for a in coeffs.iter().rev() {
        dp = &dp * v + &p;
        p = &p * v + a;
    }
    (p, dp)
}

fn relative_residual(coeffs: &[CWide; 5], v: &CWide) -> Wide {
    let (p, _) = horner_wide(coeffs, v);
    let r = v.abs();
    let mut scale = Wide::zero();
    for a in coeffs.iter().rev() {
        scale = scale * &r + a.abs();
    }
    p.abs() / scale
}

/// Newton at the working precision from a binary64 start.
fn polish_wide(coeffs: &[CWide; 5], start: C64) -> CWide {
    let tol = tol_below_precision(12);
    let floor = tol_below_precision(2);
    let mut v = CWide::from_c64(start);
    for _ in 0..200 {
        let (p, dp) = horner_wide(coeffs, &v);
        if dp.norm_sqr().is_zero() || relative_residual(coeffs, &v) <= floor {
            break;
        }
        let step = &p / &dp;
        v = &v - &step;
        if step.abs() <= &tol * v.abs().max(Wide::one()) {
            break;
        }
    }
    v
}

/// Labeled branch values at `z`, polished to the working precision.
pub fn solve_branches(curve: Curve, z: &CWide, chat: &Wide) -> Result<BranchValues> {
    let start = track_c64(curve, z.to_c64(), chat.to_f64())?;
    let coeffs = curve.coeffs_wide(z, chat);
    let values = start.map(|s| polish_wide(&coeffs, s));
    Ok(BranchValues {
        curve,
        z: z.clone(),
        values,
    })
}

pub fn solve_s_branches(z: &CWide, chat: &Wide) -> Result<BranchValues> {
    solve_branches(Curve::S, z, chat)
}

pub fn solve_xi_branches(z: &CWide, chat: &Wide) -> Result<BranchValues> {
    solve_branches(Curve::Xi, z, chat)
}

/// `|S_(1)(z) - (2/xi_1 + 2/(xi_1 + c) + 2/(xi_1 - c))|`.
pub fn s_xi_identity_residual(z: &CWide, chat: &Wide) -> Result<Wide> {
    let s = solve_s_branches(z, chat)?;
    let xi = solve_xi_branches(z, chat)?;
    let x1 = &xi.values[0];
    let two = CWide::real(Wide::from_i64(2));
    let c = CWide::real(chat.clone());
    let rhs = &two / x1 + &two / (x1 + &c) + &two / (x1 - &c);
    Ok((&s.values[0] - &rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: i64) -> Wide {
        Wide::from_i64(v)
    }

    fn cz(re: &str, im: &str) -> CWide {
        CWide::new(Wide::parse(re).unwrap(), Wide::parse(im).unwrap())
    }

    #[test]
    fn s_far_field_labels() {
        let b = solve_s_branches(&cz("100", "0"), &w(6)).unwrap();
        let v: Vec<f64> = b.values.iter().map(|x| x.re.to_f64()).collect();
        assert!((v[0] - 0.03).abs() < 5e-3);
        assert!((v[1] - 206.0).abs() < 0.1);
        assert!((v[2] - 200.0).abs() < 0.1);
        assert!((v[3] - 194.0).abs() < 0.1);
    }

    #[test]
    fn xi_far_field_labels() {
        let b = solve_xi_branches(&cz("100", "0"), &w(6)).unwrap();
        let v: Vec<f64> = b.values.iter().map(|x| x.re.to_f64()).collect();
        assert!((v[1] - (-6.0 + 0.01)).abs() < 1e-3);
        assert!((v[2] - 0.01).abs() < 1e-3);
        assert!((v[3] - (6.0 + 0.01)).abs() < 1e-3);
    }

    #[test]
    fn vieta_relations() {
        let tol = tol_below_precision(12);
        for (re, im) in [("2", "1"), ("-0.3", "0.7"), ("5", "-2"), ("0.01", "0.000001")] {
            let z = cz(re, im);
            let s = solve_s_branches(&z, &w(6)).unwrap();
            let sum = s.values.iter().fold(CWide::zero(), |a, b| a + b);
            assert!((&sum - &z.scale(&w(6))).abs() < &tol * z.abs().max(Wide::one()) * w(10));
            assert!(s.max_relative_residual(&w(6)) < tol);
            let xi = solve_xi_branches(&z, &w(6)).unwrap();
            let sum = xi.values.iter().fold(CWide::zero(), |a, b| a + b);
            assert!((&sum - &z.scale(&w(2))).abs() < &tol * w(10));
            let prod = xi.values.iter().fold(CWide::real(Wide::one()), |a, b| a * b);
            assert!((&prod + CWide::real(w(72))).abs() < &tol * w(100));
            assert!(xi.max_relative_residual(&w(6)) < tol);
        }
    }

    #[test]
    fn inside_the_middle_interval_the_transform_is_complex() {
        let s = solve_s_branches(&cz("0.01", "0.000001"), &w(6)).unwrap();
        assert!(s.values[0].im.abs().to_f64() > 1e-3);
    }

    #[test]
    fn s_from_xi() {
        let tiny = Wide::parse("1e-8").unwrap();
        assert!(s_xi_identity_residual(&cz("2", "1"), &w(6)).unwrap() < tiny);
        assert!(s_xi_identity_residual(&cz("100", "0"), &w(6)).unwrap() < Wide::parse("1e-4").unwrap());
    }
}
