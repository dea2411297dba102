//! Densities, potentials and equilibrium diagnostics for one value of `chat`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::curve::{solve_branches, track_c64, Curve};
use super::measure::SampledMeasure;
use super::support::{support_intervals, Phase, SupportModel};
use crate::error::{Error, Result};
use crate::numerics::{CWide, Wide};

/// Distance above the real axis at which boundary values are taken.
pub const BOUNDARY_EPS: f64 = 1e-20;

/// Densities at one point of the real line.
#[derive(Clone, Debug)]
pub struct DensitySample {
    pub x: Wide,
    pub v: Wide,
    pub nu: [Wide; 3],
}

/// The symmetric triple's limiting objects at a fixed `chat`.
#[derive(Clone, Debug)]
pub struct SymmetricModel {
    chat: Wide,
    c: f64,
    support: SupportModel,
}

impl SymmetricModel {
    pub fn new(chat: &Wide) -> Result<Self> {
        let support = support_intervals(chat)?;
        Ok(SymmetricModel {
            chat: chat.clone(),
            c: chat.to_f64(),
            support,
        })
    }

    pub fn chat(&self) -> &Wide {
        &self.chat
    }

    pub fn support(&self) -> &SupportModel {
        &self.support
    }

    fn require_three(&self) -> Result<()> {
        if self.support.phase != Phase::ThreeInterval {
            return Err(Error::UnsupportedPhase { chat: self.c });
        }
        Ok(())
    }

    fn boundary_point(x: &Wide) -> CWide {
        CWide::new(x.clone(), Wide::from_f64(BOUNDARY_EPS))
    }

    /// Density `v` of the limiting zero distribution, zero off the support.
    pub fn density_v(&self, x: &Wide) -> Result<Wide> {
        if !self.support.contains_open(x) {
            return Ok(Wide::zero());
        }
        let s = solve_branches(Curve::S, &Self::boundary_point(x), &self.chat)?;
        Ok(-&s.values[0].im / (Wide::from_i64(3) * Wide::pi()))
    }

    /// Density of `nu_j` (`j` = 1, 2, 3), zero off its interval.
    pub fn density_nu(&self, j: usize, x: &Wide) -> Result<Wide> {
        let (lo, hi) = self.support.nu_interval(j)?;
        if !(&lo < x && x < &hi) {
            return Ok(Wide::zero());
        }
        let xi = solve_branches(Curve::Xi, &Self::boundary_point(x), &self.chat)?;
        Ok(-&xi.values[j].im / Wide::pi())
    }

    pub fn density_sample(&self, x: &Wide) -> Result<DensitySample> {
        let v = self.density_v(x)?;
        let nu = if self.support.phase == Phase::ThreeInterval {
            [self.density_nu(1, x)?, self.density_nu(2, x)?, self.density_nu(3, x)?]
        } else {
            [Wide::zero(), Wide::zero(), Wide::zero()]
        };
        Ok(DensitySample { x: x.clone(), v, nu })
    }

    /// `v` in binary64, zero off the support.
    pub fn density_v_f64(&self, x: f64) -> Result<f64> {
        if !self.support.contains_open(&Wide::from_f64(x)) {
            return Ok(0.0);
        }
        self.v_f64(x)
    }

    /// `nu_j` in binary64, zero off its interval.
    pub fn density_nu_f64(&self, j: usize, x: f64) -> Result<f64> {
        let (lo, hi) = self.support.nu_interval(j)?;
        if !(lo.to_f64() < x && x < hi.to_f64()) {
            return Ok(0.0);
        }
        self.nu_f64(j, x)
    }

    fn v_f64(&self, x: f64) -> Result<f64> {
        let s = track_c64(Curve::S, Complex64::new(x, BOUNDARY_EPS), self.c)?;
        Ok(-s[0].im / (3.0 * PI))
    }

    fn nu_f64(&self, j: usize, x: f64) -> Result<f64> {
        let xi = track_c64(Curve::Xi, Complex64::new(x, BOUNDARY_EPS), self.c)?;
        Ok(-xi[j].im / PI)
    }

    /// `v` restricted to each support interval.
    pub fn v_measures(&self, samples: usize) -> Result<Vec<SampledMeasure>> {
        self.support
            .intervals()
            .iter()
            .map(|(lo, hi)| SampledMeasure::from_density(lo.to_f64(), hi.to_f64(), samples, |x| self.v_f64(x)))
            .collect()
    }

    /// `nu_1, nu_2, nu_3`.
    pub fn nu_measures(&self, samples: usize) -> Result<[SampledMeasure; 3]> {
        self.require_three()?;
        let one = |j: usize| -> Result<SampledMeasure> {
            let (lo, hi) = self.support.nu_interval(j)?;
            SampledMeasure::from_density(lo.to_f64(), hi.to_f64(), samples, |x| self.nu_f64(j, x))
        };
        Ok([one(1)?, one(2)?, one(3)?])
    }

    /// External field `V_j` (`j` = 1, 2, 3).
    pub fn external_field(&self, j: usize, x: f64) -> f64 {
        match j {
            1 => x * x + self.c * x,
            2 => x * x,
            _ => x * x - self.c * x,
        }
    }

    /// `U(x; nu_j) + sum_i U(x; nu_i) + V_j(x)`, constant on the support of `nu_j`.
    pub fn variational_combination(&self, nu: &[SampledMeasure; 3], j: usize, x: f64) -> f64 {
        let total: f64 = nu.iter().map(|m| m.potential(x)).sum();
        nu[j - 1].potential(x) + total + self.external_field(j, x)
    }

    /// Limiting bound on `|lambda_k^{(j)}|^{1/n}` at a scaled node `x`:
    /// `exp(U(x; nu_j) + sum_i U(x; nu_i) - l_j)`, times `exp(-c_j^2/4)` for
    /// unit-mass weights.
    pub fn decay_bound(&self, nu: &[SampledMeasure; 3], ell: &[f64; 3], j: usize, x: f64, normalized: bool) -> f64 {
        let combination = self.variational_combination(nu, j, x) - self.external_field(j, x);
        let mass = if normalized && j != 2 {
            self.c * self.c / 4.0
        } else {
            0.0
        };
        (combination - ell[j - 1] - mass).exp()
    }

    /// `l_j`: each combination at the midpoint of its interval.
    pub fn equilibrium_constants(&self, nu: &[SampledMeasure; 3]) -> [f64; 3] {
        [1, 2, 3].map(|j| {
            let m = &nu[j - 1];
            self.variational_combination(nu, j, (m.lo + m.hi) / 2.0)
        })
    }
}

pub fn density_v(x: &Wide, chat: &Wide) -> Result<Wide> {
    SymmetricModel::new(chat)?.density_v(x)
}

pub fn density_nu(j: usize, x: &Wide, chat: &Wide) -> Result<Wide> {
    SymmetricModel::new(chat)?.density_nu(j, x)
}

/// `U(x; nu)` of a sampled measure.
pub fn log_potential(measure: &SampledMeasure, x: f64) -> f64 {
    measure.potential(x)
}

/// `-(1/n) sum_i log|x - z_i / sqrt(n)|`.
pub fn discrete_potential(zeros: &[Wide], n: usize, x: f64) -> Result<f64> {
    let root_n = (n as f64).sqrt();
    let mut s = 0.0;
    for z in zeros {
        let d = (x - z.to_f64() / root_n).abs();
        if d == 0.0 {
            return Err(Error::Singular);
        }
        s -= d.ln();
    }
    Ok(s / n as f64)
}

/// Equilibrium constants and how well the potentials satisfy the
/// variational conditions.
#[derive(Clone, Debug)]
pub struct VariationalReport {
    /// Value of each combination at the midpoint of its interval.
    pub ell: [f64; 3],
    /// `max |combination - ell|` on the interval.
    pub on_support_residual: [f64; 3],
    /// `max - min` of the combination on the interval.
    pub flatness: [f64; 3],
    /// `min (combination - ell)` off the interval.
    pub off_support_margin: [f64; 3],
}

/// `samples` sets the resolution of each measure, `grid` the number of test
/// points per region.
pub fn variational_report(chat: &Wide, samples: usize, grid: usize) -> Result<VariationalReport> {
    let model = SymmetricModel::new(chat)?;
    let nu = model.nu_measures(samples)?;
    let mut report = VariationalReport {
        ell: [0.0; 3],
        on_support_residual: [0.0; 3],
        flatness: [0.0; 3],
        off_support_margin: [f64::INFINITY; 3],
    };
    let b = model.support.b.to_f64();
    let ells = model.equilibrium_constants(&nu);
    for j in 1..=3 {
        let (lo, hi) = (nu[j - 1].lo, nu[j - 1].hi);
        let ell = ells[j - 1];
        let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..grid {
            let x = lo + (hi - lo) * (i as f64 + 0.5) / grid as f64;
            let v = model.variational_combination(&nu, j, x);
            min = min.min(v);
            max = max.max(v);
        }
        report.ell[j - 1] = ell;
        report.flatness[j - 1] = max - min;
        report.on_support_residual[j - 1] = (max - ell).max(ell - min);
        let (wlo, whi) = (-b - 2.0, b + 2.0);
        for i in 0..=4 * grid {
            let x = wlo + (whi - wlo) * i as f64 / (4 * grid) as f64;
            if x >= lo && x <= hi {
                continue;
            }
            let margin = model.variational_combination(&nu, j, x) - ell;
            report.off_support_margin[j - 1] = report.off_support_margin[j - 1].min(margin);
        }
    }
    Ok(report)
}

/// Kolmogorov-Smirnov distance between the empirical law of `points` and the
/// measure whose pieces are `measure`.
pub fn ks_distance(points: &[f64], measure: &[SampledMeasure]) -> f64 {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let total: f64 = measure.iter().map(SampledMeasure::mass).sum();
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = measure.iter().map(|m| m.cdf(x)).sum::<f64>() / total;
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: i64) -> Wide {
        Wide::from_i64(v)
    }

    #[test]
    fn v_vanishes_off_support_and_is_even() {
        let m = SymmetricModel::new(&w(6)).unwrap();
        let beyond = &m.support().b + w(1);
        assert!(m.density_v(&beyond).unwrap().is_zero());
        for x in ["0.3", "1.0", "1.7", "2.2", "3.9"] {
            let x = Wide::parse(x).unwrap();
            let (l, r) = (m.density_v(&x).unwrap(), m.density_v(&-&x).unwrap());
            assert!((l - r).abs().to_f64() < 1e-10);
        }
    }

    #[test]
    fn nu_needs_three_intervals() {
        let err = density_nu(1, &w(0), &w(2)).unwrap_err();
        assert!(matches!(err, Error::UnsupportedPhase { .. }));
    }

    #[test]
    fn unit_masses() {
        let m = SymmetricModel::new(&w(6)).unwrap();
        let v: f64 = m.v_measures(256).unwrap().iter().map(SampledMeasure::mass).sum();
        assert!((v - 1.0).abs() < 1e-6, "{v}");
        for nu in m.nu_measures(256).unwrap() {
            assert!((nu.mass() - 1.0).abs() < 1e-6, "{}", nu.mass());
        }
    }

    #[test]
    fn middle_density_is_even_and_first_is_positive() {
        let m = SymmetricModel::new(&w(6)).unwrap();
        let x = Wide::parse("0.8").unwrap();
        let d = (m.density_nu(2, &x).unwrap() - m.density_nu(2, &-&x).unwrap()).abs();
        assert!(d.to_f64() < 1e-10);
        let s = m.support();
        let mid = -(&s.b + s.a.as_ref().unwrap()) / w(2);
        assert!(m.density_nu(1, &mid).unwrap().is_positive());
    }

    #[test]
    fn discrete_potential_examples() {
        let e = Wide::one().exp().to_f64();
        assert!((discrete_potential(&[w(0)], 1, e).unwrap() + 1.0).abs() < 1e-15);
        let zs = [w(-1), w(0), w(2)];
        let far = discrete_potential(&zs, 3, 1e6).unwrap();
        assert!((far + 1e6f64.ln()).abs() / 1e6f64.ln() < 1e-4);
        assert_eq!(discrete_potential(&[w(2)], 4, 1.0), Err(Error::Singular));
    }
}
