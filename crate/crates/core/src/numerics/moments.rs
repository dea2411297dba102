//! Moments of the shifted Gaussian weights `exp(-x^2 + c x)`.

use super::Wide;

/// Moments `m[j] = \int x^j w(x) dx` of `w(x) = exp(-x^2 + c x)` (raw) or of the
/// normal density with mean `c/2` and variance `1/2` (normalized).
#[derive(Clone, Debug, PartialEq)]
pub struct MomentVector {
    pub c: Wide,
    pub normalized: bool,
    pub m: Vec<Wide>,
}

impl MomentVector {
    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn as_slice(&self) -> &[Wide] {
        &self.m
    }
}

/// Total mass of the raw weight, `sqrt(pi) exp(c^2/4)`.
pub fn raw_mass(c: &Wide) -> Wide {
    Wide::pi().sqrt() * (c.square() / Wide::from_i64(4)).exp()
}

pub fn gaussian_moments(c: &Wide, count: usize, normalized: bool) -> MomentVector {
    assert!(count >= 1, "need at least one moment");
    let mass = if normalized { Wide::one() } else { raw_mass(c) };
    let mean = c / Wide::from_i64(2);
    MomentVector {
        c: c.clone(),
        normalized,
        m: normal_moments(&mean, &Wide::ratio(1, 2), &mass, count),
    }
}

/// Moments of `mass` times the normal density with the given mean and variance:
/// `m[j+1] = mean m[j] + j var m[j-1]`.
pub fn normal_moments(mean: &Wide, variance: &Wide, mass: &Wide, count: usize) -> Vec<Wide> {
    let mut m = Vec::with_capacity(count);
    m.push(mass.clone());
    if count > 1 {
        m.push(mass * mean);
    }
    for j in 1..count.saturating_sub(1) {
        let next = mean * &m[j] + variance * &m[j - 1] * Wide::from(j);
        m.push(next);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let m = gaussian_moments(&Wide::zero(), 3, true);
        assert_eq!(m.m, vec![Wide::one(), Wide::zero(), Wide::ratio(1, 2)]);
        let m = gaussian_moments(&Wide::from_i64(2), 2, true);
        assert_eq!(m.m, vec![Wide::one(), Wide::one()]);
        let m = gaussian_moments(&Wide::zero(), 1, false);
        assert_eq!(m.m, vec![Wide::pi().sqrt()]);
    }

    #[test]
    fn recurrence_holds_and_raw_is_scaled_normalized() {
        let c = Wide::ratio(-37, 3);
        let raw = gaussian_moments(&c, 12, false);
        let norm = gaussian_moments(&c, 12, true);
        let factor = raw_mass(&c);
        let half_c = &c / Wide::from_i64(2);
        for j in 1..11 {
            let resid = &raw.m[j + 1] - &half_c * &raw.m[j] - &raw.m[j - 1] * Wide::ratio(j as i64, 2);
            assert!(resid.abs() <= raw.m[j + 1].abs() * Wide::parse("1e-60").unwrap());
            let ratio = &raw.m[j] / &norm.m[j];
            assert!(((ratio - &factor) / &factor).abs().log10_abs() < -60.0);
        }
    }
}
