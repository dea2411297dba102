//! Real zeros of multiple Hermite polynomials and their localization.

use crate::error::{Error, Result};
use crate::guard::with_guard_digits;
use crate::mhermite::{build_by_recurrence, MultiIndex, WeightSystem};
use crate::numerics::{precision, ten_pow_neg, MonicPoly, Poly, Wide};

/// Sorted simple zeros with the last residuals `|p(z)|` of each polish.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub zeros: Vec<Wide>,
    pub residual_history: Vec<Vec<Wide>>,
}

impl ZeroSet {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn as_slice(&self) -> &[Wide] {
        &self.zeros
    }
}

/// A closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Wide,
    pub hi: Wide,
}

impl Interval {
    pub fn contains(&self, x: &Wide) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// The intervals `I_j = [c_j/2 - sqrt(4n+1), c_j/2 + sqrt(4n+1)]` around the
/// means of the symmetric triple.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizationIntervals {
    pub intervals: [Interval; 3],
    pub disjoint: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalCounts {
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    pub outside: usize,
}

pub fn bounding_intervals(n: usize, c: &Wide) -> Result<LocalizationIntervals> {
    if n == 0 || !c.is_positive() {
        return Err(Error::InvalidInput("need n >= 1 and c > 0".into()));
    }
    let radius = Wide::from(4 * n + 1).sqrt();
    let half = c / Wide::from_i64(2);
    let around = |m: Wide| Interval {
        lo: &m - &radius,
        hi: &m + &radius,
    };
    Ok(LocalizationIntervals {
        intervals: [around(-&half), around(Wide::zero()), around(half)],
        disjoint: c > &(Wide::from_i64(4) * &radius),
    })
}

pub fn zero_interval_counts(z: &[Wide], l: &LocalizationIntervals) -> IntervalCounts {
    let mut counts = IntervalCounts {
        k1: 0,
        k2: 0,
        k3: 0,
        outside: 0,
    };
    for x in z {
        let inside: Vec<bool> = l.intervals.iter().map(|i| i.contains(x)).collect();
        counts.k1 += inside[0] as usize;
        counts.k2 += inside[1] as usize;
        counts.k3 += inside[2] as usize;
        if !inside.iter().any(|&b| b) {
            counts.outside += 1;
        }
    }
    counts
}

const INITIAL_GRID_FACTOR: usize = 16;
const MAX_GRID_FACTOR: usize = 1 << 10;
const MAX_POLISH_STEPS: usize = 2000;

/// All real zeros of `p` in `[lo, hi]`, which must contain all `deg p` of
/// them, each simple.
pub fn find_zeros(p: &MonicPoly, lo: &Wide, hi: &Wide) -> Result<ZeroSet> {
    let deg = p.degree();
    if deg == 0 {
        return Ok(ZeroSet {
            zeros: vec![],
            residual_history: vec![],
        });
    }
    if lo >= hi {
        return Err(Error::InvalidInput("empty search interval".into()));
    }
    let dp = p.derivative()?;
    let mut factor = INITIAL_GRID_FACTOR;
    let mut found = 0;
    while factor <= MAX_GRID_FACTOR {
        let (brackets, exact) = scan(p, lo, hi, factor * deg);
        found = brackets.len() + exact.len();
        if found == deg {
            let mut zeros = Vec::with_capacity(deg);
            let mut history = Vec::with_capacity(deg);
            for x in exact {
                zeros.push(x);
                history.push(vec![Wide::zero()]);
            }
            for (a, b, fa) in brackets {
                let (z, h) = polish(p, &dp, a, b, fa);
                zeros.push(z);
                history.push(h);
            }
            let mut order: Vec<usize> = (0..deg).collect();
            order.sort_by(|&i, &j| zeros[i].partial_cmp(&zeros[j]).unwrap());
            let zeros: Vec<Wide> = order.iter().map(|&i| zeros[i].clone()).collect();
            let residual_history = order.iter().map(|&i| history[i].clone()).collect();
            return Ok(ZeroSet {
                zeros,
                residual_history,
            });
        }
        factor *= 2;
    }
    Err(Error::IsolationFailure { found, expected: deg })
}

fn sign(v: &Wide) -> i32 {
    v.signum()
}

/// Brackets `(a, b, p(a))` with a sign change, plus grid points that are exact zeros.
#[allow(clippy::type_complexity)]
fn scan(p: &MonicPoly, lo: &Wide, hi: &Wide, points: usize) -> (Vec<(Wide, Wide, Wide)>, Vec<Wide>) {
    let step = (hi - lo) / Wide::from(points);
    let mut brackets = Vec::new();
    let mut exact = Vec::new();
    let mut prev: Option<(Wide, Wide)> = None;
    for i in 0..=points {
        let x = if i == points {
            hi.clone()
        } else {
            lo + &step * Wide::from(i)
        };
        let v = p.eval(&x);
        if v.is_zero() {
            exact.push(x);
            prev = None;
            continue;
        }
        if let Some((px, pv)) = &prev {
            if sign(pv) != sign(&v) {
                brackets.push((px.clone(), x.clone(), pv.clone()));
            }
        }
        prev = Some((x, v));
    }
    (brackets, exact)
}

/// Safeguarded Newton on the bracket `[a, b]`; returns the zero and the last
/// three residuals.
fn polish(p: &MonicPoly, dp: &Poly, mut a: Wide, mut b: Wide, fa: Wide) -> (Wide, Vec<Wide>) {
    let sa = sign(&fa);
    let two = Wide::from_i64(2);
    let tol = ten_pow_neg(precision() as i64 - 10);
    let mut x = (&a + &b) / &two;
    let mut history: Vec<Wide> = Vec::new();
    for _ in 0..MAX_POLISH_STEPS {
        let fx = p.eval(&x);
        history.push(fx.abs());
        if fx.is_zero() {
            break;
        }
        if sign(&fx) == sa {
            a = x.clone();
        } else {
            b = x.clone();
        }
        let dfx = dp.eval(&x);
        let newton = if dfx.is_zero() { None } else { Some(&x - &fx / &dfx) };
        let next = match newton {
            Some(n) if n > a && n < b => n,
            _ => (&a + &b) / &two,
        };
        let step = (&next - &x).abs();
        let scale = x.abs().max(Wide::one());
        x = next;
        if step <= &tol * &scale || (&b - &a) <= &tol * &scale {
            history.push(p.eval(&x).abs());
            break;
        }
    }
    let keep = history.len().saturating_sub(3);
    (x, history.split_off(keep))
}

/// `H_n` and its zeros, computed with guard digits sized from the root
/// conditioning and returned at the working precision.
pub fn hermite_zeros(n: &MultiIndex, w: &WeightSystem) -> Result<(MonicPoly, ZeroSet)> {
    let base = precision();
    let (lo, hi) = search_window(n, w);
    let result = with_guard_digits(10, || {
        let outcome = build_by_recurrence(n, w).and_then(|h| find_zeros(&h, &lo, &hi).map(|z| (h, z)));
        match outcome {
            Ok((h, z)) => {
                let lost = conditioning_digits(&h, &z.zeros);
                (Ok((h, z)), lost)
            }
            Err(e @ Error::IsolationFailure { .. }) => (Err(e), 2.0 * (precision() - base) as f64 + 10.0),
            Err(e) => (Err(e), 0.0),
        }
    })?;
    let (h, z) = result;
    let h = MonicPoly::from_coeffs(h.coeffs().iter().map(Wide::rounded).collect())?;
    let z = ZeroSet {
        zeros: z.zeros.iter().map(Wide::rounded).collect(),
        residual_history: z
            .residual_history
            .iter()
            .map(|v| v.iter().map(Wide::rounded).collect())
            .collect(),
    };
    Ok((h, z))
}

/// `[min c_j/2 - sqrt(4|n|+1) - 1, max c_j/2 + sqrt(4|n|+1) + 1]`.
pub fn search_window(n: &MultiIndex, w: &WeightSystem) -> (Wide, Wide) {
    let radius = Wide::from(4 * n.size() + 1).sqrt() + Wide::one();
    let two = Wide::from_i64(2);
    let halves: Vec<Wide> = w.shifts().iter().map(|c| c / &two).collect();
    let min = halves.iter().cloned().reduce(Wide::min).unwrap();
    let max = halves.iter().cloned().reduce(Wide::max).unwrap();
    (min - &radius, max + radius)
}

/// Decimal digits lost when locating the zeros of `p`:
/// `max_z log10(sum |a_i||z|^i / (|p'(z)| max(1,|z|)))`.
pub(crate) fn conditioning_digits(p: &MonicPoly, zeros: &[Wide]) -> f64 {
    let Ok(dp) = p.derivative() else { return 0.0 };
    let abs_coeffs: Vec<Wide> = p.coeffs().iter().map(Wide::abs).collect();
    let abs_poly = Poly::new(abs_coeffs);
    zeros
        .iter()
        .map(|z| {
            let scale = abs_poly.eval(&z.abs());
            let slope = dp.eval(z).abs() * z.abs().max(Wide::one());
            scale.log10_abs() - slope.log10_abs()
        })
        .fold(0.0, f64::max)
}

/// The residual bound of a zero: `10^-(P-15) * max|a_i| * max(1,|z|)^deg`.
pub fn residual_bound(p: &MonicPoly, z: &Wide) -> Wide {
    ten_pow_neg(precision() as i64 - 15) * p.max_abs_coeff() * z.abs().max(Wide::one()).powi(p.degree() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::tol_below_precision;

    fn w(v: i64) -> Wide {
        Wide::from_i64(v)
    }

    #[test]
    fn intervals_for_table_case() {
        let l = bounding_intervals(10, &w(15)).unwrap();
        let r = w(41).sqrt();
        assert_eq!(l.intervals[2].lo, Wide::ratio(15, 2) - &r);
        assert_eq!(l.intervals[2].hi, Wide::ratio(15, 2) + &r);
        assert!(!l.disjoint);
        assert!(bounding_intervals(10, &w(30)).unwrap().disjoint);
        let l = bounding_intervals(1, &w(100)).unwrap();
        assert_eq!(
            l.intervals[1],
            Interval {
                lo: -w(5).sqrt(),
                hi: w(5).sqrt()
            }
        );
    }

    #[test]
    fn counts_by_hand() {
        let l = bounding_intervals(1, &w(100)).unwrap();
        let c = zero_interval_counts(&[w(-1), w(1)], &l);
        assert_eq!(
            c,
            IntervalCounts {
                k1: 0,
                k2: 2,
                k3: 0,
                outside: 0
            }
        );
        let c = zero_interval_counts(&[w(0), w(40)], &l);
        assert_eq!(
            c,
            IntervalCounts {
                k1: 0,
                k2: 1,
                k3: 0,
                outside: 1
            }
        );
    }

    #[test]
    fn unit_circle_roots() {
        let p = MonicPoly::from_coeffs(vec![w(-1), w(0), w(1)]).unwrap();
        let z = find_zeros(&p, &w(-2), &w(2)).unwrap();
        assert_eq!(z.len(), 2);
        assert!((&z.zeros[0] + w(1)).abs() < tol_below_precision(10));
        assert!((&z.zeros[1] - w(1)).abs() < tol_below_precision(10));
    }

    #[test]
    fn triple_one_one_one() {
        let ws = WeightSystem::symmetric(w(15)).unwrap();
        let (_, z) = hermite_zeros(&MultiIndex::diagonal(1), &ws).unwrap();
        let s = Wide::parse("57.75").unwrap().sqrt();
        assert_eq!(z.len(), 3);
        assert!((&z.zeros[0] + &s).abs() < tol_below_precision(10));
        assert!(z.zeros[1].abs() < tol_below_precision(10));
        assert!((&z.zeros[2] - &s).abs() < tol_below_precision(10));
        assert!((z.zeros[2].to_f64() - 7.599342).abs() < 1e-6);
    }

    #[test]
    fn missing_roots_are_an_isolation_failure() {
        // x^2 + 1 has no real zeros
        let p = MonicPoly::from_coeffs(vec![w(1), w(0), w(1)]).unwrap();
        assert_eq!(
            find_zeros(&p, &w(-3), &w(3)).unwrap_err(),
            Error::IsolationFailure { found: 0, expected: 2 }
        );
    }

    #[test]
    fn exact_grid_zero_is_kept() {
        // x (x - 1)(x + 1): 0 lies on the grid
        let p = MonicPoly::from_roots(&[w(0), w(1), w(-1)]);
        let z = find_zeros(&p, &w(-2), &w(2)).unwrap();
        assert_eq!(z.len(), 3);
        assert!(z.zeros[1].is_zero());
    }

    #[test]
    fn residual_contract_on_table_case() {
        let ws = WeightSystem::symmetric(w(15)).unwrap();
        let (h, z) = hermite_zeros(&MultiIndex::diagonal(10), &ws).unwrap();
        assert_eq!(z.len(), 30);
        for x in &z.zeros {
            assert!(h.eval(x).abs() <= residual_bound(&h, x));
        }
        for pair in z.zeros.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }
}
