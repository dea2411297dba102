//! Simultaneous Gaussian quadrature at the zeros of `H_{n,...,n}`.
//!
//! One node set serves all `r` weights; each weight gets its own interpolatory
//! weight vector, exact for polynomials of degree `(r+1)n - 1`. Nodes and weights
//! are kept at the precision they were computed in (working precision plus the
//! guard the construction needed), so downstream checks can run against the
//! same values without re-deriving them.

use crate::error::{Error, Result};
use crate::guard::with_guard_digits;
use crate::mhermite::{MultiIndex, WeightSystem};
use crate::numerics::{gaussian_moments, precision, with_precision, MonicPoly, Poly, Wide};
use crate::zeros::{hermite_zeros, zero_interval_counts, IntervalCounts, LocalizationIntervals, ZeroSet};

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub n: usize,
    pub weights_system: WeightSystem,
    pub normalized: bool,
    /// `H_{n,...,n}`.
    pub poly: MonicPoly,
    pub nodes: ZeroSet,
    /// `weights[j][k]` is `lambda_k^{(j)}`.
    pub weights: Vec<Vec<Wide>>,
    /// Decimal digits the rule was computed with.
    pub digits: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Wide] {
        self.nodes.as_slice()
    }

    /// Moments of weight `j` in the rule's normalization.
    pub fn moments(&self, j: usize, count: usize) -> Vec<Wide> {
        gaussian_moments(&self.weights_system.shifts()[j], count, self.normalized).m
    }

    /// Highest degree the rule integrates exactly.
    pub fn exact_degree(&self) -> usize {
        (self.weights_system.len() + 1) * self.n - 1
    }
}

/// `H = p q r` grouped by localization interval.
#[derive(Clone, Debug)]
pub struct FactoredNodes {
    pub factors: [MonicPoly; 3],
    /// Indices into the rule's nodes belonging to each factor.
    pub blocks: [Vec<usize>; 3],
}

/// Weights `lambda_k = \int l_k` against `moments`, with the Lagrange basis
/// `l_k = p / ((x - x_k) p'(x_k))`. Also returns the decimal digits lost to
/// cancellation in the worst weight.
pub fn interpolatory_weights(p: &MonicPoly, nodes: &[Wide], moments: &[Wide]) -> Result<(Vec<Wide>, f64)> {
    let dp = p.derivative()?;
    let mut out = Vec::with_capacity(nodes.len());
    let mut lost: f64 = 0.0;
    for x in nodes {
        let (q, _) = p.deflate_at(x)?;
        let d = dp.eval(x);
        if d.is_zero() {
            return Err(Error::Singular);
        }
        let mut sum = Wide::zero();
        let mut scale = Wide::zero();
        for (c, m) in q.coeffs().iter().zip(moments) {
            let t = c * m;
            scale += t.abs();
            sum += t;
        }
        if !sum.is_zero() {
            lost = lost.max(scale.log10_abs() - sum.log10_abs());
        }
        out.push(sum / d);
    }
    Ok((out, lost))
}

/// Rule for the multi-index `(n, ..., n)`; `normalized` selects unit-mass normal
/// densities instead of the raw weights `exp(-x^2 + c_j x)`.
pub fn build_rule(n: usize, w: &WeightSystem, normalized: bool) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let index = MultiIndex::new(vec![n; w.len()])?;
    let base = precision();
    with_guard_digits(20, || {
        let digits = precision();
        let built = hermite_zeros(&index, w).and_then(|(poly, nodes)| {
            let mut weights = Vec::with_capacity(w.len());
            let mut lost: f64 = 0.0;
            for c in w.shifts() {
                let mom = gaussian_moments(c, nodes.len(), normalized);
                let (lam, l) = interpolatory_weights(&poly, nodes.as_slice(), &mom.m)?;
                lost = lost.max(l);
                weights.push(lam);
            }
            let rule = QuadratureRule {
                n,
                weights_system: w.clone(),
                normalized,
                poly,
                nodes,
                weights,
                digits,
            };
            Ok((rule, lost))
        });
        match built {
            Ok((rule, lost)) => (Ok(rule), lost),
            Err(e @ Error::IsolationFailure { .. }) => (Err(e), 2.0 * (digits - base) as f64 + 10.0),
            Err(e) => (Err(e), 0.0),
        }
    })
}

/// `sum_k lambda_k^{(j)} f(x_k)`.
pub fn apply_rule(rule: &QuadratureRule, j: usize, fvals: &[Wide]) -> Result<Wide> {
    let lam = rule
        .weights
        .get(j)
        .ok_or_else(|| Error::InvalidInput(format!("weight index {j} out of range")))?;
    if fvals.len() != lam.len() {
        return Err(Error::InvalidInput(format!(
            "expected {} function values, got {}",
            lam.len(),
            fvals.len()
        )));
    }
    Ok(lam.iter().zip(fvals).map(|(l, f)| l * f).sum())
}

/// `errors[d][j] = |Q_j(x^d) - mu_d^{(j)}| / max(1, |mu_d^{(j)}|)` for `d <= up_to`.
pub fn exactness_report(rule: &QuadratureRule, up_to: usize) -> Vec<Vec<Wide>> {
    with_precision(rule.digits, || {
        let r = rule.weights_system.len();
        let moments: Vec<Vec<Wide>> = (0..r).map(|j| rule.moments(j, up_to + 1)).collect();
        let mut powers: Vec<Wide> = vec![Wide::one(); rule.len()];
        let mut report = Vec::with_capacity(up_to + 1);
        for d in 0..=up_to {
            let row = (0..r)
                .map(|j| {
                    let q = apply_rule(rule, j, &powers).expect("matching lengths");
                    let mu = &moments[j][d];
                    (q - mu).abs() / mu.abs().max(Wide::one())
                })
                .collect();
            report.push(row);
            for (p, x) in powers.iter_mut().zip(rule.nodes()) {
                *p = &*p * x;
            }
        }
        report
    })
}

/// Groups the nodes of a three-weight rule by localization interval.
pub fn factor_by_intervals(rule: &QuadratureRule, l: &LocalizationIntervals) -> Result<FactoredNodes> {
    let n = rule.n;
    let counts = zero_interval_counts(rule.nodes(), l);
    if rule.weights_system.len() != 3
        || counts
            != (IntervalCounts {
                k1: n,
                k2: n,
                k3: n,
                outside: 0,
            })
    {
        return Err(Error::InvalidInput(format!(
            "nodes are not localized as (n, n, n, 0): ({}, {}, {}, {})",
            counts.k1, counts.k2, counts.k3, counts.outside
        )));
    }
    let mut blocks: [Vec<usize>; 3] = Default::default();
    for (k, x) in rule.nodes().iter().enumerate() {
        let i = l.intervals.iter().position(|iv| iv.contains(x)).unwrap();
        blocks[i].push(k);
    }
    let factors = with_precision(rule.digits, || {
        blocks
            .clone()
            .map(|b| MonicPoly::from_roots(b.iter().map(|&k| &rule.nodes()[k])))
    });
    Ok(FactoredNodes { factors, blocks })
}

/// Sign of `lambda_k^{(j)}` predicted for the symmetric triple with large `c`
/// (`j`, `k` one based).
pub fn expected_sign(j: usize, k: usize, n: usize) -> i32 {
    let alt = |e: usize| if e.is_multiple_of(2) { 1 } else { -1 };
    match j {
        1 if k <= n => 1,
        1 => alt(k - n + 1),
        2 if k > n && k <= 2 * n => 1,
        2 if k <= n => alt(n - k),
        2 => alt(k + 1),
        3 if k > 2 * n => 1,
        3 => alt(k),
        _ => panic!("weight index must be 1, 2 or 3"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignReport {
    pub holds: bool,
    /// First `k` (one based) whose sign differs from the prediction.
    pub first_violation: Option<usize>,
}

pub fn sign_pattern_check(rule: &QuadratureRule) -> Vec<SignReport> {
    rule.weights
        .iter()
        .enumerate()
        .map(|(j, lam)| {
            let first_violation = lam
                .iter()
                .enumerate()
                .find(|(k, l)| l.signum() != expected_sign(j + 1, k + 1, rule.n))
                .map(|(k, _)| k + 1);
            SignReport {
                holds: first_violation.is_none(),
                first_violation,
            }
        })
        .collect()
}

/// Checks the factorization identities: for a node `x_k` of block `i` and weight `j`,
///
/// `lambda_k^{(j)} M(x_k) = \int l_k^{(i)} M w_j`,
///
/// where `l^{(i)}` is the Lagrange basis on the zeros of the `i`-th factor and
/// `M` is the product of the other two factors when `i = j`, else the square of
/// the `j`-th factor times the remaining one. The right side is computed from
/// exact moments. Returns the largest relative discrepancy.
pub fn gauss_factor_oracle(rule: &QuadratureRule, f: &FactoredNodes) -> Wide {
    let nodes = rule.nodes();
    let mut worst = Wide::zero();
    let moment_count = 4 * rule.n;
    for j in 0..3 {
        for i in 0..3 {
            for &k in &f.blocks[i] {
                let value = with_guard_digits(20, || {
                    with_precision(precision().max(rule.digits), || {
                        let (m_poly, m_val) = multiplier(rule, f, i, j, k);
                        let others: Vec<&Wide> = f.blocks[i].iter().filter(|&&m| m != k).map(|&m| &nodes[m]).collect();
                        let denom: Wide = others.iter().map(|y| &nodes[k] - *y).fold(Wide::one(), |a, b| a * b);
                        let ell = MonicPoly::from_roots(others).into_poly().scale(&(Wide::one() / denom));
                        let integrand = ell.mul(&m_poly);
                        let mom = rule.moments(j, moment_count);
                        let mut sum = Wide::zero();
                        let mut scale = Wide::zero();
                        for (c, m) in integrand.coeffs.iter().zip(&mom) {
                            let t = c * m;
                            scale += t.abs();
                            sum += t;
                        }
                        let lost = if sum.is_zero() {
                            0.0
                        } else {
                            scale.log10_abs() - sum.log10_abs()
                        };
                        let lhs = &rule.weights[j][k] * m_val;
                        ((lhs, sum), lost)
                    })
                });
                let (lhs, rhs) = value;
                let rel = (&lhs - &rhs).abs() / lhs.abs().max(rhs.abs());
                worst = worst.max(rel);
            }
        }
    }
    worst.rounded()
}

/// The polynomial `M` of the factorization identity and its value at node `k`,
/// the latter as a product of node differences.
fn multiplier(rule: &QuadratureRule, f: &FactoredNodes, i: usize, j: usize, k: usize) -> (Poly, Wide) {
    let x = &rule.nodes()[k];
    let value_of = |b: usize| -> Wide {
        f.blocks[b]
            .iter()
            .map(|&m| x - &rule.nodes()[m])
            .fold(Wide::one(), |a, b| a * b)
    };
    if i == j {
        let (a, b) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        (
            f.factors[a].as_poly().mul(&f.factors[b].as_poly()),
            value_of(a) * value_of(b),
        )
    } else {
        let other = 3 - i - j;
        let fj = f.factors[j].as_poly();
        let vj = value_of(j);
        (
            fj.mul(&fj).mul(&f.factors[other].as_poly()),
            vj.square() * value_of(other),
        )
    }
}

/// `|lambda_k^{(j)}|^{1/n}` for the nodes outside the positive block of weight `j`
/// (`j` zero based), as `(k, value)` with `k` one based.
pub fn decay_profile(rule: &QuadratureRule, j: usize) -> Vec<(usize, f64)> {
    let n = rule.n;
    let positive = match j {
        0 => 1..=n,
        1 => n + 1..=2 * n,
        _ => 2 * n + 1..=3 * n,
    };
    rule.weights[j]
        .iter()
        .enumerate()
        .filter(|(k, _)| !positive.contains(&(k + 1)))
        .map(|(k, l)| (k + 1, 10f64.powf(l.log10_abs() / n as f64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{normal_moments, tol_below_precision};

    fn w(v: i64) -> Wide {
        Wide::from_i64(v)
    }

    fn sym(c: i64) -> WeightSystem {
        WeightSystem::symmetric(w(c)).unwrap()
    }

    fn close(a: &Wide, b: &Wide, offset: usize) -> bool {
        (a - b).abs() <= tol_below_precision(offset) * a.abs().max(b.abs()).max(Wide::one())
    }

    #[test]
    fn apply_examples() {
        let rule = build_rule(3, &sym(15), true).unwrap();
        let ones = vec![w(1); 9];
        for j in 0..3 {
            assert!(close(&apply_rule(&rule, j, &ones).unwrap(), &w(1), 20));
        }
        let xs = rule.nodes().to_vec();
        assert!(close(&apply_rule(&rule, 0, &xs).unwrap(), &Wide::ratio(-15, 2), 20));
        let sq: Vec<Wide> = xs.iter().map(Wide::square).collect();
        assert!(close(&apply_rule(&rule, 1, &sq).unwrap(), &Wide::ratio(1, 2), 20));
        assert!(apply_rule(&rule, 0, &xs[..3]).is_err());
        assert!(apply_rule(&rule, 3, &xs).is_err());
    }

    #[test]
    fn raw_weights_sum_to_mass() {
        let ws = sym(6);
        let rule = build_rule(2, &ws, false).unwrap();
        for (j, c) in ws.shifts().iter().enumerate() {
            let s: Wide = rule.weights[j].iter().sum();
            assert!(close(&s, &crate::numerics::raw_mass(c), 20));
        }
    }

    fn solve(mut a: Vec<Vec<Wide>>, mut b: Vec<Wide>) -> Vec<Wide> {
        let n = b.len();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap())
                .unwrap();
            a.swap(col, piv);
            b.swap(col, piv);
            for row in col + 1..n {
                let f = &a[row][col] / &a[col][col];
                for k in col..n {
                    let t = &f * &a[col][k];
                    a[row][k] -= t;
                }
                let t = &f * &b[col];
                b[row] -= t;
            }
        }
        let mut x = vec![Wide::zero(); n];
        for row in (0..n).rev() {
            let mut s = b[row].clone();
            for k in row + 1..n {
                s -= &a[row][k] * &x[k];
            }
            x[row] = s / &a[row][row];
        }
        x
    }

    #[test]
    fn single_block_matches_vandermonde_solve() {
        let rule = build_rule(1, &sym(15), true).unwrap();
        let xs = rule.nodes();
        for j in 0..3 {
            let mom = rule.moments(j, 3);
            let a: Vec<Vec<Wide>> = (0..3).map(|m| xs.iter().map(|x| x.powi(m)).collect()).collect();
            let lam = solve(a, mom);
            for k in 0..3 {
                assert!(close(&lam[k], &rule.weights[j][k], 20), "j={j} k={k}");
            }
        }
    }

    #[test]
    fn exactness_and_witness() {
        let rule = build_rule(5, &sym(15), true).unwrap();
        let report = exactness_report(&rule, 20);
        let tiny = Wide::parse("1e-20").unwrap();
        for row in &report[..20] {
            assert!(row.iter().all(|e| e <= &tiny));
        }
        let witness = Wide::parse("1e-6").unwrap();
        assert!(report[20].iter().any(|e| e > &witness));
        let rule = build_rule(1, &sym(30), true).unwrap();
        assert!(exactness_report(&rule, 3).iter().flatten().all(|e| e <= &tiny));
    }

    #[test]
    fn lagrange_basis_reproduces_weights() {
        let rule = build_rule(2, &sym(15), true).unwrap();
        let xs = rule.nodes();
        for k in 0..xs.len() {
            let (q, _) = rule.poly.deflate_at(&xs[k]).unwrap();
            let d = rule.poly.derivative().unwrap().eval(&xs[k]);
            let vals: Vec<Wide> = xs.iter().map(|x| q.eval(x) / &d).collect();
            for j in 0..3 {
                assert!(close(&apply_rule(&rule, j, &vals).unwrap(), &rule.weights[j][k], 15));
            }
        }
    }

    #[test]
    fn mirror_symmetry() {
        let rule = build_rule(4, &sym(15), true).unwrap();
        let m = rule.len();
        for k in 0..m {
            assert!(close(&rule.weights[0][k], &rule.weights[2][m - 1 - k], 15));
            assert!(close(&rule.weights[1][k], &rule.weights[1][m - 1 - k], 15));
        }
    }

    #[test]
    fn scaled_picture_gives_the_same_weights() {
        let n = 4;
        let rule = build_rule(n, &sym(15), true).unwrap();
        let root_n = Wide::from(n).sqrt();
        let scaled: Vec<Wide> = rule.nodes().iter().map(|x| x / &root_n).collect();
        let p = MonicPoly::from_roots(&scaled);
        let chat = w(15) / &root_n;
        let var = Wide::one() / Wide::from(2 * n);
        for (j, sign) in [-1i64, 0, 1].into_iter().enumerate() {
            let mean = &chat * Wide::ratio(sign, 2);
            let mom = normal_moments(&mean, &var, &Wide::one(), 3 * n);
            let (lam, _) = interpolatory_weights(&p, &scaled, &mom).unwrap();
            for k in 0..3 * n {
                assert!(close(&lam[k], &rule.weights[j][k], 15), "j={j} k={k}");
            }
        }
    }

    #[test]
    fn sign_rule_formulas() {
        // n = 2: weight 1 is + + + - + -, weight 3 is its mirror
        let s1: Vec<i32> = (1..=6).map(|k| expected_sign(1, k, 2)).collect();
        assert_eq!(s1, vec![1, 1, 1, -1, 1, -1]);
        let s3: Vec<i32> = (1..=6).map(|k| expected_sign(3, k, 2)).collect();
        assert_eq!(s3, vec![-1, 1, -1, 1, 1, 1]);
        let s2: Vec<i32> = (1..=6).map(|k| expected_sign(2, k, 2)).collect();
        assert_eq!(s2, vec![-1, 1, 1, 1, 1, -1]);
    }

    #[test]
    fn factor_oracle_small() {
        for n in 1..=2 {
            let ws = sym(30);
            let rule = build_rule(n, &ws, true).unwrap();
            let l = crate::zeros::bounding_intervals(n, &w(30)).unwrap();
            let f = factor_by_intervals(&rule, &l).unwrap();
            let prod = f.factors[0].mul(&f.factors[1]).mul(&f.factors[2]);
            assert!(prod.relative_distance(&rule.poly) < tol_below_precision(10));
            let d = gauss_factor_oracle(&rule, &f);
            assert!(d < tol_below_precision(15), "n={n}: {}", d.to_sci_string(5));
        }
    }

    #[test]
    fn factoring_needs_localized_nodes() {
        let rule = build_rule(10, &sym(15), true).unwrap();
        let l = crate::zeros::bounding_intervals(10, &w(15)).unwrap();
        assert!(factor_by_intervals(&rule, &l).is_err());
    }
}
