//! Multiple Hermite polynomials `H_n` for the weights `exp(-x^2 + c_j x)`.
//!
//! Two independent constructions are provided: the nearest-neighbour
//! recurrence
//!
//! ```text
//! x H_n = H_{n+e_k} + (c_k/2) H_n + 1/2 sum_j n_j H_{n-e_j}
//! ```
//!
//! stepped over a memoized table of multi-indices, and the explicit sum of
//! classical Hermite polynomials `H_{|k|}` weighted by binomials and powers of
//! the shifts. The differential identities (lowering, raising, and the
//! fourth-order equation of the symmetric triple) are exposed as residuals.

use std::collections::HashMap;

use dashu_int::UBig;

use crate::error::{Error, Result};
use crate::guard::with_guard_digits;
use crate::numerics::{gaussian_moments, hermite_classical_table, relative_coeff_distance, MonicPoly, Poly, Wide};

/// Multi-index `(n_1, ..., n_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    parts: Vec<usize>,
}

impl MultiIndex {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("multi-index needs at least one part".into()));
        }
        Ok(MultiIndex { parts })
    }

    /// `(n, n, n)`.
    pub fn diagonal(n: usize) -> Self {
        MultiIndex { parts: vec![n; 3] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|n|`, the degree of `H_n`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn minus(&self, j: usize) -> Option<MultiIndex> {
        let mut parts = self.parts.clone();
        parts[j] = parts[j].checked_sub(1)?;
        Some(MultiIndex { parts })
    }
}

/// The shifts `c_1..c_r` of the weights `exp(-x^2 + c_j x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSystem {
    c: Vec<Wide>,
    symmetric: bool,
    chat: Option<Wide>,
}

impl WeightSystem {
    /// General system; shifts must be pairwise distinct.
    pub fn new(c: Vec<Wide>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidInput("need at least one weight".into()));
        }
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                if c[i] == c[j] {
                    return Err(Error::InvalidInput(format!(
                        "shifts must be distinct, c[{i}] = c[{j}] = {}",
                        c[i].to_sci_string(12)
                    )));
                }
            }
        }
        let symmetric = c.len() == 3 && c[1].is_zero() && c[2].is_positive() && c[0] == -&c[2];
        Ok(WeightSystem {
            c,
            symmetric,
            chat: None,
        })
    }

    /// The symmetric triple `(-c, 0, c)`, `c > 0`.
    pub fn symmetric(c: Wide) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidInput("symmetric shift must be positive".into()));
        }
        WeightSystem::new(vec![-&c, Wide::zero(), c])
    }

    /// Symmetric triple with `c = chat sqrt(n)`, remembering `chat`.
    pub fn symmetric_scaled(chat: Wide, n: usize) -> Result<Self> {
        let c = &chat * Wide::from(n).sqrt();
        let mut w = WeightSystem::symmetric(c)?;
        w.chat = Some(chat);
        Ok(w)
    }

    /// Attaches the scaled view `chat = c / sqrt(n)` to a symmetric system.
    pub fn with_scaled_view(mut self, n: usize) -> Result<Self> {
        if !self.symmetric {
            return Err(Error::InvalidInput("scaled view needs the symmetric triple".into()));
        }
        self.chat = Some(&self.c[2] / Wide::from(n).sqrt());
        Ok(self)
    }

    pub fn shifts(&self) -> &[Wide] {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// `c` of the symmetric triple.
    pub fn symmetric_c(&self) -> Option<&Wide> {
        self.symmetric.then(|| &self.c[2])
    }

    pub fn chat(&self) -> Option<&Wide> {
        self.chat.as_ref()
    }

    fn check(&self, n: &MultiIndex) -> Result<()> {
        if n.len() != self.c.len() {
            return Err(Error::DimensionMismatch {
                index: n.len(),
                weights: self.c.len(),
            });
        }
        Ok(())
    }
}

/// Which neighbour the recurrence steps from when descending the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathOrder {
    /// Cyclic `e_1, e_2, ..., e_r, e_1, ...`: step from the last largest part.
    RoundRobin,
    /// `n_1` steps in `e_1` first, then `e_2`, ...: step from the last nonzero part.
    Block,
}

/// Memo table of `H_m` for multi-indices reached by the recurrence.
pub struct HermiteTable<'w> {
    weights: &'w WeightSystem,
    order: PathOrder,
    memo: HashMap<Vec<usize>, Poly>,
}

impl<'w> HermiteTable<'w> {
    pub fn new(weights: &'w WeightSystem, order: PathOrder) -> Self {
        let mut memo = HashMap::new();
        memo.insert(vec![0; weights.len()], Poly::constant(Wide::one()));
        HermiteTable { weights, order, memo }
    }

    fn step_index(&self, m: &[usize]) -> usize {
        match self.order {
            PathOrder::RoundRobin => {
                let max = *m.iter().max().unwrap();
                m.iter().rposition(|&v| v == max).unwrap()
            }
            PathOrder::Block => m.iter().rposition(|&v| v > 0).unwrap(),
        }
    }

    /// `H_m` as a dense coefficient vector.
    pub fn get(&mut self, m: &MultiIndex) -> Result<Poly> {
        self.weights.check(m)?;
        Ok(self.get_parts(m.parts()))
    }

    fn get_parts(&mut self, m: &[usize]) -> Poly {
        if let Some(p) = self.memo.get(m) {
            return p.clone();
        }
        // explicit stack keeps deep lattices off the call stack
        let mut stack: Vec<Vec<usize>> = vec![m.to_vec()];
        while let Some(top) = stack.last().cloned() {
            if self.memo.contains_key(&top) {
                stack.pop();
                continue;
            }
            let k = self.step_index(&top);
            let mut prev = top.clone();
            prev[k] -= 1;
            let mut deps = vec![prev.clone()];
            for j in 0..prev.len() {
                if prev[j] > 0 {
                    let mut d = prev.clone();
                    d[j] -= 1;
                    deps.push(d);
                }
            }
            let missing: Vec<Vec<usize>> = deps.into_iter().filter(|d| !self.memo.contains_key(d)).collect();
            if !missing.is_empty() {
                stack.extend(missing);
                continue;
            }
            // H_{prev+e_k} = (x - c_k/2) H_prev - 1/2 sum_j prev_j H_{prev-e_j}
            let base = &self.memo[&prev];
            let half_ck = &self.weights.c[k] / Wide::from_i64(2);
            let mut next = base.mul_linear(&half_ck);
            for j in 0..prev.len() {
                if prev[j] > 0 {
                    let mut d = prev.clone();
                    d[j] -= 1;
                    let coef = Wide::ratio(prev[j] as i64, 2);
                    next = next.sub(&self.memo[&d].scale(&coef));
                }
            }
            self.memo.insert(top, next);
            stack.pop();
        }
        self.memo[m].clone()
    }
}

fn monic_at_working(p: &Poly) -> MonicPoly {
    MonicPoly::from_coeffs(p.coeffs.iter().map(Wide::rounded).collect())
        .expect("multiple Hermite polynomials are monic")
}

fn lost_digits(term_scale: &Wide, result: &[Wide]) -> f64 {
    let result_scale = result.iter().fold(Wide::zero(), |m, c| m.max(c.abs()));
    (term_scale.log10_abs() - result_scale.log10_abs()).max(0.0)
}

/// `H_n` by the nearest-neighbour recurrence along the round-robin path.
pub fn build_by_recurrence(n: &MultiIndex, w: &WeightSystem) -> Result<MonicPoly> {
    build_by_recurrence_with(n, w, PathOrder::RoundRobin)
}

pub fn build_by_recurrence_with(n: &MultiIndex, w: &WeightSystem, order: PathOrder) -> Result<MonicPoly> {
    w.check(n)?;
    let p = with_guard_digits(16, || {
        let mut table = HermiteTable::new(w, order);
        let p = table.get_parts(n.parts());
        // growth of the recurrence is mild; a fixed guard is enough
        (p, 0.0)
    });
    Ok(monic_at_working(&p))
}

/// `H_n` from the explicit formula
/// `(-1)^|n| 2^-|n| sum_k prod_j C(n_j,k_j) c_j^(n_j-k_j) (-1)^|k| H_|k|(x)`.
pub fn build_explicit(n: &MultiIndex, w: &WeightSystem) -> Result<MonicPoly> {
    w.check(n)?;
    let total = n.size();
    let hermite = hermite_classical_table(total);
    let p = with_guard_digits(20, || {
        // A_s = sum_{|k| = s} prod_j C(n_j,k_j) c_j^(n_j-k_j), the coefficient of
        // t^s in prod_j (t + c_j)^(n_j)
        let mut a = vec![Wide::one()];
        for (&nj, cj) in n.parts().iter().zip(w.shifts()) {
            let factor: Vec<Wide> = (0..=nj)
                .map(|k| Wide::from_ibig(binomial(nj, k).into()) * cj.powi((nj - k) as u32))
                .collect();
            a = Poly::new(a).mul(&Poly::new(factor)).coeffs;
        }
        let mut coeffs = vec![Wide::zero(); total + 1];
        let mut scale = Wide::zero();
        for (s, a_s) in a.iter().enumerate() {
            let sign_a = if s % 2 == 1 { -a_s } else { a_s.clone() };
            for (i, h) in hermite[s].iter().enumerate() {
                let term = &sign_a * Wide::from_ibig(h.clone());
                scale = scale.max(term.abs());
                coeffs[i] += term;
            }
        }
        let norm = Wide::from_i64(2).powi(total as u32);
        let norm = if total % 2 == 1 { -norm } else { norm };
        let coeffs: Vec<Wide> = coeffs.iter().map(|c| c / &norm).collect();
        let lost = lost_digits(&(scale / norm.abs()), &coeffs);
        (Poly::new(coeffs), lost)
    });
    Ok(monic_at_working(&p))
}

fn binomial(n: usize, k: usize) -> UBig {
    let k = k.min(n - k);
    let mut acc = UBig::ONE;
    for i in 0..k {
        acc = acc * UBig::from(n - i) / UBig::from(i + 1);
    }
    acc
}

/// Relative coefficient residual of `H_n' = sum_j n_j H_{n-e_j}`.
pub fn lowering_residual(n: &MultiIndex, w: &WeightSystem) -> Result<Wide> {
    w.check(n)?;
    if n.size() == 0 {
        return Err(Error::InvalidInput("lowering operator needs |n| >= 1".into()));
    }
    let mut table = HermiteTable::new(w, PathOrder::RoundRobin);
    let h = table.get(n)?;
    let lhs = h.derivative();
    let mut rhs = Poly::constant(Wide::zero());
    for j in 0..n.len() {
        if let Some(m) = n.minus(j) {
            rhs = rhs.add(&table.get(&m)?.scale(&Wide::from(n.parts()[j])));
        }
    }
    Ok(relative_coeff_distance(&lhs.coeffs, &rhs.coeffs))
}

/// Relative coefficient residual of
/// `H_{n-e_j}' + (-2x + c_j) H_{n-e_j} + 2 H_n = 0` (`j` is zero based).
pub fn raising_residual(j: usize, n: &MultiIndex, w: &WeightSystem) -> Result<Wide> {
    w.check(n)?;
    if j >= n.len() {
        return Err(Error::InvalidInput(format!("weight index {j} out of range")));
    }
    let lower = n
        .minus(j)
        .ok_or_else(|| Error::InvalidInput(format!("raising operator needs n[{j}] >= 1")))?;
    let mut table = HermiteTable::new(w, PathOrder::RoundRobin);
    let h = table.get(n)?;
    let g = table.get(&lower)?;
    let shifted = g.mul_linear(&Wide::zero()).scale(&Wide::from_i64(-2));
    let lhs = g
        .derivative()
        .add(&shifted)
        .add(&g.scale(&w.c[j]))
        .add(&h.scale(&Wide::from_i64(2)));
    let scale = h.max_abs_coeff().max(g.max_abs_coeff()).max(Wide::one());
    Ok(lhs.max_abs_coeff() / scale)
}

/// Residual of the fourth-order equation of `y = H_{n,n,n}` for the symmetric
/// triple `(-c, 0, c)`:
///
/// `y'''' - 6x y''' + (12x^2 - c^2 - 6) y'' + (-8x^3 + (2c^2 + 12)x) y'
///  + 2n (3y'' - 12x y' + (12x^2 - c^2 - 6) y) = 0`,
///
/// as `max_x |LHS - RHS| / (1 + largest term)`.
pub fn ode_residual(n: usize, w: &WeightSystem, xs: &[Wide]) -> Result<Wide> {
    let c = w
        .symmetric_c()
        .ok_or_else(|| Error::InvalidInput("ODE residual needs the symmetric triple".into()))?;
    let y = build_by_recurrence(&MultiIndex::diagonal(n), w)?.into_poly();
    let d1 = y.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let d4 = d3.derivative();
    let c2 = c.square();
    let nn = Wide::from(n);
    let mut worst = Wide::zero();
    for x in xs {
        let x2 = x.square();
        let (y0, y1, y2, y3, y4) = (y.eval(x), d1.eval(x), d2.eval(x), d3.eval(x), d4.eval(x));
        let q = Wide::from_i64(12) * &x2 - &c2 - Wide::from_i64(6);
        let lhs_terms = [
            y4,
            -(Wide::from_i64(6) * x * &y3),
            &q * &y2,
            (-(Wide::from_i64(8) * &x2 * x) + (Wide::from_i64(2) * &c2 + Wide::from_i64(12)) * x) * &y1,
        ];
        let two_n = Wide::from_i64(2) * &nn;
        let rhs_terms = [
            -(&two_n * Wide::from_i64(3) * &y2),
            &two_n * Wide::from_i64(12) * x * &y1,
            -(&two_n * &q * &y0),
        ];
        let largest = lhs_terms
            .iter()
            .chain(rhs_terms.iter())
            .fold(Wide::zero(), |m, t| m.max(t.abs()));
        let lhs: Wide = lhs_terms.iter().sum();
        let rhs: Wide = rhs_terms.iter().sum();
        let r = (lhs - rhs).abs() / (Wide::one() + largest);
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Largest normalized orthogonality defect
/// `|\int x^k H_n(x) w_j(x) dx| / \int |x^k H_n| ... ` over `0 <= k < n_j` and all `j`,
/// computed exactly from the moment vectors (raw weights). The denominator is
/// the sum of the magnitudes of the terms in the moment dot product.
pub fn orthogonality_defect(h: &MonicPoly, n: &MultiIndex, w: &WeightSystem) -> Result<Wide> {
    w.check(n)?;
    let deg = h.degree();
    let mut worst = Wide::zero();
    for (j, cj) in w.shifts().iter().enumerate() {
        let nj = n.parts()[j];
        if nj == 0 {
            continue;
        }
        let mom = gaussian_moments(cj, deg + nj, false);
        for k in 0..nj {
            let mut sum = Wide::zero();
            let mut norm = Wide::zero();
            for (i, hi) in h.coeffs().iter().enumerate() {
                let t = hi * &mom.m[i + k];
                norm += t.abs();
                sum += t;
            }
            worst = worst.max(sum.abs() / norm);
        }
    }
    Ok(worst)
}
