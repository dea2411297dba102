//! Dense polynomials in ascending coefficient order.

use super::Wide;
use crate::error::{Error, Result};

/// General dense polynomial, `coeffs[i]` multiplies `x^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<Wide>,
}

impl Poly {
    pub fn new(coeffs: Vec<Wide>) -> Self {
        let mut p = Poly { coeffs };
        if p.coeffs.is_empty() {
            p.coeffs.push(Wide::zero());
        }
        p
    }

    pub fn constant(c: Wide) -> Self {
        Poly { coeffs: vec![c] }
    }

    /// Nominal degree (length - 1), leading zeros are not trimmed.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &Wide) -> Wide {
        horner(&self.coeffs, x)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::constant(Wide::zero());
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Wide::from(i))
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Wide::one()))
    }

    pub fn scale(&self, s: &Wide) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        Poly::new(convolve(&self.coeffs, &other.coeffs))
    }

    /// Multiplies by the linear factor `(x - a)`.
    pub fn mul_linear(&self, a: &Wide) -> Poly {
        let mut out = vec![Wide::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * a;
        }
        Poly::new(out)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> Wide {
        self.coeffs.iter().fold(Wide::zero(), |m, c| m.max(c.abs()))
    }

    /// Coefficients of `p(x + s)`.
    pub fn taylor_shift(&self, s: &Wide) -> Poly {
        // repeated synthetic division
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * s;
                c[j] += t;
            }
        }
        Poly::new(c)
    }

    /// `sum_i coeffs[i] * moments[i]`, the integral of `p` against a weight with
    /// the given moments.
    pub fn integrate_against(&self, moments: &[Wide]) -> Wide {
        assert!(
            moments.len() >= self.coeffs.len(),
            "need {} moments, got {}",
            self.coeffs.len(),
            moments.len()
        );
        self.coeffs.iter().zip(moments).map(|(c, m)| c * m).sum()
    }
}

/// Monic polynomial; the leading coefficient is exactly one.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicPoly {
    coeffs: Vec<Wide>,
}

impl MonicPoly {
    pub fn one() -> Self {
        MonicPoly {
            coeffs: vec![Wide::one()],
        }
    }

    /// Takes an ascending coefficient vector and normalizes the last entry to one
    /// (the caller asserts it is one up to rounding).
    pub fn from_coeffs(mut coeffs: Vec<Wide>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::InvalidInput("empty coefficient vector".into())),
            Some(lead) if lead.is_zero() => Err(Error::InvalidInput("leading coefficient is zero".into())),
            Some(_) => {
                let n = coeffs.len();
                coeffs[n - 1] = Wide::one();
                Ok(MonicPoly { coeffs })
            }
        }
    }

    /// Divides through by the leading coefficient.
    pub fn normalize(p: &Poly) -> Result<Self> {
        let lead = p.coeffs.last().cloned().unwrap_or_default();
        if lead.is_zero() {
            return Err(Error::InvalidInput("leading coefficient is zero".into()));
        }
        let coeffs: Vec<Wide> = p.coeffs.iter().map(|c| c / &lead).collect();
        MonicPoly::from_coeffs(coeffs)
    }

    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Wide>) -> Self {
        let mut p = Poly::constant(Wide::one());
        for r in roots {
            p = p.mul_linear(r);
        }
        MonicPoly::from_coeffs(p.coeffs).expect("product of linear factors is monic")
    }

    pub fn coeffs(&self) -> &[Wide] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    pub fn into_poly(self) -> Poly {
        Poly::new(self.coeffs)
    }

    pub fn eval(&self, x: &Wide) -> Wide {
        horner(&self.coeffs, x)
    }

    /// Derivative coefficients; degree 0 has no meaningful derivative.
    pub fn derivative(&self) -> Result<Poly> {
        if self.degree() == 0 {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.as_poly().derivative())
    }

    /// Synthetic division by `(x - x0)`: returns the monic quotient and `p(x0)`.
    pub fn deflate_at(&self, x0: &Wide) -> Result<(MonicPoly, Wide)> {
        let d = self.degree();
        if d == 0 {
            return Err(Error::InvalidInput("cannot deflate a constant".into()));
        }
        let mut q = vec![Wide::zero(); d];
        let mut acc = self.coeffs[d].clone();
        for i in (0..d).rev() {
            q[i] = acc.clone();
            acc = &self.coeffs[i] + x0 * &acc;
        }
        Ok((MonicPoly { coeffs: q }, acc))
    }

    pub fn mul(&self, other: &MonicPoly) -> MonicPoly {
        MonicPoly::from_coeffs(convolve(&self.coeffs, &other.coeffs)).expect("monic product")
    }

    pub fn max_abs_coeff(&self) -> Wide {
        self.coeffs.iter().fold(Wide::zero(), |m, c| m.max(c.abs()))
    }

    /// Max coefficient difference relative to the larger coefficient magnitude.
    pub fn relative_distance(&self, other: &MonicPoly) -> Wide {
        relative_coeff_distance(&self.coeffs, &other.coeffs)
    }
}

/// `max_i |a_i - b_i| / max_i max(|a_i|, |b_i|)`, shorter vectors padded with zero.
pub fn relative_coeff_distance(a: &[Wide], b: &[Wide]) -> Wide {
    let n = a.len().max(b.len());
    let zero = Wide::zero();
    let mut diff = Wide::zero();
    let mut scale = Wide::zero();
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        diff = diff.max((x - y).abs());
        scale = scale.max(x.abs()).max(y.abs());
    }
    if scale.is_zero() {
        diff
    } else {
        diff / scale
    }
}

fn horner(coeffs: &[Wide], x: &Wide) -> Wide {
    let mut acc = Wide::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn convolve(a: &[Wide], b: &[Wide]) -> Vec<Wide> {
    let mut out = vec![Wide::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: i64) -> Wide {
        Wide::from_i64(v)
    }

    fn monic(c: &[i64]) -> MonicPoly {
        MonicPoly::from_coeffs(c.iter().map(|&v| w(v)).collect()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let p = monic(&[-1, 0, 1]);
        assert_eq!(p.eval(&w(2)), w(3));
        assert_eq!(p.eval(&w(1)), w(0));
        assert_eq!(MonicPoly::one().eval(&w(7)), w(1));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(monic(&[-1, 0, 1]).derivative().unwrap().coeffs, vec![w(0), w(2)]);
        assert_eq!(
            monic(&[0, 0, 0, 1]).derivative().unwrap().coeffs,
            vec![w(0), w(0), w(3)]
        );
        assert_eq!(monic(&[5, 1]).derivative().unwrap().coeffs, vec![w(1)]);
        assert_eq!(MonicPoly::one().derivative(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn deflate_examples() {
        let (q, r) = monic(&[-1, 0, 1]).deflate_at(&w(1)).unwrap();
        assert_eq!(q.coeffs(), &[w(1), w(1)]);
        assert_eq!(r, w(0));
        let (q, r) = monic(&[-1, 0, 1]).deflate_at(&w(0)).unwrap();
        assert_eq!(q.coeffs(), &[w(0), w(1)]);
        assert_eq!(r, w(-1));
        let (q, r) = monic(&[0, 0, 0, 1]).deflate_at(&w(2)).unwrap();
        assert_eq!(q.coeffs(), &[w(4), w(2), w(1)]);
        assert_eq!(r, w(8));
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = monic(&[3, -2, 0, 5, 1]).into_poly();
        let s = Wide::ratio(7, 3);
        let shifted = p.taylor_shift(&s);
        let x = Wide::ratio(-5, 11);
        let err = (shifted.eval(&x) - p.eval(&(&x + &s))).abs();
        assert!(err.log10_abs() < -60.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn deflation_reconstructs(coeffs in prop::collection::vec(-1000i64..1000, 1..20), x0 in -50i64..50, den in 1i64..17) {
            let mut c: Vec<Wide> = coeffs.iter().map(|&v| Wide::ratio(v, 7)).collect();
            c.push(Wide::one());
            let p = MonicPoly::from_coeffs(c).unwrap();
            let x0 = Wide::ratio(x0, den);
            let (q, r) = p.deflate_at(&x0).unwrap();
            prop_assert_eq!(&r, &p.eval(&x0));
            let rebuilt = q.as_poly().mul_linear(&x0).add(&Poly::constant(r));
            // relative to the size of the terms that enter the reconstruction
            let scale = q.max_abs_coeff().max(x0.abs() * q.max_abs_coeff()).max(p.max_abs_coeff());
            let diff = relative_coeff_distance(&rebuilt.coeffs, p.coeffs()) * p.max_abs_coeff();
            let rel = diff / scale;
            let tol = Wide::from_i64(10).powi((crate::numerics::precision() - 5) as u32);
            prop_assert!(rel * tol < Wide::one());
        }
    }
}
