use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::Wide;

/// Complex number with [`Wide`] parts.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CWide {
    pub re: Wide,
    pub im: Wide,
}

impl CWide {
    pub fn new(re: Wide, im: Wide) -> Self {
        CWide { re, im }
    }

    pub fn real(re: Wide) -> Self {
        CWide { re, im: Wide::zero() }
    }

    pub fn zero() -> Self {
        CWide::real(Wide::zero())
    }

    pub fn from_c64(z: Complex64) -> Self {
        CWide::new(Wide::from_f64(z.re), Wide::from_f64(z.im))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(&self) -> Self {
        CWide::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Wide {
        self.re.square() + self.im.square()
    }

    pub fn abs(&self) -> Wide {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: &Wide) -> Self {
        CWide::new(&self.re * s, &self.im * s)
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        CWide::new(&self.re / &d, -(&self.im / &d))
    }
}

impl From<Wide> for CWide {
    fn from(re: Wide) -> Self {
        CWide::real(re)
    }
}

impl Add<&CWide> for &CWide {
    type Output = CWide;
    fn add(self, rhs: &CWide) -> CWide {
        CWide::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&CWide> for &CWide {
    type Output = CWide;
    fn sub(self, rhs: &CWide) -> CWide {
        CWide::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&CWide> for &CWide {
    type Output = CWide;
    fn mul(self, rhs: &CWide) -> CWide {
        CWide::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&CWide> for &CWide {
    type Output = CWide;
    fn div(self, rhs: &CWide) -> CWide {
        let d = rhs.norm_sqr();
        CWide::new(
            (&self.re * &rhs.re + &self.im * &rhs.im) / &d,
            (&self.im * &rhs.re - &self.re * &rhs.im) / &d,
        )
    }
}

impl Neg for &CWide {
    type Output = CWide;
    fn neg(self) -> CWide {
        CWide::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<CWide> for CWide {
            type Output = CWide;
            fn $method(self, rhs: CWide) -> CWide {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CWide> for CWide {
            type Output = CWide;
            fn $method(self, rhs: &CWide) -> CWide {
                (&self).$method(rhs)
            }
        }
        impl $trait<CWide> for &CWide {
            type Output = CWide;
            fn $method(self, rhs: CWide) -> CWide {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for CWide {
    type Output = CWide;
    fn neg(self) -> CWide {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_divide() {
        let a = CWide::new(Wide::from_i64(1), Wide::from_i64(2));
        let b = CWide::new(Wide::from_i64(3), Wide::from_i64(-1));
        let p = &a * &b;
        assert_eq!(p.re, Wide::from_i64(5));
        assert_eq!(p.im, Wide::from_i64(5));
        let q = &p / &b;
        assert!((&q - &a).abs().log10_abs() < -60.0);
    }
}
