//! Extended precision real scalar.
//!
//! [`Wide`] wraps a binary big float whose precision is taken from the
//! working precision at construction time. The working precision is a
//! process-wide number of decimal digits (default 64, minimum 30) that can be
//! temporarily raised on the current thread with [`with_precision`].

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use dashu_float::round::mode::{HalfAway, HalfEven};
use dashu_float::FBig;
use dashu_int::ops::UnsignedAbs;
use dashu_int::IBig;

use crate::error::{Error, Result};

type Raw = FBig<HalfEven, 2>;
type Dec = FBig<HalfAway, 10>;

pub const DEFAULT_DIGITS: usize = 64;
pub const MIN_DIGITS: usize = 30;

static GLOBAL_DIGITS: AtomicUsize = AtomicUsize::new(DEFAULT_DIGITS);

thread_local! {
    static SCOPED_DIGITS: Cell<Option<usize>> = const { Cell::new(None) };
    static PI_CACHE: RefCell<Option<(usize, Raw)>> = const { RefCell::new(None) };
}

/// Current working precision in decimal digits.
pub fn precision() -> usize {
    SCOPED_DIGITS
        .with(|s| s.get())
        .unwrap_or_else(|| GLOBAL_DIGITS.load(AtomicOrdering::Relaxed))
}

/// Sets the process-wide working precision. Meant to be called once at startup.
pub fn set_precision(digits: usize) -> Result<()> {
    if digits < MIN_DIGITS {
        return Err(Error::InvalidInput(format!(
            "precision must be at least {MIN_DIGITS} digits, got {digits}"
        )));
    }
    GLOBAL_DIGITS.store(digits, AtomicOrdering::Relaxed);
    Ok(())
}

/// Runs `f` with the working precision of the current thread set to `digits`.
pub fn with_precision<T>(digits: usize, f: impl FnOnce() -> T) -> T {
    struct Restore(Option<usize>);
    impl Drop for Restore {
        fn drop(&mut self) {
            SCOPED_DIGITS.with(|s| s.set(self.0));
        }
    }
    let _restore = Restore(SCOPED_DIGITS.with(|s| s.replace(Some(digits.max(MIN_DIGITS)))));
    f()
}

fn bits_for(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 8
}

fn working_bits() -> usize {
    bits_for(precision())
}

/// Real number at the working precision.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Wide(Raw);

impl Wide {
    fn wrap(raw: Raw) -> Self {
        Wide(raw)
    }

    fn at_working(raw: Raw) -> Self {
        Wide(raw.with_precision(working_bits()).value())
    }

    pub fn zero() -> Self {
        Self::at_working(Raw::ZERO)
    }

    pub fn one() -> Self {
        Self::at_working(Raw::ONE)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::at_working(Raw::from(v))
    }

    pub fn from_ibig(v: IBig) -> Self {
        Self::at_working(Raw::from(v))
    }

    /// Exact binary value of `v`, then carried at the working precision.
    pub fn from_f64(v: f64) -> Self {
        let raw = Raw::try_from(v).expect("finite f64");
        Self::at_working(raw)
    }

    /// `num / den` rounded to the working precision.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    pub fn pi() -> Self {
        let bits = working_bits();
        PI_CACHE.with(|cache| {
            let mut cache = cache.borrow_mut();
            match cache.as_ref() {
                Some((b, v)) if *b == bits => Wide(v.clone()),
                _ => {
                    let v = Raw::pi(bits);
                    *cache = Some((bits, v.clone()));
                    Wide(v)
                }
            }
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let dec = Dec::from_str(trimmed)
            .map_err(|e| Error::InvalidInput(format!("cannot parse {trimmed:?} as a number: {e:?}")))?;
        let bits = working_bits();
        let raw: Raw = dec
            .with_rounding::<HalfEven>()
            .with_base_and_precision::<2>(bits)
            .value();
        Ok(Wide(raw))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    /// Re-rounds to the current working precision.
    pub fn rounded(&self) -> Self {
        Self::at_working(self.0.clone())
    }

    pub fn precision_bits(&self) -> usize {
        self.0.precision()
    }

    pub fn is_zero(&self) -> bool {
        self.0.repr().significand().is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Raw::ZERO
    }

    pub fn is_positive(&self) -> bool {
        self.0 > Raw::ZERO
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&Raw::ZERO) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.0.sqrt())
    }

    pub fn exp(&self) -> Self {
        Self::wrap(self.0.exp())
    }

    pub fn ln(&self) -> Self {
        Self::wrap(self.0.ln())
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Base-10 logarithm of the magnitude as an `f64`, `-inf` for zero.
    ///
    /// Valid far outside the `f64` exponent range.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (sig, exp) = self.0.repr().clone().into_parts();
        let sig_f = Raw::from(sig.clone()).to_f64().value().abs();
        if sig_f.is_finite() {
            sig_f.log10() + exp as f64 * std::f64::consts::LOG10_2
        } else {
            let shift = self.0.repr().digits() as isize - 60;
            let s = Raw::from_parts(sig, -shift).to_f64().value().abs();
            s.log10() + (exp + shift) as f64 * std::f64::consts::LOG10_2
        }
    }

    /// Decimal scientific notation with `digits` significant digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let dec: Dec = self
            .0
            .clone()
            .with_rounding::<HalfAway>()
            .with_base_and_precision::<10>(digits + 12)
            .value()
            .with_precision(digits)
            .value();
        let (sig, exp) = dec.into_repr().into_parts();
        let negative = sig < IBig::ZERO;
        let mut body = sig.unsigned_abs().to_string();
        let mut exp10 = exp + body.len() as isize - 1;
        if body.len() > digits {
            // rounding carried into a new digit
            body.truncate(digits);
            exp10 = exp + digits as isize;
        }
        while body.len() < digits {
            body.push('0');
        }
        let mut out = String::with_capacity(digits + 8);
        if negative {
            out.push('-');
        }
        out.push_str(&body[..1]);
        if digits > 1 {
            out.push('.');
            out.push_str(&body[1..]);
        }
        out.push('e');
        if exp10 < 0 {
            out.push('-');
        } else {
            out.push('+');
        }
        out.push_str(&exp10.unsigned_abs().to_string());
        out
    }
}

impl Default for Wide {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for Wide {
    /// Working-precision scientific notation, or `{:.N}` for N significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(precision);
        f.write_str(&self.to_sci_string(digits))
    }
}

impl fmt::Debug for Wide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Wide({})", self.to_sci_string(24))
    }
}

impl FromStr for Wide {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Wide::parse(s)
    }
}

impl From<i64> for Wide {
    fn from(v: i64) -> Self {
        Wide::from_i64(v)
    }
}

impl From<i32> for Wide {
    fn from(v: i32) -> Self {
        Wide::from_i64(v as i64)
    }
}

impl From<usize> for Wide {
    fn from(v: usize) -> Self {
        Wide::from_i64(v as i64)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident, $op:tt) => {
        impl $trait<&Wide> for &Wide {
            type Output = Wide;
            fn $method(self, rhs: &Wide) -> Wide {
                Wide(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Wide> for &Wide {
            type Output = Wide;
            fn $method(self, rhs: Wide) -> Wide {
                Wide(&self.0 $op rhs.0)
            }
        }
        impl $trait<&Wide> for Wide {
            type Output = Wide;
            fn $method(self, rhs: &Wide) -> Wide {
                Wide(self.0 $op &rhs.0)
            }
        }
        impl $trait<Wide> for Wide {
            type Output = Wide;
            fn $method(self, rhs: Wide) -> Wide {
                Wide(self.0 $op rhs.0)
            }
        }
        impl $assign_trait<&Wide> for Wide {
            fn $assign_method(&mut self, rhs: &Wide) {
                self.0 = &self.0 $op &rhs.0;
            }
        }
        impl $assign_trait<Wide> for Wide {
            fn $assign_method(&mut self, rhs: Wide) {
                self.0 = &self.0 $op rhs.0;
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, +);
binop!(Sub, sub, SubAssign, sub_assign, -);
binop!(Mul, mul, MulAssign, mul_assign, *);
binop!(Div, div, DivAssign, div_assign, /);

impl Neg for Wide {
    type Output = Wide;
    fn neg(self) -> Wide {
        Wide(-self.0)
    }
}

impl Neg for &Wide {
    type Output = Wide;
    fn neg(self) -> Wide {
        Wide(-self.0.clone())
    }
}

impl std::iter::Sum for Wide {
    fn sum<I: Iterator<Item = Wide>>(iter: I) -> Wide {
        iter.fold(Wide::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Wide> for Wide {
    fn sum<I: Iterator<Item = &'a Wide>>(iter: I) -> Wide {
        iter.fold(Wide::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_precision_is_64_digits() {
        assert_eq!(precision(), DEFAULT_DIGITS);
        assert!(Wide::one().precision_bits() >= 213);
    }

    #[test]
    fn scoped_precision_restores() {
        let inner = with_precision(120, || {
            assert_eq!(precision(), 120);
            Wide::one().precision_bits()
        });
        assert!(inner > 400);
        assert_eq!(precision(), DEFAULT_DIGITS);
    }

    #[test]
    fn third_times_three_is_one_to_working_precision() {
        let third = Wide::ratio(1, 3);
        let err = (&third * Wide::from_i64(3) - Wide::one()).abs();
        assert!(err.log10_abs() < -62.0);
    }

    #[test]
    fn sqrt_two_matches_reference() {
        let s = Wide::from_i64(2).sqrt();
        let reference = Wide::parse("1.414213562373095048801688724209698078569671875376948073176679738").unwrap();
        assert!((s - reference).abs().log10_abs() < -62.0);
    }

    #[test]
    fn exp_ln_and_pi() {
        let e = Wide::one().exp();
        let reference = Wide::parse("2.718281828459045235360287471352662497757247093699959574966967628").unwrap();
        assert!((&e - reference).abs().log10_abs() < -62.0);
        assert!((e.ln() - Wide::one()).abs().log10_abs() < -62.0);
        let pi = Wide::parse("3.141592653589793238462643383279502884197169399375105820974944592").unwrap();
        assert!((Wide::pi() - pi).abs().log10_abs() < -62.0);
    }

    #[test]
    fn sci_string_format() {
        assert_eq!(Wide::from_i64(-5).to_sci_string(4), "-5.000e+0");
        assert_eq!(Wide::ratio(1, 3).to_sci_string(5), "3.3333e-1");
        assert_eq!(Wide::ratio(2, 3).to_sci_string(3), "6.67e-1");
        assert_eq!(Wide::from_f64(9.9999).to_sci_string(3), "1.00e+1");
        assert_eq!(Wide::zero().to_sci_string(10), "0");
        assert_eq!(Wide::from_f64(6.887653865e-9).to_sci_string(10), "6.887653865e-9");
    }

    #[test]
    fn string_round_trip_keeps_p_minus_one_digits() {
        let x = Wide::from_i64(7).sqrt() / Wide::from_i64(1000);
        let s = x.to_string();
        let back = Wide::parse(&s).unwrap();
        let rel = ((&back - &x) / &x).abs();
        assert!(rel.log10_abs() < -(precision() as f64 - 1.0));
    }

    #[test]
    fn log10_abs_beyond_f64_range() {
        let big = Wide::from_i64(10).powi(400);
        assert!((big.log10_abs() - 400.0).abs() < 1e-9);
        let small = Wide::one() / big;
        assert!((small.log10_abs() + 400.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_low_precision() {
        assert!(set_precision(10).is_err());
    }
}
