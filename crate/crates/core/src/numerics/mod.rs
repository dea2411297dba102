//! Extended-precision kernel: scalar, complex, polynomials, classical Hermite
//! polynomials and Gaussian moments.

mod complex;
mod hermite;
mod moments;
mod poly;
mod wide;

pub use complex::CWide;
pub use hermite::{hermite_classical_eval, hermite_classical_table};
pub use moments::{gaussian_moments, normal_moments, raw_mass, MomentVector};
pub use poly::{relative_coeff_distance, MonicPoly, Poly};
pub use wide::{precision, set_precision, with_precision, Wide, DEFAULT_DIGITS, MIN_DIGITS};

/// `10^-k` at the working precision.
pub fn ten_pow_neg(k: i64) -> Wide {
    if k >= 0 {
        Wide::one() / Wide::from_i64(10).powi(k as u32)
    } else {
        Wide::from_i64(10).powi((-k) as u32)
    }
}

/// `10^-(P - offset)` for the current working precision `P`.
pub fn tol_below_precision(offset: usize) -> Wide {
    ten_pow_neg(precision() as i64 - offset as i64)
}
