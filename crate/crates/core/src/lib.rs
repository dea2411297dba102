//! Multiple Hermite polynomials for the Gaussian weights `exp(-x^2 + c_j x)`,
//! their zeros, simultaneous Gaussian quadrature at those zeros, and the
//! asymptotic zero distribution of `H_{n,n,n}` for the symmetric shifts
//! `(-c, 0, c)`.

pub mod asymptotics;
pub mod checks;
pub mod error;
mod guard;
pub mod mhermite;
pub mod numerics;
pub mod quadrature;
pub mod zeros;

pub use error::{Error, Result};
