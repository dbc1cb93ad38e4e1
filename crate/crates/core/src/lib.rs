//! Central approximation multipliers for free orthogonal and unitary quantum
//! groups, together with the numerical machinery that certifies them.
//!
//! The crate is organised bottom-up:
//!
//! * [`qspecial`]: dilated Chebyshev polynomials, q-Pochhammer symbols,
//!   q-binomial coefficients and dilated continuous q-Hermite polynomials.
//! * [`linalg`]: a symmetric tridiagonal eigenvalue solver.
//! * [`suq2`]: finite truncations of the Toeplitz model of `C(SU_q(2))`,
//!   the eigenvector family `eta_z` and the holomorphic functionals `theta_z`.
//! * [`multipliers`]: the coefficient family `b_d(z)`, its decay law,
//!   summability of cb-norm budgets and certified finite truncation.
//! * [`fusion`]: fusion rules for spins and for words over `{alpha, beta}`,
//!   quantum and classical dimensions.
//! * [`structure`]: diagnostics of the defining matrix `F`.
//! * [`schedule`]: truncation schedules for free products.
//!
//! A narrative guide with runnable snippets lives in the `book/` directory of
//! the repository; every snippet there is compiled and run as a doc-test.
//!
//! ```
//! use qcentral::{multipliers, QParam};
//! use num_complex::Complex64;
//!
//! let q = QParam::new(0.5).unwrap();
//! let b3 = multipliers::b_coeff(&q, Complex64::new(0.0, 0.0), 3).unwrap();
//! assert!((b3.re - 4.0 / 10.625).abs() < 1e-12);
//! ```

pub mod error;
pub mod fusion;
pub mod linalg;
pub mod multipliers;
pub mod qspecial;
pub mod schedule;
pub mod structure;
pub mod suq2;

#[cfg(doctest)]
mod book;

pub use error::{Error, Result};
pub use qspecial::QParam;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
