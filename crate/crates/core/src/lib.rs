//! Exact arithmetic for local SL2 period computations.
//!
//! The crate is organized in layers:
//!
//! - [`arith`]: big-rational scalars, quadratic symbols, Weil indices,
//!   exact scalars in `Q(i)[sqrt(p)]`, Laurent polynomials in a formal
//!   Satake variable, and Laurent polynomials in a formal `pi`.
//! - [`padic`]: 2x2 matrix utilities, the metaplectic double cover with its
//!   explicit 2-cocycle, the three local test vectors, a cell model for the
//!   Weil representation, and brute-force coefficient oracles.
//! - [`periods`]: closed forms for the non-archimedean local periods,
//!   double-coset volumes, local L-factor ratios, and regularized periods.
//! - [`arch`]: the discrete-series Jacobi group model at the real place.
//! - [`forms`]: Satake parameters, half-integral and degree-2 Fourier
//!   coefficients, local Whittaker values, correction factors, and the
//!   symbolic weight-raising machinery.
//! - [`lfn`]: degree-6 Euler factors, Gamma factors, the sign criterion,
//!   the central-value assembler, and the subconvexity certificate.
//! - [`selftest`]: the acceptance suite, callable from tests and the CLI.

pub mod arith;
pub mod padic;
pub mod periods;
pub mod arch;
pub mod forms;
pub mod lfn;
pub mod selftest;

mod error;

pub use error::Error;

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Big integer type backing [`Rational`].
pub type Integer = num_bigint::BigInt;

/// Double-precision complex numbers for the floating-point oracles.
pub type Complex = num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Convenience constructor for a rational from an integer pair.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

/// Convenience constructor for an integral rational.
pub fn rint(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}
