//! Exact 2x2 rational matrices and the p-adic Iwasawa decomposition.

use crate::arith::{pow_rational, val_p};
use crate::{Error, Rational, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::Mul;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
        )
    }

    /// Upper unipotent `u(x)`.
    pub fn u(x: Rational) -> Self {
        Mat2::new(Rational::one(), x, Rational::zero(), Rational::one())
    }

    /// Diagonal torus element `t(a) = diag(a, a^{-1})`.
    pub fn t(a: Rational) -> Self {
        assert!(!a.is_zero());
        let inv = a.recip();
        Mat2::new(a, Rational::zero(), Rational::zero(), inv)
    }

    /// The Weyl element `s = (0 1; -1 0)`.
    pub fn s() -> Self {
        Mat2::new(
            Rational::zero(),
            Rational::one(),
            -Rational::one(),
            Rational::zero(),
        )
    }

    /// The involution representative `w = (0 1; 1 0)` (determinant -1).
    pub fn w() -> Self {
        Mat2::new(
            Rational::zero(),
            Rational::one(),
            Rational::one(),
            Rational::zero(),
        )
    }

    /// Torus coset representative `alpha_n = diag(p^n, p^{-n})`.
    pub fn alpha(n: i64, p: u64) -> Self {
        Mat2::t(pow_rational(p, n))
    }

    /// Weyl-translated representative `beta_m = s * alpha_m`.
    pub fn beta(m: i64, p: u64) -> Self {
        &Mat2::s() * &Mat2::alpha(m, p)
    }

    /// Lower unipotent `r_b = (1 0; b 1)`.
    pub fn r_lower(b: Rational) -> Self {
        Mat2::new(Rational::one(), Rational::zero(), b, Rational::one())
    }

    /// Level-raising element `diag(p^{-1}, 1)`.
    pub fn varpi(p: u64) -> Self {
        Mat2::new(
            pow_rational(p, -1),
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
        )
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Mat2::new(
            &self.d / &det,
            -&self.b / &det,
            -&self.c / &det,
            &self.a / &det,
        ))
    }

    /// All entries p-integral.
    pub fn is_integral(&self, p: u64) -> bool {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .all(|x| val_p(x, p).map_or(true, |v| v >= 0))
    }

    /// Integral with unit determinant.
    pub fn in_gl2_zp(&self, p: u64) -> bool {
        self.is_integral(p) && val_p(&self.det(), p) == Some(0)
    }

    /// In the Iwahori-type subgroup: integral invertible with `val(c) >= 1`.
    pub fn in_k0(&self, p: u64) -> bool {
        self.in_gl2_zp(p) && val_p(&self.c, p).map_or(true, |v| v >= 1)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

/// Result of the p-adic Iwasawa decomposition `y = T k` with `T` upper
/// triangular and `k` integral invertible.
#[derive(Debug, Clone)]
pub struct Iwasawa {
    /// Valuation of the upper-left diagonal entry of `T`.
    pub val_a: i64,
    /// Valuation of the lower-right diagonal entry of `T`.
    pub val_d: i64,
    /// The compact factor.
    pub k: Mat2,
    /// Whether `y` lies in `B(Q_p) K_0`, decided by `val(c) >= val(d) + 1`.
    pub in_k0: bool,
}

/// Decompose `y` (invertible, with nonzero bottom row) as an upper-triangular
/// matrix times an element of `GL_2(Z_p)`.
///
/// The branch is decided by comparing the valuations of the bottom-row
/// entries: when `val(c) >= val(d) + 1` the compact factor is lower
/// unipotent and lies in the Iwahori subgroup; otherwise it falls in the
/// nontrivial coset.
pub fn iwasawa_decompose(y: &Mat2, p: u64) -> Result<Iwasawa> {
    let det = y.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if y.c.is_zero() && y.d.is_zero() {
        return Err(Error::domain("zero bottom row"));
    }
    let vdet = val_p(&det, p).unwrap();
    let vc = val_p(&y.c, p);
    let vd = val_p(&y.d, p);
    let in_k0 = match (vc, vd) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(vc), Some(vd)) => vc >= vd + 1,
    };
    if in_k0 {
        // y = (det/d, b; 0, d) * (1, 0; c/d, 1)
        let k = Mat2::r_lower(&y.c / &y.d);
        let vd = val_p(&y.d, p).unwrap();
        Ok(Iwasawa {
            val_a: vdet - vd,
            val_d: vd,
            k,
            in_k0,
        })
    } else {
        // y = (-det/c, a; 0, c) * (0, 1; 1, d/c)
        let k = Mat2::new(
            Rational::zero(),
            Rational::one(),
            Rational::one(),
            &y.d / &y.c,
        );
        let vc = val_p(&y.c, p).unwrap();
        Ok(Iwasawa {
            val_a: vdet - vc,
            val_d: vc,
            k,
            in_k0,
        })
    }
}
