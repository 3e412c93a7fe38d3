//! Exact scalars: Gaussian rationals times half-integer powers of a prime.
//!
//! A value is stored as `a + b*sqrt(p)` with `a, b` Gaussian rationals, which
//! is closed under sums and products and specializes back to a single
//! monomial `(x + y i) * p^(j/2)` in all the closed forms of interest.

use crate::{Complex, Error, Rational, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

/// An element of `Q(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        GaussianRational::new(r, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn invert(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::domain("division by zero Gaussian rational"));
        }
        Ok(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn to_complex(&self) -> Complex {
        Complex::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // fall back through a quotient of f64 conversions
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

/// `a + b*sqrt(p)` with Gaussian rational `a, b`, for a fixed odd prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    p: u64,
    a: GaussianRational,
    b: GaussianRational,
}

impl ExactScalar {
    pub fn new(p: u64, a: GaussianRational, b: GaussianRational) -> Self {
        ExactScalar { p, a, b }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn zero(p: u64) -> Self {
        ExactScalar::new(p, GaussianRational::zero(), GaussianRational::zero())
    }

    pub fn one(p: u64) -> Self {
        ExactScalar::new(p, GaussianRational::one(), GaussianRational::zero())
    }

    pub fn i(p: u64) -> Self {
        ExactScalar::new(p, GaussianRational::i(), GaussianRational::zero())
    }

    pub fn from_rational(p: u64, r: Rational) -> Self {
        ExactScalar::new(p, GaussianRational::from_rational(r), GaussianRational::zero())
    }

    pub fn from_gaussian(p: u64, g: GaussianRational) -> Self {
        ExactScalar::new(p, g, GaussianRational::zero())
    }

    /// `p^(j/2)` for any integer `j` (negative allowed).
    pub fn half_power(p: u64, j: i64) -> Self {
        let whole = j.div_euclid(2);
        let rem = j.rem_euclid(2);
        let base = super::pow_rational(p, whole);
        if rem == 0 {
            ExactScalar::from_rational(p, base)
        } else {
            ExactScalar::new(
                p,
                GaussianRational::zero(),
                GaussianRational::from_rational(base),
            )
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Complex conjugation (fixes `sqrt(p)`).
    pub fn conj(&self) -> Self {
        ExactScalar::new(self.p, self.a.conj(), self.b.conj())
    }

    pub fn mul_sign(&self, s: i32) -> Self {
        match s {
            1 => self.clone(),
            -1 => -self.clone(),
            _ => panic!("mul_sign expects +-1"),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let g = GaussianRational::from_rational(r.clone());
        ExactScalar::new(self.p, &self.a * &g, &self.b * &g)
    }

    /// Multiplicative inverse.
    pub fn invert(&self) -> Result<Self> {
        // (a + b s)^{-1} = (a - b s) / (a^2 - p b^2), s = sqrt(p)
        let p_rat = GaussianRational::from_rational(crate::rint(self.p as i64));
        let den = &(&self.a * &self.a) - &(&p_rat * &(&self.b * &self.b));
        let den_inv = den.invert()?;
        Ok(ExactScalar::new(
            self.p,
            &self.a * &den_inv,
            &(-self.b.clone()) * &den_inv,
        ))
    }

    /// Integer power (negative allowed if invertible).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = ExactScalar::one(self.p);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact rational content when the value lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.b.is_zero() && self.a.im.is_zero() {
            Some(self.a.re.clone())
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex {
        let sqrt_p = (self.p as f64).sqrt();
        self.a.to_complex() + self.b.to_complex() * sqrt_p
    }

    /// The rational-part coefficient pair `(a, b)` of `a + b*sqrt(p)`.
    pub fn parts(&self) -> (&GaussianRational, &GaussianRational) {
        (&self.a, &self.b)
    }

    /// True when `conj(z) * z = 1`.
    pub fn is_unit_modulus(&self) -> bool {
        (&self.conj() * self) == ExactScalar::one(self.p)
    }

    fn check_same_prime(&self, rhs: &ExactScalar) {
        assert_eq!(
            self.p, rhs.p,
            "exact scalar arithmetic mixes primes {} and {}",
            self.p, rhs.p
        );
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        self.check_same_prime(rhs);
        ExactScalar::new(self.p, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self + rhs;
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self.check_same_prime(rhs);
        ExactScalar::new(self.p, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        self.check_same_prime(rhs);
        let p_rat = GaussianRational::from_rational(crate::rint(self.p as i64));
        let a = &(&self.a * &rhs.a) + &(&p_rat * &(&self.b * &rhs.b));
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        ExactScalar::new(self.p, a, b)
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(self.p, -self.a, -self.b)
    }
}

/// Serialization grammar: a sum of monomials `re + im*i * p^(j/2)`.
///
/// A monomial with even `j` carries the Gaussian part `a` scaled by `p^(j/2)`;
/// the odd-`j` monomial carries `b`. Zero prints as `0 + 0*i * p^(0/2)`.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces = Vec::new();
        if !self.a.is_zero() || self.is_zero() {
            pieces.push(format!("{} + {}*i * {}^(0/2)", self.a.re, self.a.im, self.p));
        }
        if !self.b.is_zero() {
            pieces.push(format!("{} + {}*i * {}^(1/2)", self.b.re, self.b.im, self.p));
        }
        write!(f, "{}", pieces.join(" ++ "))
    }
}

impl std::str::FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut result: Option<ExactScalar> = None;
        for piece in s.split("++") {
            let piece = piece.trim();
            let (gauss, rest) = piece
                .rsplit_once('*')
                .ok_or_else(|| Error::Parse(format!("bad exact scalar monomial: {piece}")))?;
            let rest = rest.trim();
            let (p_str, pow_str) = rest
                .split_once("^(")
                .ok_or_else(|| Error::Parse(format!("bad power in: {piece}")))?;
            let p: u64 = p_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in: {piece}")))?;
            let pow_str = pow_str
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("bad power in: {piece}")))?;
            let (j_str, two) = pow_str
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("bad power in: {piece}")))?;
            if two.trim() != "2" {
                return Err(Error::Parse(format!("half powers only: {piece}")));
            }
            let j: i64 = j_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in: {piece}")))?;
            // gauss is "re + im*i"
            let gauss = gauss.trim();
            let (re_str, im_str) = gauss
                .rsplit_once('+')
                .ok_or_else(|| Error::Parse(format!("bad gaussian part: {gauss}")))?;
            let im_str = im_str
                .trim()
                .strip_suffix("*i")
                .ok_or_else(|| Error::Parse(format!("bad imaginary part: {gauss}")))?;
            let re: Rational = re_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational: {re_str}")))?;
            let im: Rational = im_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational: {im_str}")))?;
            let mono = &ExactScalar::from_gaussian(p, GaussianRational::new(re, im))
                * &ExactScalar::half_power(p, j);
            result = Some(match result {
                None => mono,
                Some(acc) => &acc + &mono,
            });
        }
        result.ok_or_else(|| Error::Parse("empty exact scalar".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    #[test]
    fn half_power_bookkeeping() {
        let p = 3;
        let a = ExactScalar::half_power(p, 3); // 3^{3/2} = 3 sqrt3
        let b = ExactScalar::half_power(p, -1); // 3^{-1/2}
        assert_eq!(&a * &b, ExactScalar::from_rational(p, rint(3)));
        let c = ExactScalar::half_power(p, 1);
        assert_eq!(&c * &c, ExactScalar::from_rational(p, rint(3)));
    }

    #[test]
    fn conjugation_and_roundtrip() {
        let p = 5;
        let z = &ExactScalar::i(p) * &ExactScalar::half_power(p, -3);
        assert_eq!(z.conj(), -(&ExactScalar::i(p) * &ExactScalar::half_power(p, -3)));
        assert_eq!(z.conj().conj(), z);
        let r = ExactScalar::from_rational(p, rat(-7, 2));
        assert_eq!(r.to_rational(), Some(rat(-7, 2)));
        assert_eq!(z.to_rational(), None);
        // even half-power with zero imaginary part round-trips
        let even = ExactScalar::half_power(p, -4);
        assert_eq!(even.to_rational(), Some(rat(1, 25)));
    }

    #[test]
    fn inverse() {
        let p = 7;
        let z = &(&ExactScalar::one(p) + &ExactScalar::half_power(p, 1))
            * &ExactScalar::from_rational(p, rat(2, 3));
        let w = z.invert().unwrap();
        assert_eq!(&z * &w, ExactScalar::one(p));
    }

    #[test]
    fn display_roundtrip() {
        let p = 3;
        let vals = [
            ExactScalar::zero(p),
            ExactScalar::one(p),
            -ExactScalar::i(p),
            &ExactScalar::from_gaussian(p, GaussianRational::new(rat(1, 2), rat(-3, 4)))
                * &ExactScalar::half_power(p, -5),
            &ExactScalar::one(p) + &ExactScalar::half_power(p, 3),
        ];
        for v in vals {
            let s = v.to_string();
            let back: ExactScalar = s.parse().unwrap();
            assert_eq!(back, v, "roundtrip failed for {s}");
        }
    }
}
