//! Laurent polynomials in a formal `pi` with rational coefficients.
//!
//! The archimedean model and the weight-raising constants live in
//! `Q[pi, pi^{-1}]`; keeping `pi` formal makes every identity exact.

use crate::{Error, Rational, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl PiPoly {
    pub fn zero() -> Self {
        PiPoly::default()
    }

    pub fn one() -> Self {
        PiPoly::term(0, Rational::one())
    }

    /// `c * pi^e`.
    pub fn term(e: i64, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        PiPoly { coeffs }
    }

    pub fn from_rational(c: Rational) -> Self {
        PiPoly::term(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, e: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = PiPoly::zero();
        for (e, v) in &self.coeffs {
            out.add_term(*e, &(v * c));
        }
        out
    }

    /// Exact rational content when no `pi` power remains.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.coeffs.len() == 1 {
            if let Some(c) = self.coeffs.get(&0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Single-term content `c * pi^e` when the value is a monomial.
    pub fn to_monomial(&self) -> Option<(i64, Rational)> {
        if self.coeffs.len() == 1 {
            let (e, c) = self.coeffs.iter().next().unwrap();
            Some((*e, c.clone()))
        } else {
            None
        }
    }

    pub fn eval_f64(&self, pi: f64) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.coeffs {
            acc += super::scalar::rational_to_f64(c) * pi.powi(*e as i32);
        }
        acc
    }

    pub fn invert(&self) -> Result<PiPoly> {
        let (e, c) = self
            .to_monomial()
            .ok_or_else(|| Error::domain("can only invert pi-monomials"))?;
        if c.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(PiPoly::term(-e, c.recip()))
    }
}

impl Add for &PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: &PiPoly) -> PiPoly {
        let mut out = self.clone();
        for (e, v) in &rhs.coeffs {
            out.add_term(*e, v);
        }
        out
    }
}

impl Sub for &PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: &PiPoly) -> PiPoly {
        let mut out = self.clone();
        for (e, v) in &rhs.coeffs {
            out.add_term(*e, &(-v.clone()));
        }
        out
    }
}

impl Mul for &PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        let mut out = PiPoly::zero();
        for (e1, v1) in &self.coeffs {
            for (e2, v2) in &rhs.coeffs {
                out.add_term(e1 + e2, &(v1 * v2));
            }
        }
        out
    }
}

impl Neg for PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        let mut out = PiPoly::zero();
        for (e, v) in &self.coeffs {
            out.add_term(*e, &(-v.clone()));
        }
        out
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let body: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("{c}*pi"),
                _ => format!("{c}*pi^{e}"),
            })
            .collect();
        write!(f, "{}", body.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    #[test]
    fn arithmetic() {
        let a = PiPoly::term(2, rat(1, 2)); // pi^2/2
        let b = PiPoly::term(-1, rint(3)); // 3/pi
        let prod = &a * &b;
        assert_eq!(prod, PiPoly::term(1, rat(3, 2)));
        assert!((prod.eval_f64(std::f64::consts::PI)
            - 1.5 * std::f64::consts::PI)
            .abs()
            < 1e-12);
        assert_eq!(a.invert().unwrap(), PiPoly::term(-2, rint(2)));
    }
}
