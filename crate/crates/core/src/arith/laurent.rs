//! Laurent polynomials in a formal unitary variable `X` over [`ExactScalar`].
//!
//! The variable models an unramified character value on the uniformizer, so
//! the unitary conjugate sends `X` to `X^{-1}` and conjugates coefficients.

use super::scalar::ExactScalar;
use crate::{Complex, Error, Rational, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    p: u64,
    coeffs: BTreeMap<i64, ExactScalar>,
}

impl LaurentPoly {
    pub fn zero(p: u64) -> Self {
        LaurentPoly { p, coeffs: BTreeMap::new() }
    }

    pub fn one(p: u64) -> Self {
        LaurentPoly::monomial(0, ExactScalar::one(p))
    }

    /// `c * X^e`.
    pub fn monomial(e: i64, c: ExactScalar) -> Self {
        let p = c.prime();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { p, coeffs }
    }

    pub fn from_rational(p: u64, r: Rational) -> Self {
        LaurentPoly::monomial(0, ExactScalar::from_rational(p, r))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> ExactScalar {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| ExactScalar::zero(self.p))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &ExactScalar)> {
        self.coeffs.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: i64, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(e)
            .or_insert_with(|| ExactScalar::zero(self.p));
        *entry = &*entry + c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = LaurentPoly::zero(self.p);
        for (e, v) in &self.coeffs {
            out.add_term(*e, &(v * c));
        }
        out
    }

    pub fn shift(&self, by: i64) -> Self {
        let mut out = LaurentPoly::zero(self.p);
        for (e, v) in &self.coeffs {
            out.add_term(e + by, v);
        }
        out
    }

    /// Unitary conjugate: `X -> X^{-1}` together with coefficient conjugation.
    pub fn conj(&self) -> Self {
        let mut out = LaurentPoly::zero(self.p);
        for (e, v) in &self.coeffs {
            out.add_term(-e, &v.conj());
        }
        out
    }

    /// Exact division, failing when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::ExactDivision("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.p));
        }
        // Normalize to ordinary polynomials over a dense buffer.
        let a_shift = self.min_exp().unwrap();
        let b_shift = divisor.min_exp().unwrap();
        let deg = (self.max_exp().unwrap() - a_shift) as usize;
        let div_terms: Vec<(usize, ExactScalar)> = divisor
            .coeffs
            .iter()
            .map(|(e, c)| ((e - b_shift) as usize, c.clone()))
            .collect();
        let div_deg = div_terms.iter().map(|(e, _)| *e).max().unwrap();
        if deg < div_deg {
            return Err(Error::ExactDivision("nonzero remainder".into()));
        }
        let lead = div_terms.iter().find(|(e, _)| *e == div_deg).unwrap();
        let lead_inv = lead.1.invert().map_err(|_| {
            Error::ExactDivision("leading coefficient not invertible".into())
        })?;
        let mut rem: Vec<ExactScalar> = vec![ExactScalar::zero(self.p); deg + 1];
        for (e, c) in &self.coeffs {
            rem[(e - a_shift) as usize] = c.clone();
        }
        let mut quot = LaurentPoly::zero(self.p);
        for i in (div_deg..=deg).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let factor = &rem[i] * &lead_inv;
            for (j, d) in &div_terms {
                let idx = i - div_deg + j;
                rem[idx] = &rem[idx] - &(&factor * d);
            }
            quot.add_term(i as i64 - div_deg as i64, &factor);
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::ExactDivision("nonzero remainder".into()));
        }
        Ok(quot.shift(a_shift - b_shift))
    }

    /// Substitute a complex value for `X`.
    pub fn eval_complex(&self, x: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        for (e, v) in &self.coeffs {
            acc += v.to_complex() * x.powi(*e as i32);
        }
        acc
    }

    /// Substitute an exact invertible scalar for `X`.
    pub fn eval_exact(&self, x: &ExactScalar) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero(self.p);
        for (e, v) in &self.coeffs {
            acc = &acc + &(v * &x.pow(*e)?);
        }
        Ok(acc)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, v) in &rhs.coeffs {
            out.add_term(*e, v);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, v) in &rhs.coeffs {
            out.add_term(*e, &(-v.clone()));
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.p);
        for (e1, v1) in &self.coeffs {
            for (e2, v2) in &rhs.coeffs {
                out.add_term(e1 + e2, &(v1 * v2));
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.p);
        for (e, v) in &self.coeffs {
            out.add_term(*e, &(-v.clone()));
        }
        out
    }
}

/// Exponent -> scalar map, sorted by exponent.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "{{}}");
        }
        let body: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| format!("{e}: {c}"))
            .collect();
        write!(f, "{{{}}}", body.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rint;

    fn x_pow(p: u64, e: i64) -> LaurentPoly {
        LaurentPoly::monomial(e, ExactScalar::one(p))
    }

    #[test]
    fn conj_involution() {
        let p = 3;
        let q = &(&x_pow(p, 2).scale(&ExactScalar::i(p)) + &x_pow(p, -1))
            + &LaurentPoly::from_rational(p, rint(5));
        assert_eq!(q.conj().conj(), q);
    }

    #[test]
    fn exact_division() {
        let p = 5;
        // (X^2 - 1) / (X - 1) = X + 1
        let num = &x_pow(p, 2) - &x_pow(p, 0);
        let den = &x_pow(p, 1) - &x_pow(p, 0);
        let q = num.exact_div(&den).unwrap();
        assert_eq!(q, &x_pow(p, 1) + &x_pow(p, 0));
        // with Laurent shifts: (X - X^{-1}) / (X - 1) = 1 + X^{-1}
        let num = &x_pow(p, 1) - &x_pow(p, -1);
        let q = num.exact_div(&den).unwrap();
        assert_eq!(q, &x_pow(p, 0) + &x_pow(p, -1));
        // inexact division fails
        let num = &x_pow(p, 2) + &x_pow(p, 0);
        assert!(num.exact_div(&den).is_err());
    }

    #[test]
    fn substitution_matches_termwise_eval() {
        let p = 3;
        let q = &x_pow(p, 3).scale(&ExactScalar::half_power(p, -1)) - &x_pow(p, -2);
        for k in 0..8 {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / 8.0;
            let x = Complex::new(theta.cos(), theta.sin());
            let direct = q.eval_complex(x);
            let manual =
                x.powi(3) * (3.0f64).sqrt().recip() - x.powi(-2);
            assert!((direct - manual).norm() < 1e-12);
        }
    }

    #[test]
    fn exact_substitution() {
        let p = 3;
        // X^2 at X = i gives -1
        let q = x_pow(p, 2);
        assert_eq!(q.eval_exact(&ExactScalar::i(p)).unwrap(), -ExactScalar::one(p));
    }
}
