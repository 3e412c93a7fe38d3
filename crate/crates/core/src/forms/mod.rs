//! The Fourier-coefficient layer: Hecke data, Satake parameters, local
//! factors of half-integral-weight coefficients, degree-2 coefficients,
//! local Whittaker values and correction factors, and the symbolic
//! weight-raising machinery.

mod coeffs;
mod whittaker;
mod maass;
mod breve;

pub use coeffs::{halfint_coefficient, psi_factor, sk_coefficient, CoeffMethod};
pub use whittaker::{
    correction_factor, whittaker_value, CorrectionMode, CorrectionValue, WhittakerElement,
    WhittakerValue,
};
pub use maass::{
    maass_c_eval, maass_c_symbolic, maass_comparison_report, maass_delta, maass_oracle,
    numeric_maass_apply, MaassReport, SymExpr,
};
pub use breve::breve_coefficient;

use crate::arith::{factorize, is_squarefree, kronecker_symbol, val_p, ExactScalar};
use crate::{rint, Error, Integer, Rational, Result};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Hecke data of a newform of squarefree odd level and trivial character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewformData {
    pub level: u64,
    pub weight: u32,
    pub atkin_lehner: BTreeMap<u64, i32>,
    pub hecke: BTreeMap<u64, Rational>,
}

impl NewformData {
    /// Validates the level shape, the Atkin-Lehner table, and the ramified
    /// eigenvalue identity `a(p) = -w_p p^{k-1}`.
    pub fn new(
        level: u64,
        weight: u32,
        atkin_lehner: BTreeMap<u64, i32>,
        mut hecke: BTreeMap<u64, Rational>,
    ) -> Result<Self> {
        if level == 0 || level % 2 == 0 || !is_squarefree(level) {
            return Err(Error::Validation(format!(
                "level {level} must be odd and squarefree"
            )));
        }
        if weight == 0 || weight % 2 != 0 {
            return Err(Error::Validation("weight must be even and positive".into()));
        }
        let level_primes: Vec<u64> = factorize(level).iter().map(|&(p, _)| p).collect();
        for p in &level_primes {
            if !atkin_lehner.contains_key(p) {
                return Err(Error::Validation(format!(
                    "atkin_lehner incomplete: missing sign at {p}"
                )));
            }
        }
        for (p, w) in &atkin_lehner {
            if !level_primes.contains(p) {
                return Err(Error::Validation(format!(
                    "atkin_lehner sign at {p} does not divide the level"
                )));
            }
            if *w != 1 && *w != -1 {
                return Err(Error::Validation("atkin_lehner signs must be +-1".into()));
            }
        }
        // enforce the ramified eigenvalue identity, filling it in when absent
        let k = weight / 2;
        for p in &level_primes {
            let w = atkin_lehner[p];
            let expected =
                rint(-(w as i64)) * crate::arith::pow_rational(*p, k as i64 - 1);
            match hecke.get(p) {
                Some(a) if *a != expected => {
                    return Err(Error::Validation(format!(
                        "eigenvalue at {p} violates a(p) = -w_p p^(k-1): got {a}, expected {expected}"
                    )));
                }
                Some(_) => {}
                None => {
                    hecke.insert(*p, expected);
                }
            }
        }
        Ok(NewformData {
            level,
            weight,
            atkin_lehner,
            hecke,
        })
    }

    pub fn k(&self) -> u32 {
        self.weight / 2
    }

    pub fn divides_level(&self, p: u64) -> bool {
        self.level % p == 0
    }

    pub fn eigenvalue(&self, p: u64) -> Result<Rational> {
        self.hecke
            .get(&p)
            .cloned()
            .ok_or_else(|| Error::MissingDatum(format!("eigenvalue at {p}")))
    }

    /// Multiplicative extension of the eigenvalues: the two-term recursion
    /// `a(p^{r+1}) = a(p) a(p^r) - p^{2k-1} a(p^{r-1})` at good primes, and
    /// `a(p^r) = a(p)^r` at level primes.
    pub fn eigenvalue_at(&self, n: u64) -> Result<Rational> {
        if n == 0 {
            return Err(Error::domain("eigenvalue index must be positive"));
        }
        let mut out = Rational::from_integer(Integer::from(1u32));
        for (p, e) in factorize(n) {
            let a1 = self.eigenvalue(p)?;
            let val = if self.divides_level(p) {
                let mut acc = Rational::from_integer(Integer::from(1u32));
                for _ in 0..e {
                    acc *= &a1;
                }
                acc
            } else {
                let pk = crate::arith::pow_rational(p, 2 * self.k() as i64 - 1);
                let mut prev = Rational::from_integer(Integer::from(1u32));
                let mut cur = a1.clone();
                for _ in 1..e {
                    let next = &a1 * &cur - &pk * &prev;
                    prev = cur;
                    cur = next;
                }
                if e == 0 {
                    prev
                } else {
                    cur
                }
            };
            out *= val;
        }
        Ok(out)
    }

    /// Satake data at a prime.
    pub fn satake(&self, p: u64) -> Result<SatakeParameter> {
        let k = self.k() as i64;
        if self.divides_level(p) {
            let w = self.atkin_lehner[&p];
            let alpha = ExactScalar::half_power(p, -1).mul_sign(-w);
            Ok(SatakeParameter::Ramified { alpha })
        } else {
            let a = self.eigenvalue(p)?;
            let trace =
                ExactScalar::from_rational(p, a).scale_by_half_power(1 - 2 * k);
            Ok(SatakeParameter::Unramified { trace })
        }
    }
}

/// Satake data: the unramified pair stored as (trace, norm = 1), or the
/// single ramified value `-p^{-1/2} w_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatakeParameter {
    Unramified { trace: ExactScalar },
    Ramified { alpha: ExactScalar },
}

impl ExactScalar {
    /// Multiply by `p^(j/2)` for this scalar's prime.
    pub fn scale_by_half_power(&self, j: i64) -> ExactScalar {
        self * &ExactScalar::half_power(self.prime(), j)
    }
}

/// Fundamental-discriminant coefficients of a half-integral-weight form
/// attached to [`NewformData`], together with the auxiliary discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfIntegralData {
    pub parent: NewformData,
    /// `d -> c(d)` for positive `d` with `-d` a fundamental discriminant.
    pub c_fund: BTreeMap<u64, Rational>,
    /// Fundamental `D < 0`, prime to the level, with Kronecker value `w_p`
    /// at every level prime.
    pub d_disc: i64,
}

/// True when `d` is the negative of a fundamental discriminant, i.e. `-d`
/// is squarefree congruent to 1 mod 4, or `-d = 4m` with `m` squarefree
/// congruent to 2 or 3 mod 4.
pub fn is_negative_fundamental(d: i64) -> bool {
    if d <= 0 {
        return false;
    }
    let md = -d;
    let r = md.rem_euclid(4);
    if r == 1 {
        is_squarefree(d.unsigned_abs())
    } else if r == 0 {
        let m = md / 4;
        let rm = m.rem_euclid(4);
        (rm == 2 || rm == 3) && is_squarefree(m.unsigned_abs())
    } else {
        false
    }
}

impl HalfIntegralData {
    pub fn new(
        parent: NewformData,
        c_fund: BTreeMap<u64, Rational>,
        d_disc: i64,
    ) -> Result<Self> {
        if d_disc >= 0 || !is_negative_fundamental(-d_disc) {
            return Err(Error::Validation(format!(
                "{d_disc} is not a negative fundamental discriminant"
            )));
        }
        let dd = Integer::from(d_disc);
        for (p, w) in &parent.atkin_lehner {
            if d_disc % (*p as i64) == 0 {
                return Err(Error::Validation(format!(
                    "the auxiliary discriminant must be prime to the level; {p} divides {d_disc}"
                )));
            }
            if kronecker_symbol(&dd, *p) != *w {
                return Err(Error::Validation(format!(
                    "Kronecker value of {d_disc} at {p} must match the Atkin-Lehner sign {w}"
                )));
            }
        }
        for (d, c) in &c_fund {
            if !is_negative_fundamental(*d as i64) {
                return Err(Error::Validation(format!(
                    "-{d} is not a fundamental discriminant"
                )));
            }
            if c.is_zero() {
                continue;
            }
            // plus-space support: the coefficient vanishes unless the local
            // sign matches the Atkin-Lehner sign at every level prime
            for (p, w) in &parent.atkin_lehner {
                let chi = kronecker_symbol(&Integer::from(-(*d as i64)), *p);
                if chi != *w {
                    return Err(Error::Validation(format!(
                        "coefficient at {d} violates the support condition at {p} (sign {chi} vs {w})"
                    )));
                }
            }
        }
        Ok(HalfIntegralData {
            parent,
            c_fund,
            d_disc,
        })
    }

    /// `c(d)`; coefficients violating the support condition are zero, and a
    /// stored value is required otherwise.
    pub fn c_of(&self, d: u64) -> Result<Rational> {
        for (p, w) in &self.parent.atkin_lehner {
            let chi = kronecker_symbol(&Integer::from(-(d as i64)), *p);
            if chi != *w {
                return Ok(Rational::zero());
            }
        }
        self.c_fund
            .get(&d)
            .cloned()
            .ok_or_else(|| Error::MissingDatum(format!("coefficient c({d})")))
    }
}

/// A symmetric half-integral 2x2 matrix `(b1, b2/2; b2/2, b3)` with its
/// derived local data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymHalfIntegralMatrix {
    pub b1: Rational,
    pub b2: Rational,
    pub b3: Rational,
}

impl SymHalfIntegralMatrix {
    pub fn new(b1: Rational, b2: Rational, b3: Rational) -> Self {
        SymHalfIntegralMatrix { b1, b2, b3 }
    }

    pub fn from_ints(b1: i64, b2: i64, b3: i64) -> Self {
        SymHalfIntegralMatrix::new(rint(b1), rint(b2), rint(b3))
    }

    /// `det B = b1 b3 - b2^2/4`.
    pub fn det(&self) -> Rational {
        &self.b1 * &self.b3 - &self.b2 * &self.b2 / rint(4)
    }

    /// The entries are integers (half-integral matrix).
    pub fn is_half_integral(&self) -> bool {
        self.b1.is_integer() && self.b2.is_integer() && self.b3.is_integer()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.b1.is_positive() && self.det().is_positive()
    }

    /// Valuations `(v1, v2, v3)` of the entries at `p`; `None` means the
    /// entry is zero.
    pub fn valuations(&self, p: u64) -> [Option<i64>; 3] {
        [val_p(&self.b1, p), val_p(&self.b2, p), val_p(&self.b3, p)]
    }

    /// `n(B) = min(v1, v2, v3 - 1)`, with zero entries treated as infinite.
    pub fn n_index(&self, p: u64) -> i64 {
        let [v1, v2, v3] = self.valuations(p).map(|v| v.unwrap_or(i64::MAX / 4));
        v1.min(v2).min(v3 - 1)
    }

    /// `m(B) = min(v1 + 1, v2, v3)`.
    pub fn m_index(&self, p: u64) -> i64 {
        let [v1, v2, v3] = self.valuations(p).map(|v| v.unwrap_or(i64::MAX / 4));
        (v1 + 1).min(v2).min(v3)
    }

    /// `gcd(b1, b2, b3)` for an integral matrix.
    pub fn content(&self) -> Result<u64> {
        if !self.is_half_integral() {
            return Err(Error::domain("matrix is not half-integral"));
        }
        use num_integer::Integer as _;
        let g = self
            .b1
            .numer()
            .gcd(self.b2.numer())
            .gcd(self.b3.numer())
            .abs();
        use num_traits::ToPrimitive;
        g.to_u64()
            .ok_or_else(|| Error::domain("content overflow"))
    }
}
