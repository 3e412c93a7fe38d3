//! Local factors and the two routes to half-integral-weight coefficients,
//! plus the degree-2 divisor sum.

use super::{HalfIntegralData, NewformData, SatakeParameter, SymHalfIntegralMatrix};
use crate::arith::{
    factorize, fundamental_decomposition, kronecker_symbol, val_p, ExactScalar,
};
use crate::{rint, Error, Rational, Result};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `(X^{e+1} - X^{-e-1})/(X - X^{-1})` as a polynomial in the trace
/// `u = X + X^{-1}`: the degree-`e` term of the Chebyshev-like ladder
/// `U_e = u U_{e-1} - U_{e-2}`, `U_0 = 1`, `U_{-1} = 0`.
fn chebyshev_u(e: i64, trace: &ExactScalar) -> ExactScalar {
    let p = trace.prime();
    if e < 0 {
        return ExactScalar::zero(p);
    }
    let mut prev = ExactScalar::zero(p); // U_{-1}
    let mut cur = ExactScalar::one(p); // U_0
    for _ in 0..e {
        let next = &(trace * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The local factor of the coefficient Euler product at `p`.
///
/// At a good prime the exponent is the valuation of the square part of the
/// index (half the valuation defect against the field discriminant), and the
/// branches are `U_e(u) - p^{-1/2} chi_{-xi}(p) U_{e-1}(u)` for `e >= 0` and
/// `0` for `e < 0`. At a level prime the factor is
/// `chi_{-xi}(p)(chi_{-xi}(p) + w_p) X^{e'}` with `e' = val_p(xi)`, which
/// makes the scaling relation `Psi_p(p^{-2n} xi) = p^n Psi_p(xi)` exact.
pub fn psi_factor(xi: &Rational, p: u64, nf: &NewformData) -> Result<ExactScalar> {
    if xi.is_zero() {
        return Err(Error::domain("the index must be nonzero"));
    }
    let disc = crate::arith::field_discriminant(&-xi.clone())?;
    if nf.divides_level(p) {
        let chi = kronecker_symbol(&disc, p);
        psi_factor_level(p, nf, val_p(xi, p).unwrap(), chi)
    } else {
        let e = (val_p(xi, p).unwrap() - crate::arith::int_val_p_or_zero(&disc, p)) / 2;
        let chi = kronecker_symbol(&disc, p);
        psi_factor_good(p, nf, e, chi)
    }
}

fn psi_factor_good(p: u64, nf: &NewformData, e: i64, chi: i32) -> Result<ExactScalar> {
    if e < 0 {
        return Ok(ExactScalar::zero(p));
    }
    let SatakeParameter::Unramified { trace } = nf.satake(p)? else {
        unreachable!("good prime")
    };
    let main = chebyshev_u(e, &trace);
    if chi == 0 {
        return Ok(main);
    }
    let correction = chebyshev_u(e - 1, &trace)
        .scale(&rint(chi as i64))
        .scale_by_half_power(-1);
    Ok(&main - &correction)
}

fn psi_factor_level(p: u64, nf: &NewformData, e: i64, chi: i32) -> Result<ExactScalar> {
    if e < 0 {
        return Ok(ExactScalar::zero(p));
    }
    let w = nf.atkin_lehner[&p];
    if chi == 0 {
        return Ok(ExactScalar::zero(p));
    }
    let SatakeParameter::Ramified { alpha } = nf.satake(p)? else {
        unreachable!("level prime")
    };
    let coeff = rint((chi * (chi + w)) as i64);
    Ok(alpha.pow(e)?.scale(&coeff))
}

/// Which route computes the half-integral coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffMethod {
    /// Product of exact local factors.
    Euler,
    /// Divisor-sum over the square part (integer index only).
    Convolution,
}

/// The coefficient `c(xi)` of the half-integral-weight form, by either route.
///
/// The Euler route accepts any positive rational and returns zero off the
/// support (non-integral index, wrong residue mod 4, or a failed local sign
/// condition); the convolution route is the divisor sum
/// `c(d) sum mu(e) chi_{-xi}(e) e^{k-1} a(f/e)`.
pub fn halfint_coefficient(
    h: &HalfIntegralData,
    xi: &Rational,
    method: CoeffMethod,
) -> Result<Rational> {
    if !xi.is_positive() {
        return Err(Error::domain("the index must be positive"));
    }
    match method {
        CoeffMethod::Euler => halfint_euler(h, xi),
        CoeffMethod::Convolution => halfint_convolution(h, xi),
    }
}

fn halfint_euler(h: &HalfIntegralData, xi: &Rational) -> Result<Rational> {
    let nf = &h.parent;
    let k = nf.k() as i64;
    let (d, f) = fundamental_decomposition(xi)?;
    let disc = -d.clone();
    // primes entering the product: level primes and primes in f
    let mut primes: Vec<u64> = factorize(nf.level).iter().map(|&(p, _)| p).collect();
    for q in factorize_rational_support(&f) {
        if !primes.contains(&q) {
            primes.push(q);
        }
    }
    // vanishing conditions first, so no eigenvalue data is demanded for an
    // index off the support
    for &p in &primes {
        let t = val_p(&f, p).unwrap_or(0);
        let chi = kronecker_symbol(&disc, p);
        if t < 0 {
            return Ok(Rational::zero());
        }
        if nf.divides_level(p) && (chi == 0 || chi != nf.atkin_lehner[&p]) {
            return Ok(Rational::zero());
        }
    }
    let mut total = Rational::one();
    for p in primes {
        let t = val_p(&f, p).unwrap_or(0);
        let chi = kronecker_symbol(&disc, p);
        let local = if nf.divides_level(p) {
            // the level-prime factor with the square-part exponent; together
            // with the 2^{-nu} normalization it contributes a(p)^t on support
            let w = nf.atkin_lehner[&p];
            if chi == 0 || chi != w {
                return Ok(Rational::zero());
            }
            if t < 0 {
                return Ok(Rational::zero());
            }
            let SatakeParameter::Ramified { alpha } = nf.satake(p)? else {
                unreachable!()
            };
            // f-part p^{t(k-1/2)} times (chi(chi+w)/2) X^t
            alpha
                .pow(t)?
                .scale_by_half_power(t * (2 * k - 1))
                .scale(&(rint((chi * (chi + w)) as i64) / rint(2)))
        } else {
            if t < 0 {
                return Ok(Rational::zero());
            }
            let psi = psi_factor_good(p, nf, t, chi)?;
            if psi.is_zero() {
                return Ok(Rational::zero());
            }
            psi.scale_by_half_power(t * (2 * k - 1))
        };
        let r = local.to_rational().ok_or_else(|| {
            Error::domain("local coefficient factor did not collapse to a rational")
        })?;
        if r.is_zero() {
            return Ok(Rational::zero());
        }
        total *= r;
    }
    let d_u = d.to_u64().ok_or_else(|| Error::domain("discriminant too large"))?;
    Ok(h.c_of(d_u)? * total)
}

fn factorize_rational_support(f: &Rational) -> Vec<u64> {
    let mut out = Vec::new();
    for part in [f.numer().abs(), f.denom().abs()] {
        if let Some(n) = part.to_u64() {
            for (p, _) in factorize(n) {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn moebius(n: u64) -> i64 {
    let fac = factorize(n);
    if fac.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn halfint_convolution(h: &HalfIntegralData, xi: &Rational) -> Result<Rational> {
    if !xi.is_integer() {
        return Err(Error::domain("the divisor-sum route needs an integer index"));
    }
    let nf = &h.parent;
    let k = nf.k();
    let (d, f) = fundamental_decomposition(xi)?;
    if !f.is_integer() {
        // outside the mod-4 support of the plus space
        return Ok(Rational::zero());
    }
    let d_u = d.to_u64().ok_or_else(|| Error::domain("discriminant too large"))?;
    let c0 = h.c_of(d_u)?;
    if c0.is_zero() {
        return Ok(Rational::zero());
    }
    let f_u = f
        .numer()
        .to_u64()
        .ok_or_else(|| Error::domain("square part too large"))?;
    let mut total = Rational::zero();
    let minus_d = -d.clone();
    for e in 1..=f_u {
        if f_u % e != 0 {
            continue;
        }
        
        if num_integer::Integer::gcd(&e, &nf.level) != 1 {
            continue;
        }
        let mu = moebius(e);
        if mu == 0 {
            continue;
        }
        let chi = kronecker_symbol(&minus_d, e);
        if chi == 0 {
            continue;
        }
        let term = rint(mu * chi as i64)
            * crate::arith::pow_rational(e, k as i64 - 1)
            * nf.eigenvalue_at(f_u / e)?;
        total += term;
    }
    Ok(c0 * total)
}

/// Fourier coefficient of the degree-2 lift at a half-integral positive
/// definite matrix: `sum_{d | content, (d, level) = 1} d^k c(4 det B / d^2)`.
pub fn sk_coefficient(h: &HalfIntegralData, b: &SymHalfIntegralMatrix) -> Result<Rational> {
    if !b.is_half_integral() {
        return Err(Error::domain("matrix is not half-integral"));
    }
    if !b.is_positive_definite() {
        return Err(Error::domain("matrix is not positive definite"));
    }
    let content = b.content()?;
    let four_xi = b.det() * rint(4);
    let mut total = Rational::zero();
    for d in 1..=content {
        if content % d != 0 {
            continue;
        }
        if num_integer::Integer::gcd(&d, &h.parent.level) != 1 {
            continue;
        }
        let arg = &four_xi / (rint(d as i64) * rint(d as i64));
        let c = halfint_coefficient(h, &arg, CoeffMethod::Euler)?;
        total += crate::arith::pow_rational(d, h.parent.k() as i64) * c;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Integer};
    use std::collections::BTreeMap;

    fn test_form() -> HalfIntegralData {
        // level 3, weight 2 (k = 1), w_3 = -1 so a(3) = 1
        let nf = NewformData::new(
            3,
            2,
            [(3u64, -1)].into(),
            [(2u64, rat(-1, 1)), (5u64, rat(1, 1)), (7u64, rat(-2, 1))].into(),
        )
        .unwrap();
        // support requires chi_{-d}(3) = -1: e.g. d in {4, 7, 19}; d = 11 fails
        let mut c = BTreeMap::new();
        for d in 1..=1700u64 {
            if !crate::forms::is_negative_fundamental(d as i64) {
                continue;
            }
            if kronecker_symbol(&Integer::from(-(d as i64)), 3) != -1 {
                continue;
            }
            c.insert(d, rat((d % 7 + 1) as i64, (d % 3 + 1) as i64));
        }
        // D = -4: chi_{-4}(3) = -1 = w_3
        HalfIntegralData::new(nf, c, -4).unwrap()
    }

    #[test]
    fn psi_spec_examples() {
        let h = test_form();
        let nf = &h.parent;
        // e = 0 at a good prime -> 1
        let v = psi_factor(&rint(5), 5, nf).unwrap();
        assert_eq!(v, ExactScalar::one(5));
        // e = 0 at the level prime: chi(chi + w) with chi = chi_{-xi}(3)
        // xi = 4: chi_{-4}(3) = -1 = w -> value (-1)(-1 + -1) = 2
        let v = psi_factor(&rint(4), 3, nf).unwrap();
        assert_eq!(v, ExactScalar::from_rational(3, rint(2)));
        // xi = 11: chi_{-11}(3) = +1 != w -> 1*(1-1) = 0
        let v = psi_factor(&rint(11), 3, nf).unwrap();
        assert!(v.is_zero());
        // negative exponent -> 0
        let v = psi_factor(&rat(4, 9), 3, nf).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn psi_scaling_at_level_primes() {
        let h = test_form();
        let nf = &h.parent;
        // Psi(p^{-2n} xi) = p^n Psi(xi) at the level prime, within the range
        // where the valuation stays nonnegative
        for xi0 in [rint(36), rint(4 * 81), rint(7 * 729)] {
            let v = crate::arith::val_p(&xi0, 3).unwrap();
            for n in 1..=(v / 2) {
                let scaled = &xi0 / crate::arith::pow_rational(3, 2 * n);
                let lhs = psi_factor(&scaled, 3, nf).unwrap();
                let rhs = psi_factor(&xi0, 3, nf)
                    .unwrap()
                    .scale(&crate::arith::pow_rational(3, n));
                assert_eq!(lhs, rhs, "scaling fails at xi={xi0} n={n}");
            }
        }
    }

    #[test]
    fn coefficient_spec_examples() {
        let h = test_form();
        let c4 = h.c_of(4).unwrap();
        // fundamental index with matching signs: c(xi) = c(d)
        let v = halfint_coefficient(&h, &rint(4), CoeffMethod::Euler).unwrap();
        assert_eq!(v, c4);
        let v = halfint_coefficient(&h, &rint(4), CoeffMethod::Convolution).unwrap();
        assert_eq!(v, c4);
        // xi = d p^2 for a good prime p: c(d)(a(p) - chi_{-d}(p) p^{k-1})
        let xi = rint(4 * 25);
        let expected = c4
            * (h.parent.eigenvalue(5).unwrap()
                - rint(kronecker_symbol(&Integer::from(-4), 5) as i64));
        assert_eq!(
            halfint_coefficient(&h, &xi, CoeffMethod::Euler).unwrap(),
            expected
        );
        assert_eq!(
            halfint_coefficient(&h, &xi, CoeffMethod::Convolution).unwrap(),
            expected
        );
        // non-integral index -> 0 under the Euler route
        assert_eq!(
            halfint_coefficient(&h, &rat(1, 4), CoeffMethod::Euler).unwrap(),
            Rational::zero()
        );
        // wrong residue mod 4 -> 0
        assert_eq!(
            halfint_coefficient(&h, &rint(5), CoeffMethod::Euler).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn euler_equals_convolution_small_sweep() {
        let h = test_form();
        for xi in 1..=400u64 {
            let e = halfint_coefficient(&h, &rint(xi as i64), CoeffMethod::Euler);
            let c = halfint_coefficient(&h, &rint(xi as i64), CoeffMethod::Convolution);
            match (e, c) {
                (Ok(a), Ok(b)) => assert_eq!(a, b, "mismatch at {xi}"),
                (Err(_), Err(_)) => {}
                (a, b) => panic!("route divergence at {xi}: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn sk_spec_examples() {
        let h = test_form();
        // content 1: single divisor
        let b = SymHalfIntegralMatrix::from_ints(1, 1, 1);
        let v = sk_coefficient(&h, &b).unwrap();
        // 4 det = 3: c(3) is off-support (chi_{-3}(3) = 0), so zero
        assert_eq!(v, Rational::zero());
        // diag(1,1): 4 det = 4
        let b = SymHalfIntegralMatrix::from_ints(1, 0, 1);
        assert_eq!(sk_coefficient(&h, &b).unwrap(), h.c_of(4).unwrap());
        // scaled by a good prime q: content q, two divisors
        let b = SymHalfIntegralMatrix::from_ints(5, 0, 5);
        let c_4 = h.c_of(4).unwrap();
        let c_100 = halfint_coefficient(&h, &rint(100), CoeffMethod::Euler).unwrap();
        assert_eq!(
            sk_coefficient(&h, &b).unwrap(),
            c_100 + rint(5) * c_4
        );
        // non-half-integral rejected
        let b = SymHalfIntegralMatrix::new(rat(1, 2), rint(0), rint(1));
        assert!(sk_coefficient(&h, &b).is_err());
    }
}
