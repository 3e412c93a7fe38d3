//! Local Whittaker values at special elements and the correction factors of
//! the level-raised degree-2 coefficients.

use super::{NewformData, SymHalfIntegralMatrix};
use crate::arith::{hilbert_symbol, legendre_symbol, val_p, Place};
use crate::{rat, rint, Complex, Error, Integer, Rational, Result};
use num_traits::{One, Zero};

/// Special elements at which the Whittaker values are tabulated.
#[derive(Debug, Clone, PartialEq)]
pub enum WhittakerElement {
    /// The identity.
    One,
    /// The Weyl element.
    WeylS,
    /// The lower-unipotent `r_b` with a unit parameter.
    RLower(Rational),
}

/// A Whittaker value: a rational scalar carrying an optional root of unity
/// `e^{2 pi i t}` with `t` the p-power fractional part of `b^{-1} xi`.
#[derive(Debug, Clone, PartialEq)]
pub struct WhittakerValue {
    pub scalar: Rational,
    /// Fractional part `t` of the twist; `None` means no twist.
    pub twist: Option<Rational>,
}

impl WhittakerValue {
    fn plain(scalar: Rational) -> Self {
        WhittakerValue { scalar, twist: None }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn to_complex(&self) -> Complex {
        let base = crate::arith::rational_to_f64_pub(&self.scalar);
        match &self.twist {
            None => Complex::new(base, 0.0),
            Some(t) => {
                let theta = 2.0 * std::f64::consts::PI * crate::arith::rational_to_f64_pub(t);
                Complex::new(theta.cos(), theta.sin()) * base
            }
        }
    }
}

/// `1 + (-p xi, p)_p` as a rational in `{0, 2}`.
fn symbol_term(xi: &Rational, p: u64) -> Result<Rational> {
    let arg = xi * rint(-(p as i64));
    let s = hilbert_symbol(&arg, &rint(p as i64), Place::Finite(p))?;
    Ok(rint(1 + s as i64))
}

/// p-power fractional part of a rational, in `[0, 1)`.
fn p_fractional_part(x: &Rational, p: u64) -> Rational {
    match val_p(x, p) {
        None => Rational::zero(),
        Some(v) if v >= 0 => Rational::zero(),
        Some(v) => {
            let k = (-v) as u32;
            let pk = Integer::from(p).pow(k);
            let scaled = x * Rational::from_integer(pk.clone());
            let r = crate::arith::unit_residue(&scaled, p, k)
                .expect("fractional part: unit residue");
            Rational::new(r, pk)
        }
    }
}

/// Whittaker values of the level-prime newvector at the identity, the Weyl
/// element, and the unit lower-unipotents, tabulated by the parity of
/// `val_p(xi)`:
///
/// at the identity, `p^{-r}(1 + (-p xi, p)_p)` for valuation `2r >= 0` and
/// `p^{-r-1}(p+1)` for valuation `2r+1 >= 1`, zero for negative valuation;
/// at the Weyl element, `-p^{-1}` times the identity pattern with the odd
/// branch extended down to valuation `-1`; at `r_b`, the Weyl value twisted
/// by `psi_p(b^{-1} xi)`.
pub fn whittaker_value(
    p: u64,
    xi: &Rational,
    element: &WhittakerElement,
) -> Result<WhittakerValue> {
    if p == 2 || !crate::arith::is_prime_small(p) {
        return Err(Error::UnsupportedPlace(format!("odd prime required, got {p}")));
    }
    if xi.is_zero() {
        return Err(Error::domain("the index must be nonzero"));
    }
    let v = val_p(xi, p).unwrap();
    match element {
        WhittakerElement::One => {
            if v < 0 {
                return Ok(WhittakerValue::plain(Rational::zero()));
            }
            if v % 2 == 0 {
                let r = v / 2;
                Ok(WhittakerValue::plain(
                    crate::arith::pow_rational(p, -r) * symbol_term(xi, p)?,
                ))
            } else {
                let r = (v - 1) / 2;
                Ok(WhittakerValue::plain(
                    crate::arith::pow_rational(p, -r - 1) * rint(p as i64 + 1),
                ))
            }
        }
        WhittakerElement::WeylS => {
            if v < -1 {
                return Ok(WhittakerValue::plain(Rational::zero()));
            }
            if v.rem_euclid(2) == 0 {
                if v < 0 {
                    return Ok(WhittakerValue::plain(Rational::zero()));
                }
                let r = v / 2;
                Ok(WhittakerValue::plain(
                    -crate::arith::pow_rational(p, -r - 1) * symbol_term(xi, p)?,
                ))
            } else {
                let r = (v - 1) / 2; // >= -1
                Ok(WhittakerValue::plain(
                    -crate::arith::pow_rational(p, -r - 2) * rint(p as i64 + 1),
                ))
            }
        }
        WhittakerElement::RLower(b) => {
            if val_p(b, p) != Some(0) {
                return Err(Error::domain("the unipotent parameter must be a unit"));
            }
            let s_val = whittaker_value(p, xi, &WhittakerElement::WeylS)?;
            if s_val.is_zero() {
                return Ok(WhittakerValue::plain(Rational::zero()));
            }
            let twist = p_fractional_part(&(xi / b), p);
            Ok(WhittakerValue {
                scalar: s_val.scalar,
                twist: if twist.is_zero() { None } else { Some(twist) },
            })
        }
    }
}

/// Evaluation mode for the correction factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectionMode {
    /// The finite closed formula.
    Closed,
    /// The normalized Whittaker double sum, via the scaling relations.
    Sum,
}

/// Result of [`correction_factor`]: a rational with a vanishing flag for
/// matrices outside the support lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionValue {
    pub value: Rational,
    pub vanishes: bool,
}

/// The quadratic-class sign `chi_{-2 delta}(p)` as a Legendre symbol.
pub fn chi_minus_two_delta(delta: &Rational, p: u64) -> Result<i32> {
    if val_p(delta, p) != Some(0) {
        return Err(Error::domain("delta must be a p-adic unit"));
    }
    let arg = delta * rint(-2);
    let r = crate::arith::unit_residue(&arg, p, 1)?;
    Ok(legendre_symbol(&r, p))
}

/// The correction factor of the level-raised degree-2 coefficient at a prime
/// dividing the level quotient.
///
/// When `b1` or `b2` is non-integral or `b3` is not divisible by `p`, the
/// underlying coefficient vanishes and the factor is flagged. Otherwise the
/// closed formula is
/// `1 + (1 - 1/p) sum_{n=1}^{n(B)} p^{2n} chi^n + (n(B)-m(B)) p^{2n(B)+1} chi^{n(B)+1}`
/// with `chi = chi_{-2 delta}(p)`; the sum mode instead assembles the
/// normalized Whittaker double sum through the scaling relations
/// `W(1)-values = p^n Psi` and `W(s)-values = -p^{n-1} Psi` and divides by
/// `mu_p^{-1} Psi_p(xi; alpha_p)`.
pub fn correction_factor(
    p: u64,
    b: &SymHalfIntegralMatrix,
    delta: &Rational,
    mode: CorrectionMode,
    nf: &NewformData,
) -> Result<CorrectionValue> {
    if p == 2 || !crate::arith::is_prime_small(p) {
        return Err(Error::UnsupportedPlace(format!("odd prime required, got {p}")));
    }
    let [v1, v2, v3] = b.valuations(p);
    if v1.is_none() && v2.is_none() && v3.is_none() {
        return Err(Error::domain("the zero matrix has no correction factor"));
    }
    let supported = v1.map_or(true, |v| v >= 0)
        && v2.map_or(true, |v| v >= 0)
        && v3.map_or(true, |v| v >= 1);
    if !supported {
        return Ok(CorrectionValue {
            value: Rational::zero(),
            vanishes: true,
        });
    }
    let n_b = b.n_index(p);
    let m_b = b.m_index(p);
    debug_assert!(m_b >= n_b && n_b >= 0 && m_b - n_b <= 1);
    let chi = chi_minus_two_delta(delta, p)?;
    match mode {
        CorrectionMode::Closed => {
            let mut value = Rational::one();
            let unit_defect = Rational::one() - rat(1, p as i64);
            for n in 1..=n_b {
                let term = crate::arith::pow_rational(p, 2 * n)
                    * rint(pow_sign(chi, n));
                value += &unit_defect * term;
            }
            if m_b > n_b {
                value -= crate::arith::pow_rational(p, 2 * n_b + 1)
                    * rint(pow_sign(chi, n_b + 1));
            }
            Ok(CorrectionValue {
                value,
                vanishes: false,
            })
        }
        CorrectionMode::Sum => {
            let xi = b.det();
            let psi = super::psi_factor(&xi, p, nf)?;
            if psi.is_zero() {
                return Err(Error::IndeterminateNormalization(format!(
                    "the local factor at {p} vanishes for this index; the sum route cannot be normalized"
                )));
            }
            // W-family through the scaling relations: the identity values are
            // p^n Psi, the Weyl values are p^n * (-p^{-1} Psi).
            let mu_inv = rat(1, p as i64 + 1); // vol of the Iwahori subgroup
            let mut total = crate::arith::ExactScalar::zero(p);
            for n in 0..=n_b {
                let coeff = crate::arith::pow_rational(p, n)
                    * rint(pow_sign(chi, n))
                    * crate::arith::pow_rational(p, n);
                total = &total + &psi.scale(&coeff);
            }
            for n in 1..=m_b {
                let coeff = crate::arith::pow_rational(p, n)
                    * rint(pow_sign(chi, n))
                    * crate::arith::pow_rational(p, n)
                    * rat(-1, p as i64);
                total = &total + &psi.scale(&coeff);
            }
            let total = total.scale(&mu_inv);
            // divide by mu_p^{-1} Psi
            let normalized = &total * &psi.scale(&mu_inv).invert()?;
            let value = normalized
                .to_rational()
                .ok_or_else(|| Error::domain("correction factor did not collapse"))?;
            Ok(CorrectionValue {
                value,
                vanishes: false,
            })
        }
    }
}

fn pow_sign(chi: i32, n: i64) -> i64 {
    if chi == 1 || n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::NewformData;

    fn level_form(p: u64, w: i32) -> NewformData {
        NewformData::new(p, 2, [(p, w)].into(), Default::default()).unwrap()
    }

    #[test]
    fn whittaker_spec_examples() {
        // p=3, xi=1: 1 + (-3,3)_3 = 2
        let v = whittaker_value(3, &rint(1), &WhittakerElement::One).unwrap();
        assert_eq!(v.scalar, rint(2));
        // p=3, xi=3 (odd valuation, r=0): 3^{-1} * 4
        let v = whittaker_value(3, &rint(3), &WhittakerElement::One).unwrap();
        assert_eq!(v.scalar, rat(4, 3));
        // valuation -2 at the Weyl element: 0
        let v = whittaker_value(3, &rat(1, 9), &WhittakerElement::WeylS).unwrap();
        assert!(v.is_zero());
        // valuation -1 at the Weyl element: nonzero odd branch with r = -1
        let v = whittaker_value(3, &rat(1, 3), &WhittakerElement::WeylS).unwrap();
        assert_eq!(v.scalar, -rat(4, 3));
        // the identity value vanishes below valuation 0
        let v = whittaker_value(3, &rat(1, 3), &WhittakerElement::One).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn whittaker_relations() {
        for &p in &[3u64, 5, 7] {
            for v in 0..=6i64 {
                for unit in [1i64, 2, 3] {
                    if unit % p as i64 == 0 {
                        continue;
                    }
                    let xi = crate::arith::pow_rational(p, v) * rint(unit);
                    let one = whittaker_value(p, &xi, &WhittakerElement::One).unwrap();
                    let s = whittaker_value(p, &xi, &WhittakerElement::WeylS).unwrap();
                    // W(s) = -p^{-1} W(1) on the common support
                    assert_eq!(s.scalar, -rat(1, p as i64) * &one.scalar);
                    // r_b carries the additive twist on top of the Weyl value
                    let b = rint(if p == 3 { 2 } else { 3 });
                    let rb = whittaker_value(p, &xi, &WhittakerElement::RLower(b.clone()))
                        .unwrap();
                    assert_eq!(rb.scalar, s.scalar);
                    if !s.is_zero() {
                        let expected_twist = p_fractional_part(&(&xi / &b), p);
                        let got = rb.twist.unwrap_or_else(Rational::zero);
                        assert_eq!(got, expected_twist);
                    }
                    // p-scaling: W at xi/p^2 equals p W at xi, within branch minima
                    if v >= 2 {
                        let down = &xi / rint((p * p) as i64);
                        let w_down =
                            whittaker_value(p, &down, &WhittakerElement::One).unwrap();
                        assert_eq!(w_down.scalar, one.scalar.clone() * rint(p as i64));
                        let s_down =
                            whittaker_value(p, &down, &WhittakerElement::WeylS).unwrap();
                        assert_eq!(s_down.scalar, s.scalar.clone() * rint(p as i64));
                    }
                }
            }
        }
    }

    #[test]
    fn correction_spec_examples() {
        let p = 3;
        // nu = (0,0,1): both sums empty -> 1
        let b = SymHalfIntegralMatrix::from_ints(1, 1, 3);
        let nf = level_form(3, -1);
        let delta = rint(2);
        let v = correction_factor(p, &b, &delta, CorrectionMode::Closed, &nf).unwrap();
        assert_eq!(v.value, rint(1));
        assert!(!v.vanishes);
        // nu = (1,1,1), chi_{-2 delta}(3) = -1 for delta = 2 -> 4
        let b = SymHalfIntegralMatrix::from_ints(3, 3, 3);
        assert_eq!(chi_minus_two_delta(&delta, 3).unwrap(), -1);
        let v = correction_factor(p, &b, &delta, CorrectionMode::Closed, &nf).unwrap();
        assert_eq!(v.value, rint(4));
        // m = n = 1 with chi = +1: 1 + (2/3) 9 = 7; delta = 1 gives chi_{-2}(3) = +1
        let delta_plus = rint(1);
        assert_eq!(chi_minus_two_delta(&delta_plus, 3).unwrap(), 1);
        let b = SymHalfIntegralMatrix::from_ints(3, 3, 9);
        assert_eq!((b.n_index(3), b.m_index(3)), (1, 1));
        let v = correction_factor(p, &b, &delta_plus, CorrectionMode::Closed, &nf).unwrap();
        assert_eq!(v.value, rint(7));
        // off the lattice: vanishing flag
        let b = SymHalfIntegralMatrix::from_ints(1, 1, 1);
        let v = correction_factor(p, &b, &delta, CorrectionMode::Closed, &nf).unwrap();
        assert!(v.vanishes && v.value.is_zero());
        // the zero matrix is rejected rather than looping on capped indices
        let b = SymHalfIntegralMatrix::from_ints(0, 0, 0);
        assert!(correction_factor(p, &b, &delta, CorrectionMode::Closed, &nf).is_err());
    }

    #[test]
    fn closed_equals_sum_where_normalizable() {
        // sweep small valuation triples at p = 3 with both residue classes
        let p = 3u64;
        for w in [1, -1] {
            let nf = level_form(p, w);
            for delta in [rint(1), rint(2)] {
                for v1 in 0..=2i64 {
                    for v2 in 0..=2i64 {
                        for v3 in 1..=3i64 {
                            let b = SymHalfIntegralMatrix::new(
                                crate::arith::pow_rational(p, v1),
                                crate::arith::pow_rational(p, v2),
                                crate::arith::pow_rational(p, v3),
                            );
                            let closed =
                                correction_factor(p, &b, &delta, CorrectionMode::Closed, &nf)
                                    .unwrap();
                            match correction_factor(p, &b, &delta, CorrectionMode::Sum, &nf) {
                                Ok(sum) => assert_eq!(
                                    closed.value, sum.value,
                                    "mismatch at nu=({v1},{v2},{v3}) delta={delta} w={w}"
                                ),
                                Err(Error::IndeterminateNormalization(_)) => {
                                    // the local factor vanishes for this index
                                    let xi = b.det();
                                    assert!(super::super::psi_factor(&xi, p, &nf)
                                        .unwrap()
                                        .is_zero());
                                }
                                Err(e) => panic!("unexpected error: {e}"),
                            }
                        }
                    }
                }
            }
        }
    }
}
