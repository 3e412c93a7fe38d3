//! Closed forms for the non-archimedean local period quantities: matrix
//! coefficients, double-coset volumes, the local integrals, local L-factor
//! ratios, and the regularized periods.

use crate::arith::{weil_gamma_chi, ExactScalar, LaurentPoly};
use crate::padic::CosetElement;
use crate::{rat, rint, Complex, Error, Rational, Result};
use num_traits::{One, Zero};

/// How the prime sits relative to the two levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelCase {
    /// `p` divides neither level.
    Unramified,
    /// `p` divides the smaller level (both local factors special).
    DividesNg,
    /// `p` divides the level quotient (one factor an unramified series).
    DividesMg,
}

/// Value of the formal character square `xi`, when one is needed.
#[derive(Debug, Clone)]
pub enum XiValue {
    /// Keep `xi` formal.
    Formal,
    /// A unit-modulus complex number.
    Unit(Complex),
    /// An exact unit-modulus scalar such as `1` or `-1`.
    Exact(ExactScalar),
}

/// Local configuration at one odd prime.
#[derive(Debug, Clone)]
pub struct LocalConfig {
    pub p: u64,
    pub case: LevelCase,
    /// Atkin-Lehner sign of the weight-`2k` form at `p`.
    pub wp: i32,
    pub xi: XiValue,
}

impl LocalConfig {
    pub fn new(p: u64, case: LevelCase, wp: i32, xi: XiValue) -> Result<Self> {
        if p == 2 || !crate::arith::is_prime_small(p) {
            return Err(Error::UnsupportedPlace(format!("odd prime required, got {p}")));
        }
        if wp != 1 && wp != -1 {
            return Err(Error::domain("Atkin-Lehner sign must be +-1"));
        }
        Ok(LocalConfig { p, case, wp, xi })
    }
}

/// Which normalized matrix coefficient to evaluate in closed form.
#[derive(Debug, Clone, Copy)]
pub enum ClosedFactor {
    /// The level-raised old vector: a Laurent polynomial in `X`.
    TauOld,
    /// The metaplectic newvector: an exact scalar with the given
    /// fundamental discriminant.
    PiTilde { d_disc: i64 },
    /// The lattice indicator in the Weil representation.
    Omega,
}

/// Output of [`matrix_coefficient_closed`].
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedValue {
    Laurent(LaurentPoly),
    Scalar(ExactScalar),
}

impl ClosedValue {
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        match self {
            ClosedValue::Laurent(q) => Some(q),
            _ => None,
        }
    }
    pub fn as_scalar(&self) -> Option<&ExactScalar> {
        match self {
            ClosedValue::Scalar(s) => Some(s),
            _ => None,
        }
    }
}

/// The Laurent polynomial
/// `p^{-|n|}/(p+1) * (xi^{|n|}(p xi - 1) + xi^{-|n|}(xi - p)) / (xi - 1)`
/// in `xi = X^2`, computed by exact Laurent division (the apparent pole at
/// `xi = 1` is removable).
pub fn tau_old_alpha_closed(n: i64, p: u64) -> LaurentPoly {
    let a = n.abs();
    let one = ExactScalar::one(p);
    let pp = ExactScalar::from_rational(p, rint(p as i64));
    // numerator in X: X^{2a}(p X^2 - 1) + X^{-2a}(X^2 - p)
    let mut num = LaurentPoly::zero(p);
    num = &num + &LaurentPoly::monomial(2 * a + 2, pp.clone());
    num = &num + &LaurentPoly::monomial(2 * a, -one.clone());
    num = &num + &LaurentPoly::monomial(-2 * a + 2, one.clone());
    num = &num + &LaurentPoly::monomial(-2 * a, -pp);
    // divide by (X^2 - 1)
    let den = &LaurentPoly::monomial(2, ExactScalar::one(p)) - &LaurentPoly::one(p);
    let quot = num.exact_div(&den).expect("pole at xi=1 is removable");
    let scale = ExactScalar::from_rational(
        p,
        crate::arith::pow_rational(p, -a) / rint(p as i64 + 1),
    );
    quot.scale(&scale)
}

/// Closed form of a normalized matrix coefficient at a double-coset
/// representative.
pub fn matrix_coefficient_closed(
    factor: ClosedFactor,
    elem: CosetElement,
    cfg: &LocalConfig,
) -> Result<ClosedValue> {
    let p = cfg.p;
    match factor {
        ClosedFactor::TauOld => {
            if cfg.case != LevelCase::DividesMg {
                return Err(Error::domain(
                    "the old-vector coefficient needs the level-quotient case",
                ));
            }
            let q = match elem {
                CosetElement::Alpha(n) => tau_old_alpha_closed(n, p),
                // the Weyl-translated value equals the torus value one step down
                CosetElement::Beta(m) => tau_old_alpha_closed(m - 1, p),
            };
            Ok(ClosedValue::Laurent(q))
        }
        ClosedFactor::PiTilde { d_disc } => {
            let (sign_pow, chi_arg, half_exp) = match elem {
                CosetElement::Alpha(n) => (n, n, -3 * n.abs()),
                CosetElement::Beta(m) => (m + 1, m, -(3 * m - 2).abs()),
            };
            let parity = if sign_pow.rem_euclid(2) == 0 { 1 } else { -1 };
            let arg = crate::arith::pow_rational(p, chi_arg);
            let (_, chi) = weil_gamma_chi(&arg, p, &rint(-d_disc))?;
            Ok(ClosedValue::Scalar(
                &chi.mul_sign(parity) * &ExactScalar::half_power(p, half_exp),
            ))
        }
        ClosedFactor::Omega => {
            let r = match elem {
                CosetElement::Alpha(n) => n,
                CosetElement::Beta(m) => m,
            };
            let arg = crate::arith::pow_rational(p, r);
            let (_, chi) = weil_gamma_chi(&arg, p, &rint(-1))?;
            Ok(ClosedValue::Scalar(
                &chi * &ExactScalar::half_power(p, -r.abs()),
            ))
        }
    }
}

/// Volumes of the double cosets of the Iwahori subgroup, under the
/// normalization `vol(SL_2(Z_p)) = 1 - p^{-2}`.
pub fn double_coset_volume(elem: CosetElement, p: u64) -> Rational {
    let p_i = p as i64;
    match elem {
        CosetElement::Alpha(n) => {
            let e = if n > 0 { 2 * n - 2 } else { -2 * n - 2 };
            crate::arith::pow_rational(p, e) * rint(p_i - 1)
        }
        CosetElement::Beta(m) => {
            let e = if m > 0 { 2 * m - 3 } else { -2 * m - 1 };
            crate::arith::pow_rational(p, e) * rint(p_i - 1)
        }
    }
}

/// Evaluation mode for the local integral.
#[derive(Debug, Clone, Copy)]
pub enum IntegralMode {
    Closed,
    Truncated(i64),
}

/// Value of the local integral or the L-ratio: exact, floating, or a formal
/// rational function in `X` given as a numerator/denominator pair.
#[derive(Debug, Clone)]
pub enum PeriodValue {
    Exact(Rational),
    Complex(Complex),
    RationalFn { num: LaurentPoly, den: LaurentPoly },
}

impl PeriodValue {
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            PeriodValue::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_complex(&self, xi: Complex) -> Complex {
        match self {
            PeriodValue::Exact(r) => Complex::new(crate::arith::rational_to_f64_pub(r), 0.0),
            PeriodValue::Complex(z) => *z,
            PeriodValue::RationalFn { num, den } => {
                let x = xi.sqrt();
                num.eval_complex(x) / den.eval_complex(x)
            }
        }
    }
}

/// `(p - xi)(p xi - 1)` resp. `(p + xi)(p xi + 1)` as Laurent polynomials in
/// `X` (with `xi = X^2`), for `sign = -1` resp. `+1`.
fn quadratic_factors(p: u64, sign: i32) -> (LaurentPoly, LaurentPoly) {
    let pp = ExactScalar::from_rational(p, rint(p as i64));
    let s = ExactScalar::from_rational(p, rint(sign as i64));
    // (p +- xi) = p +- X^2
    let a = &LaurentPoly::monomial(0, pp.clone()) + &LaurentPoly::monomial(2, s.clone());
    // (p xi +- 1) = p X^2 +- 1
    let b = &LaurentPoly::monomial(2, pp) + &LaurentPoly::monomial(0, s);
    (a, b)
}

/// The local integral of the triple matrix coefficient over the group.
///
/// In the closed mode this is the rational function
/// `2(p-1)^2 (p-xi)(p xi-1) / (p^2 (p+1) (p+xi)(p xi+1))` in the
/// level-quotient case with `w_p = 1` (zero when `w_p = -1`), and
/// `(p - w_p)^2 / p^2` when `p` divides the smaller level. The truncated
/// mode assembles the double-coset sum from the closed matrix coefficients
/// and coset volumes, and needs a numeric unit-modulus `xi`.
pub fn alpha_sharp_p(cfg: &LocalConfig, mode: IntegralMode) -> Result<PeriodValue> {
    let p = cfg.p;
    let p_i = p as i64;
    match cfg.case {
        LevelCase::Unramified => Err(Error::domain(
            "the local integral is only assembled at ramified primes here",
        )),
        LevelCase::DividesNg => match mode {
            IntegralMode::Closed => {
                let num = rint(p_i - cfg.wp as i64) * rint(p_i - cfg.wp as i64);
                Ok(PeriodValue::Exact(num / rint(p_i * p_i)))
            }
            IntegralMode::Truncated(_) => Err(Error::domain(
                "the truncated sum is implemented for the level-quotient case",
            )),
        },
        LevelCase::DividesMg => match mode {
            IntegralMode::Closed => {
                if cfg.wp == -1 {
                    return Ok(PeriodValue::Exact(Rational::zero()));
                }
                let (a_minus, b_minus) = quadratic_factors(p, -1);
                let (a_plus, b_plus) = quadratic_factors(p, 1);
                let num = (&a_minus * &b_minus)
                    .scale(&ExactScalar::from_rational(p, rint(2 * (p_i - 1) * (p_i - 1))));
                let den = (&a_plus * &b_plus)
                    .scale(&ExactScalar::from_rational(p, rint(p_i * p_i * (p_i + 1))));
                match &cfg.xi {
                    XiValue::Formal => Ok(PeriodValue::RationalFn { num, den }),
                    XiValue::Unit(z) => {
                        let x = z.sqrt();
                        Ok(PeriodValue::Complex(
                            num.eval_complex(x) / den.eval_complex(x),
                        ))
                    }
                    XiValue::Exact(s) => {
                        // even polynomials only need xi itself
                        let nv = eval_even_poly(&num, s)?;
                        let dv = eval_even_poly(&den, s)?;
                        let q = &nv * &dv.invert()?;
                        match q.to_rational() {
                            Some(r) => Ok(PeriodValue::Exact(r)),
                            None => Err(Error::domain("non-rational exact evaluation")),
                        }
                    }
                }
            }
            IntegralMode::Truncated(cutoff) => {
                let xi = match &cfg.xi {
                    XiValue::Unit(z) => *z,
                    XiValue::Exact(s) => s.to_complex(),
                    XiValue::Formal => {
                        return Err(Error::domain(
                            "truncated mode needs a unit-modulus xi; substitute first",
                        ))
                    }
                };
                Ok(PeriodValue::Complex(
                    alpha_sharp_truncated_batch(cfg, cutoff, &[xi])?[0],
                ))
            }
        },
    }
}

fn vol_f64(elem: CosetElement, p: u64) -> f64 {
    crate::arith::rational_to_f64_pub(&double_coset_volume(elem, p))
}

/// Truncated double-coset sum of the local integral, evaluated at several
/// unit-modulus `xi` values at once; each coset element's three factors are
/// built a single time.
pub fn alpha_sharp_truncated_batch(
    cfg: &LocalConfig,
    cutoff: i64,
    xis: &[Complex],
) -> Result<Vec<Complex>> {
    if cfg.case != LevelCase::DividesMg {
        return Err(Error::domain(
            "the truncated sum is implemented for the level-quotient case",
        ));
    }
    let p = cfg.p;
    let mut acc = vec![Complex::new(0.0, 0.0); xis.len()];
    let roots: Vec<Complex> = xis.iter().map(|z| z.sqrt()).collect();
    let push = |elem: CosetElement, acc: &mut Vec<Complex>| -> Result<()> {
        let d_disc = pick_discriminant(p, cfg.wp)?;
        let tau = matrix_coefficient_closed(ClosedFactor::TauOld, elem, cfg)?;
        let pi = matrix_coefficient_closed(ClosedFactor::PiTilde { d_disc }, elem, cfg)?;
        let om = matrix_coefficient_closed(ClosedFactor::Omega, elem, cfg)?;
        let scalar_part =
            pi.as_scalar().unwrap().conj().to_complex() * om.as_scalar().unwrap().to_complex();
        let vol = vol_f64(elem, p);
        for (a, x) in acc.iter_mut().zip(&roots) {
            *a += scalar_part * tau.as_laurent().unwrap().eval_complex(*x) * vol;
        }
        Ok(())
    };
    for n in -cutoff..=cutoff {
        push(CosetElement::Alpha(n), &mut acc)?;
    }
    for m in -cutoff..=cutoff {
        push(CosetElement::Beta(m), &mut acc)?;
    }
    Ok(acc)
}

/// A fundamental discriminant `D < 0`, prime to `p`, with Kronecker value
/// `wp` at `p`.
pub fn pick_discriminant(p: u64, wp: i32) -> Result<i64> {
    for d in [-3i64, -4, -7, -8, -11, -15, -19, -20, -23, -24] {
        if d % p as i64 != 0
            && crate::arith::kronecker_symbol(&crate::Integer::from(d), p) == wp
        {
            return Ok(d);
        }
    }
    Err(Error::domain(format!(
        "no small fundamental discriminant with value {wp} at {p}"
    )))
}

fn eval_even_poly(q: &LaurentPoly, xi: &ExactScalar) -> Result<ExactScalar> {
    let mut acc = ExactScalar::zero(q.prime());
    for (e, c) in q.terms() {
        if e.rem_euclid(2) != 0 {
            return Err(Error::domain("polynomial has odd powers of X"));
        }
        acc = &acc + &(c * &xi.pow(e / 2)?);
    }
    Ok(acc)
}

/// Output of [`local_l_ratio`].
#[derive(Debug, Clone)]
pub enum LRatio {
    /// Adjoint-to-central ratio as a rational function of `xi` in the
    /// level-quotient case.
    Factored { num: LaurentPoly, den: LaurentPoly },
    /// Only the combined ratio of regularized to plain integral is exposed
    /// when `p` divides the smaller level.
    CombinedOnly(Rational),
    /// Unramified convention: the regularized period is 1 (flagged).
    UnramifiedOne,
}

/// The ratio of local adjoint L-values to the central L-value entering the
/// regularized period.
pub fn local_l_ratio(cfg: &LocalConfig) -> Result<LRatio> {
    let p = cfg.p;
    let p_i = p as i64;
    match cfg.case {
        LevelCase::Unramified => Ok(LRatio::UnramifiedOne),
        LevelCase::DividesNg => {
            let num = rint(p_i);
            let den = rint(p_i - cfg.wp as i64) * rint(p_i - cfg.wp as i64);
            Ok(LRatio::CombinedOnly(num / den))
        }
        LevelCase::DividesMg => {
            // p^2 (p+xi)(p xi + 1) / ((p-1)^2 (p-xi)(p xi - 1))
            let (a_plus, b_plus) = quadratic_factors(p, 1);
            let (a_minus, b_minus) = quadratic_factors(p, -1);
            let num =
                (&a_plus * &b_plus).scale(&ExactScalar::from_rational(p, rint(p_i * p_i)));
            let den = (&a_minus * &b_minus)
                .scale(&ExactScalar::from_rational(p, rint((p_i - 1) * (p_i - 1))));
            Ok(LRatio::Factored { num, den })
        }
    }
}

/// The L-ratio as a value: exact when `xi` is exact, floating on the unit
/// circle, and a numerator/denominator pair when formal.
pub fn l_ratio_value(cfg: &LocalConfig) -> Result<PeriodValue> {
    match local_l_ratio(cfg)? {
        LRatio::UnramifiedOne => Ok(PeriodValue::Exact(Rational::one())),
        LRatio::CombinedOnly(r) => Ok(PeriodValue::Exact(r)),
        LRatio::Factored { num, den } => match &cfg.xi {
            XiValue::Formal => Ok(PeriodValue::RationalFn { num, den }),
            XiValue::Unit(z) => {
                let x = z.sqrt();
                Ok(PeriodValue::Complex(
                    num.eval_complex(x) / den.eval_complex(x),
                ))
            }
            XiValue::Exact(s) => {
                let nv = eval_even_poly(&num, s)?;
                let dv = eval_even_poly(&den, s)?;
                let q = &nv * &dv.invert()?;
                q.to_rational()
                    .map(PeriodValue::Exact)
                    .ok_or_else(|| Error::domain("non-rational exact evaluation"))
            }
        },
    }
}

/// The regularized local period at an odd prime.
pub fn i_sharp_p(cfg: &LocalConfig) -> Rational {
    let p_i = cfg.p as i64;
    match cfg.case {
        LevelCase::Unramified => Rational::one(),
        LevelCase::DividesNg => rat(1, p_i),
        LevelCase::DividesMg => {
            if cfg.wp == 1 {
                rat(2, p_i + 1)
            } else {
                Rational::zero()
            }
        }
    }
}
