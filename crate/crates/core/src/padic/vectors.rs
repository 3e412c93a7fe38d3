//! Exact evaluation of the three local test vectors.

use super::mat2::{iwasawa_decompose, Mat2};
use super::metaplectic::{cocycle, splitting_sign, MetaplecticElement};
use crate::arith::{hilbert_symbol, val_p, weil_gamma_chi, ExactScalar, LaurentPoly, Place};
use crate::{rint, Error, Rational, Result};
use num_traits::Zero;

/// Which vector in the principal-series family is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauVariant {
    /// The level-raised old vector attached to a spherical vector, fixed by
    /// the Iwahori subgroup.
    OldAtMg,
    /// The local newvector of the special representation at a level prime.
    NewAtNg,
}

/// Evaluate the principal-series vector at an invertible matrix, as a
/// Laurent monomial in the formal character value `X`.
///
/// The diagonal part contributes `X^{val(a) - val(d)} p^{(val(d)-val(a))/2}`;
/// the compact part contributes the vector's restriction data, which for the
/// old vector is `p^{1/2} X^{-1}` on `B K_0` and `p^{-1/2} X` off it, and for
/// the newvector is `1` on `K_0` and `-1/p` off it.
pub fn eval_tau_vector(variant: TauVariant, y: &Mat2, p: u64) -> Result<LaurentPoly> {
    let iw = iwasawa_decompose(y, p)?;
    let diff = iw.val_a - iw.val_d;
    let base = ExactScalar::half_power(p, -diff);
    Ok(match variant {
        TauVariant::OldAtMg => {
            if iw.in_k0 {
                LaurentPoly::monomial(diff - 1, &base * &ExactScalar::half_power(p, 1))
            } else {
                LaurentPoly::monomial(diff + 1, &base * &ExactScalar::half_power(p, -1))
            }
        }
        TauVariant::NewAtNg => {
            if iw.in_k0 {
                LaurentPoly::monomial(diff, base)
            } else {
                LaurentPoly::monomial(diff, base.scale(&crate::rat(-1, p as i64)))
            }
        }
    })
}

/// Evaluate the metaplectic newvector of the special representation.
///
/// The element is factored through an upper-triangular part times an
/// integral part; the upper-triangular part transforms by
/// `chi_{psibar^D}(a) chi_delta(a) |a|^{3/2}` and the integral part is read
/// off the restriction `1 - (p+1) 1_{Iwahori}` twisted by the splitting.
pub fn eval_h_vector(
    e: &MetaplecticElement,
    p: u64,
    d_disc: i64,
    delta: &Rational,
) -> Result<ExactScalar> {
    if p == 2 || d_disc % (p as i64) == 0 {
        return Err(Error::UnsupportedPlace(format!(
            "newvector evaluation needs odd p with p not dividing the discriminant; p={p}, D={d_disc}"
        )));
    }
    if val_p(delta, p) != Some(0) {
        return Err(Error::domain("delta must be a p-adic unit"));
    }
    let y = &e.g;
    let vc = val_p(&y.c, p);
    let vd = val_p(&y.d, p);
    let t = match (vc, vd) {
        (None, None) => return Err(Error::SingularMatrix),
        (None, Some(v)) | (Some(v), None) => v,
        (Some(v1), Some(v2)) => v1.min(v2),
    };
    let a = crate::arith::pow_rational(p, -t);
    let c0 = &a * &y.c;
    let d0 = &a * &y.d;
    let kappa = if val_p(&d0, p) == Some(0) {
        Mat2::new(d0.recip(), Rational::zero(), c0, d0)
    } else {
        Mat2::new(Rational::zero(), -c0.clone().recip(), c0, d0)
    };
    let bmat = y * &kappa.inverse()?;
    debug_assert!(bmat.c.is_zero());
    let eps_prime = e.eps * cocycle(&bmat, &kappa, p)?;
    // restriction value at the integral part
    let in_iwahori = val_p(&kappa.c, p).map_or(true, |v| v >= 1);
    let sign = (eps_prime * splitting_sign(&kappa, p)?) as i64;
    let compact_value = if in_iwahori { sign * -(p as i64) } else { sign };
    // transformation character of the upper-triangular part
    let a_entry = &bmat.a;
    let va = val_p(a_entry, p).unwrap();
    let (_, chi_psibar_d) = weil_gamma_chi(a_entry, p, &rint(-d_disc))?;
    let chi_delta = hilbert_symbol(a_entry, delta, Place::Finite(p))?;
    let modulus = ExactScalar::half_power(p, -3 * va);
    Ok(&chi_psibar_d
        .mul_sign(chi_delta)
        .scale(&rint(compact_value))
        * &modulus)
}
