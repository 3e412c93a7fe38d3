//! Fourier coefficients of the level-raised nearly holomorphic degree-2 form:
//! correction factors times the expansion constant times the divisor-sum
//! coefficient, with the support condition on the lower-right entry.

use super::{
    correction_factor, maass_c_eval, sk_coefficient, CorrectionMode, HalfIntegralData,
    SymHalfIntegralMatrix,
};
use crate::arith::{factorize, PiPoly};
use crate::{Rational, Result};

/// The coefficient at `B` of the level-raised form for weights `(2k, ell+1)`
/// with `ell = k + 2m`: zero unless `b3` is divisible by the level quotient,
/// and otherwise the product of the per-prime correction factors, the
/// expansion constant `C(B, Y)`, and the degree-2 divisor sum.
pub fn breve_coefficient(
    h: &HalfIntegralData,
    b: &SymHalfIntegralMatrix,
    y: &[Rational; 3],
    m: u32,
    mg: u64,
    delta: &Rational,
) -> Result<PiPoly> {
    let nf = &h.parent;
    let k = nf.k();
    // support: b3 must lie in mg * Z
    let b3_supported = (&b.b3 / crate::rint(mg as i64)).is_integer();
    if !b3_supported {
        return Ok(PiPoly::zero());
    }
    let mut correction = Rational::from_integer(1.into());
    for (p, _) in factorize(mg) {
        let c = correction_factor(p, b, delta, CorrectionMode::Closed, nf)?;
        if c.vanishes {
            return Ok(PiPoly::zero());
        }
        correction *= c.value;
    }
    let c_by = maass_c_eval(b, y, k, m)?;
    let a_f = sk_coefficient(h, b)?;
    Ok(c_by.scale(&(correction * a_f)))
}
