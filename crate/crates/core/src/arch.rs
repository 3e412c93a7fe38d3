//! The discrete-series model of the Jacobi group at the real place: basis
//! norms, raising/lowering operators, the holomorphic vector, and the
//! archimedean period constants.
//!
//! Everything is exact in `Q[pi, pi^{-1}]`; the only floating-point entry
//! point is the quadrature cross-check of the defining integral.

use crate::arith::PiPoly;
use crate::{rat, rint, Error, Rational, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A finite combination of basis vectors `v_{r,s}` (`s` even) with
/// coefficients in `Q[pi, pi^{-1}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiVector {
    pub k: u32,
    pub nf: u64,
    coeffs: BTreeMap<(u32, u32), PiPoly>,
}

impl JacobiVector {
    pub fn zero(k: u32, nf: u64) -> Self {
        JacobiVector { k, nf, coeffs: BTreeMap::new() }
    }

    /// The basis vector `v_{r,s}`; `s` must be even.
    pub fn basis(k: u32, nf: u64, r: u32, s: u32) -> Result<Self> {
        if s % 2 != 0 {
            return Err(Error::domain("the second index must be even"));
        }
        let mut v = JacobiVector::zero(k, nf);
        v.add_term(r, s, &PiPoly::one());
        Ok(v)
    }

    pub fn add_term(&mut self, r: u32, s: u32, c: &PiPoly) {
        if c.is_zero() {
            return;
        }
        debug_assert!(s % 2 == 0);
        let entry = self.coeffs.entry((r, s)).or_insert_with(PiPoly::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.coeffs.remove(&(r, s));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, r: u32, s: u32) -> PiPoly {
        self.coeffs.get(&(r, s)).cloned().unwrap_or_else(PiPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &PiPoly)> {
        self.coeffs.iter()
    }

    /// True when every populated index satisfies `r + s = w`.
    pub fn is_weight_homogeneous(&self, w: u32) -> bool {
        self.coeffs.keys().all(|&(r, s)| r + s == w)
    }
}

/// The four ladder operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieOp {
    XPlus,
    XMinus,
    YPlus,
    YMinus,
}

/// Linear action of a ladder operator on the model:
/// `Y+ v_{r,s} = v_{r+1,s}`,
/// `X+ v_{r,s} = -1/(2 pi Nf) v_{r+2,s}`,
/// `Y- v_{r,s} = -2 pi Nf r v_{r-1,s}`,
/// `X- v_{r,s} = pi Nf r(r-1) v_{r-2,s} - (s/4)(2k+s-1) v_{r,s-2}`.
pub fn lie_action(op: LieOp, v: &JacobiVector) -> JacobiVector {
    let mut out = JacobiVector::zero(v.k, v.nf);
    let nf = rint(v.nf as i64);
    for (&(r, s), c) in v.terms() {
        match op {
            LieOp::YPlus => out.add_term(r + 1, s, c),
            LieOp::XPlus => {
                let factor = PiPoly::term(-1, rat(-1, 2) / nf.clone());
                out.add_term(r + 2, s, &(&factor * c));
            }
            LieOp::YMinus => {
                if r >= 1 {
                    let factor = PiPoly::term(1, rint(-2) * &nf * rint(r as i64));
                    out.add_term(r - 1, s, &(&factor * c));
                }
            }
            LieOp::XMinus => {
                if r >= 2 {
                    let factor = PiPoly::term(1, &nf * rint(r as i64) * rint(r as i64 - 1));
                    out.add_term(r - 2, s, &(&factor * c));
                }
                if s >= 2 {
                    let factor = PiPoly::from_rational(
                        rat(-(s as i64), 4) * rint(2 * v.k as i64 + s as i64 - 1),
                    );
                    out.add_term(r, s - 2, &(&factor * c));
                }
            }
        }
    }
    out
}

/// The holomorphic vector of weight `k+1+2m`: `sum c_s v_{2m-s,s}` with
/// `c_0 = 1` and `c_{s+2} = 4 pi Nf (2m-s)(2m-s-1)/((s+2)(2k+s+1)) c_s`.
/// It is the unique line killed by the lowering operator.
pub fn v_hol(k: u32, m: u32, nf: u64) -> Result<JacobiVector> {
    if k % 2 == 0 {
        return Err(Error::domain("the weight parameter must be odd"));
    }
    let mut v = JacobiVector::zero(k, nf);
    let mut c = PiPoly::one();
    let mut s = 0u32;
    loop {
        v.add_term(2 * m - s, s, &c);
        if s + 2 > 2 * m {
            break;
        }
        let num =
            rint((2 * m - s) as i64) * rint((2 * m - s) as i64 - 1) * rint(4 * nf as i64);
        let den = rint((s + 2) as i64) * rint((2 * k + s + 1) as i64);
        c = &c * &PiPoly::term(1, num / den);
        s += 2;
    }
    Ok(v)
}

/// Squared norm of `v_{r,s}` under the normalization `||v_{2m,0}||^2 = 1`,
/// obtained by walking the two norm recursions from `(2m, 0)`:
/// `||v_{r,s+2}||^2 = (s+2)(2k+s+1)/4 ||v_{r,s}||^2` and
/// `||v_{r+1,s}||^2 = 2 pi Nf (r+1) ||v_{r,s}||^2`.
pub fn basis_norm(k: u32, m: u32, nf: u64, r: u32, s: u32) -> Result<PiPoly> {
    if s % 2 != 0 {
        return Err(Error::domain("unreachable index: s must be even"));
    }
    let mut norm = PiPoly::one();
    let nf_rat = rint(nf as i64);
    let anchor = 2 * m;
    if r > anchor {
        for j in anchor..r {
            norm = &norm * &PiPoly::term(1, rint(2) * &nf_rat * rint(j as i64 + 1));
        }
    } else {
        for j in r..anchor {
            let f = PiPoly::term(1, rint(2) * &nf_rat * rint(j as i64 + 1));
            norm = &norm * &f.invert()?;
        }
    }
    let mut t = 0u32;
    while t < s {
        let f = PiPoly::from_rational(
            rint((t + 2) as i64) * rint((2 * k + t + 1) as i64) / rint(4),
        );
        norm = &norm * &f;
        t += 2;
    }
    Ok(norm)
}

/// Closed form of `||v_{2m-s,s}||^2`:
/// `(4 pi Nf)^{-s} prod (j+2)(2k+j+1) / ((2m-j-1)(2m-j))` over even `j < s`.
pub fn basis_norm_closed(k: u32, m: u32, nf: u64, s: u32) -> Result<PiPoly> {
    if s % 2 != 0 || s > 2 * m {
        return Err(Error::domain("index out of the closed-form range"));
    }
    let mut prod = Rational::one();
    let mut j = 0u32;
    while j + 2 <= s {
        prod *= rint((j + 2) as i64) * rint((2 * k + j + 1) as i64);
        prod /= rint((2 * m - j) as i64 - 1) * rint((2 * m - j) as i64);
        j += 2;
    }
    let scale = rat(1, 4 * nf as i64);
    let mut out = PiPoly::from_rational(prod);
    for _ in 0..s {
        out = &out * &PiPoly::term(-1, scale.clone());
    }
    Ok(out)
}

/// Squared norm of the holomorphic vector: the finite sum
/// `sum_s prod_j (2m-j)(2m-j-1)/((j+2)(2k+j+1))`, a plain rational.
pub fn hol_norm(k: u32, m: u32) -> Rational {
    let mut total = Rational::zero();
    let mut s = 0u32;
    let mut prod = Rational::one();
    loop {
        total += prod.clone();
        if s + 2 > 2 * m {
            break;
        }
        prod *= rint((2 * m - s) as i64) * rint((2 * m - s) as i64 - 1);
        prod /= rint((s + 2) as i64) * rint((2 * k + s + 1) as i64);
        s += 2;
    }
    total
}

/// The four archimedean period constants for weights `(2k, ell+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchPeriod {
    /// The plain local integral: `2 pi^2 / (ell ||v||^2)`.
    pub alpha_sharp: PiPoly,
    /// The regularized period: `pi^{2m} 2^{2m} / C(k, ell)`.
    pub i_sharp: PiPoly,
    /// The weight constant attached to the pair `(k, ell)`.
    pub c_kl: Rational,
    /// The constant entering the central-value formula.
    pub c_fg: Rational,
}

pub(crate) fn factorial(n: u32) -> Rational {
    let mut out = Rational::one();
    for j in 2..=n as i64 {
        out *= rint(j);
    }
    out
}

/// Archimedean constants for odd `k <= ell`.
pub fn arch_period(k: u32, ell: u32) -> Result<ArchPeriod> {
    if k % 2 == 0 || ell % 2 == 0 || ell < k || k == 0 {
        return Err(Error::domain("weights must be odd with ell >= k >= 1"));
    }
    let m = (ell - k) / 2;
    let series_sum = hol_norm(k, m);
    let c_kl = factorial(2 * m) * factorial(ell + k - 1) * factorial(k - 1)
        / (factorial(2 * k - 1) * factorial(ell - 1))
        * series_sum.clone();
    let c_fg = factorial(2 * m) / factorial(m) * factorial(k + m - 1) / factorial(ell - 1)
        * series_sum.clone();
    let alpha_sharp = PiPoly::term(2, rint(2) / (rint(ell as i64) * series_sum));
    let i_sharp = PiPoly::term(
        2 * m as i64,
        crate::arith::pow_rational(2, 2 * m as i64) / c_kl.clone(),
    );
    Ok(ArchPeriod {
        alpha_sharp,
        i_sharp,
        c_kl,
        c_fg,
    })
}

/// The Gamma-factor ratio tying the plain and regularized archimedean
/// integrals:
/// `pi^{ell-k-2} 2^{ell-k-1} ell! (2k-1)! / ((ell+k-1)!(ell-k)!(k-1)!)`.
pub fn arch_l_ratio(k: u32, ell: u32) -> Result<PiPoly> {
    if ell < k || k == 0 {
        return Err(Error::domain("ell >= k >= 1 required"));
    }
    let c = crate::arith::pow_rational(2, (ell - k) as i64 - 1) * factorial(ell)
        * factorial(2 * k - 1)
        / (factorial(ell + k - 1) * factorial(ell - k) * factorial(k - 1));
    Ok(PiPoly::term((ell - k) as i64 - 2, c))
}

/// Adaptive Simpson quadrature of `cosh(t)^{-2(ell+1)} sinh(2t)` on `(0, oo)`;
/// the antiderivative is `-cosh(t)^{-2(ell+1)+2}/ell` up to normalization, so
/// the value is `1/ell`.
pub fn cosh_quadrature_oracle(ell: u32) -> f64 {
    let f = |t: f64| (t.cosh()).powi(-2 * (ell as i32 + 1)) * (2.0 * t).sinh();
    // integrand decays like e^{-2 ell t}
    let upper = 40.0 / ell as f64 + 5.0;
    adaptive_simpson(&f, 0.0, upper, 1e-13, 40)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b))
    }
    let c = 0.5 * (a + b);
    let whole = simpson(f, a, b);
    let left = simpson(f, a, c);
    let right = simpson(f, c, b);
    if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        adaptive_simpson(f, a, c, tol / 2.0, depth - 1)
            + adaptive_simpson(f, c, b, tol / 2.0, depth - 1)
    }
}
