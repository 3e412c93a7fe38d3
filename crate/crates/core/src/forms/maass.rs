//! Symbolic application of the degree-2 weight-raising operator, the
//! verbatim expansion constant, and their comparison report.
//!
//! The engine works over polynomials in `(y1, v, y2, b1, b2, b3)` with
//! Gaussian-rational coefficients and a formal power of `pi`, divided by a
//! power of `det Y`. The operator acts on cofactors of the exponential
//! `e^{2 pi i (b1 t1 + b2 z + b3 t2)}` through
//! `d/dt1 -> -(i/2) d/dy1 + 2 pi i b1`, and cyclically.

use super::SymHalfIntegralMatrix;
use crate::arith::{GaussianRational, PiPoly};
use crate::{rat, rint, Complex, Error, Rational, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Monomial exponents: `y = (y1, v, y2)`, `b = (b1, b2, b3)`, and the power
/// of `pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Mono {
    y: [u8; 3],
    b: [u8; 3],
    pi: i16,
}

impl Mono {
    fn one() -> Self {
        Mono { y: [0; 3], b: [0; 3], pi: 0 }
    }
}

/// Polynomial part of a symbolic expression.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Mono, GaussianRational>,
}

impl SymPoly {
    fn zero() -> Self {
        SymPoly::default()
    }

    fn constant(c: GaussianRational) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(Mono::one(), &c);
        p
    }

    fn one() -> Self {
        SymPoly::constant(GaussianRational::one())
    }

    fn y_var(i: usize) -> Self {
        let mut m = Mono::one();
        m.y[i] = 1;
        let mut p = SymPoly::zero();
        p.add_term(m, &GaussianRational::one());
        p
    }

    fn b_var(i: usize) -> Self {
        let mut m = Mono::one();
        m.b[i] = 1;
        let mut p = SymPoly::zero();
        p.add_term(m, &GaussianRational::one());
        p
    }

    fn add_term(&mut self, m: Mono, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(m)
            .or_insert_with(GaussianRational::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = Mono {
                    y: [m1.y[0] + m2.y[0], m1.y[1] + m2.y[1], m1.y[2] + m2.y[2]],
                    b: [m1.b[0] + m2.b[0], m1.b[1] + m2.b[1], m1.b[2] + m2.b[2]],
                    pi: m1.pi + m2.pi,
                };
                out.add_term(m, &(c1 * c2));
            }
        }
        out
    }

    fn scale(&self, c: &GaussianRational) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, &(v * c));
        }
        out
    }

    fn mul_pi(&self, e: i16) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, v) in &self.terms {
            let mut m2 = *m;
            m2.pi += e;
            out.add_term(m2, v);
        }
        out
    }

    /// Derivative w.r.t. the `i`-th `y` variable.
    fn d_dy(&self, i: usize) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, v) in &self.terms {
            if m.y[i] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.y[i] -= 1;
            let c = v * &GaussianRational::from_rational(rint(m.y[i] as i64));
            out.add_term(m2, &c);
        }
        out
    }

    fn eval(&self, bv: &[Rational; 3], yv: &[Rational; 3]) -> BTreeMap<i64, GaussianRational> {
        let mut out: BTreeMap<i64, GaussianRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut scalar = Rational::one();
            for i in 0..3 {
                for _ in 0..m.y[i] {
                    scalar *= &yv[i];
                }
                for _ in 0..m.b[i] {
                    scalar *= &bv[i];
                }
            }
            let val = c * &GaussianRational::from_rational(scalar);
            let entry = out
                .entry(m.pi as i64)
                .or_insert_with(GaussianRational::zero);
            *entry = &*entry + &val;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// `det Y = y1 y2 - v^2` as a polynomial.
fn det_y_poly() -> SymPoly {
    let y1y2 = SymPoly::y_var(0).mul(&SymPoly::y_var(2));
    let v2 = SymPoly::y_var(1).mul(&SymPoly::y_var(1));
    y1y2.add(&v2.scale(&GaussianRational::from_rational(rint(-1))))
}

/// A rational expression `num / det(Y)^den_pow`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymExpr {
    num: SymPoly,
    den_pow: u32,
}

impl SymExpr {
    pub fn one() -> Self {
        SymExpr { num: SymPoly::one(), den_pow: 0 }
    }

    fn with_den(num: SymPoly, den_pow: u32) -> Self {
        SymExpr { num, den_pow }
    }

    fn raise_den(&self, target: u32) -> SymPoly {
        let mut num = self.num.clone();
        let dy = det_y_poly();
        for _ in self.den_pow..target {
            num = num.mul(&dy);
        }
        num
    }

    fn add(&self, other: &SymExpr) -> SymExpr {
        let d = self.den_pow.max(other.den_pow);
        SymExpr::with_den(self.raise_den(d).add(&other.raise_den(d)), d)
    }

    fn scale(&self, c: &GaussianRational) -> SymExpr {
        SymExpr::with_den(self.num.scale(c), self.den_pow)
    }

    fn mul_poly(&self, p: &SymPoly) -> SymExpr {
        SymExpr::with_den(self.num.mul(p), self.den_pow)
    }

    fn mul_pi(&self, e: i16) -> SymExpr {
        SymExpr::with_den(self.num.mul_pi(e), self.den_pow)
    }

    fn div_det(&self) -> SymExpr {
        SymExpr::with_den(self.num.clone(), self.den_pow + 1)
    }

    /// Derivative w.r.t. `y` variable `i`, by the quotient rule; the
    /// derivative of `det Y` is `y2`, `-2v`, `y1` for `i = 0, 1, 2`.
    fn d_dy(&self, i: usize) -> SymExpr {
        let dy = det_y_poly();
        let ddet = match i {
            0 => SymPoly::y_var(2),
            1 => SymPoly::y_var(1).scale(&GaussianRational::from_rational(rint(-2))),
            2 => SymPoly::y_var(0),
            _ => unreachable!(),
        };
        let part1 = self.num.d_dy(i).mul(&dy);
        let part2 = self
            .num
            .mul(&ddet)
            .scale(&GaussianRational::from_rational(rint(-(self.den_pow as i64))));
        SymExpr::with_den(part1.add(&part2), self.den_pow + 1)
    }

    /// Evaluate at rational matrices, returning a Laurent polynomial in `pi`
    /// with Gaussian coefficients.
    pub fn eval_gaussian(
        &self,
        b: &SymHalfIntegralMatrix,
        y: &[Rational; 3],
    ) -> Result<BTreeMap<i64, GaussianRational>> {
        let bv = [b.b1.clone(), b.b2.clone(), b.b3.clone()];
        let det_y = &y[0] * &y[2] - &y[1] * &y[1];
        if det_y.is_zero() {
            return Err(Error::domain("singular Y"));
        }
        let mut den = Rational::one();
        for _ in 0..self.den_pow {
            den *= &det_y;
        }
        let mut out = self.num.eval(&bv, y);
        for v in out.values_mut() {
            *v = &*v * &GaussianRational::from_rational(den.clone().recip());
        }
        Ok(out)
    }

    /// Evaluate at rational input, requiring a real result.
    pub fn eval_real(&self, b: &SymHalfIntegralMatrix, y: &[Rational; 3]) -> Result<PiPoly> {
        let g = self.eval_gaussian(b, y)?;
        let mut out = PiPoly::zero();
        for (e, c) in g {
            if !c.im.is_zero() {
                return Err(Error::domain("expression did not evaluate to a real value"));
            }
            out.add_term(e, &c.re);
        }
        Ok(out)
    }

    /// Numeric complex evaluation with `pi` substituted.
    pub fn eval_complex(&self, b: &SymHalfIntegralMatrix, y: &[f64; 3]) -> Complex {
        let pi = std::f64::consts::PI;
        let det_y = y[0] * y[2] - y[1] * y[1];
        let bv = [
            crate::arith::rational_to_f64_pub(&b.b1),
            crate::arith::rational_to_f64_pub(&b.b2),
            crate::arith::rational_to_f64_pub(&b.b3),
        ];
        let mut acc = Complex::new(0.0, 0.0);
        for (m, c) in &self.num.terms {
            let mut s = pi.powi(m.pi as i32);
            for i in 0..3 {
                s *= y[i].powi(m.y[i] as i32) * bv[i].powi(m.b[i] as i32);
            }
            acc += c.to_complex() * s;
        }
        acc / det_y.powi(self.den_pow as i32)
    }

    /// Coefficient of `Tr(BY) det(Y)^{-1} pi^{-1}` in a one-step cofactor,
    /// read off by evaluating at `b = (1, 0, 0)`, `Y = 1`: the determinant
    /// term vanishes and the scalar tower sits at other powers of `pi`.
    pub fn trace_term_coefficient(&self) -> Option<Rational> {
        let b = SymHalfIntegralMatrix::from_ints(1, 0, 0);
        let y = [rint(1), rint(0), rint(1)];
        let vals = self.eval_gaussian(&b, &y).ok()?;
        match vals.get(&-1) {
            None => Some(Rational::zero()),
            Some(c) if c.im.is_zero() => Some(c.re.clone()),
            _ => None,
        }
    }
}

/// `d/dt1`, `d/dz`, `d/dt2` acting on cofactors of the exponential.
fn d_tau(expr: &SymExpr, which: usize) -> SymExpr {
    // -(i/2) d/dy + 2 pi i b
    let half_i = GaussianRational::new(Rational::zero(), rat(-1, 2));
    let two_i = GaussianRational::new(Rational::zero(), rint(2).clone());
    let dy = expr.d_dy(which).scale(&half_i);
    let bterm = expr
        .mul_poly(&SymPoly::b_var(which))
        .mul_pi(1)
        .scale(&two_i);
    dy.add(&bterm)
}

/// One application of the weight-`kappa` raising operator to a cofactor.
pub fn maass_delta(kappa: u32, expr: &SymExpr) -> SymExpr {
    let kq = kappa as i64;
    // kappa(2 kappa - 1)/det(Y) * F
    let t1 = expr
        .div_det()
        .scale(&GaussianRational::from_rational(rint(kq * (2 * kq - 1))));
    // -8 d^2/(dt1 dt2)
    let t2 = d_tau(&d_tau(expr, 2), 0)
        .scale(&GaussianRational::from_rational(rint(-8)));
    // +2 d^2/dz^2
    let t3 = d_tau(&d_tau(expr, 1), 1).scale(&GaussianRational::from_rational(rint(2)));
    // (2 kappa) i / det(Y) (y1 dt1 + y2 dt2 + v dz)
    let mut grad = d_tau(expr, 0).mul_poly(&SymPoly::y_var(0));
    grad = grad.add(&d_tau(expr, 2).mul_poly(&SymPoly::y_var(2)));
    grad = grad.add(&d_tau(expr, 1).mul_poly(&SymPoly::y_var(1)));
    let t4 = grad
        .div_det()
        .scale(&GaussianRational::new(Rational::zero(), rint(2 * kq)));
    let total = t1.add(&t2).add(&t3).add(&t4);
    total
        .scale(&GaussianRational::from_rational(rat(1, 32)))
        .mul_pi(-2)
}

/// Symbolic cofactor of the `m`-fold operator chain applied to the pure
/// exponential, starting at weight `k+1`.
pub fn maass_oracle(k: u32, m: u32) -> Result<SymExpr> {
    if m > 3 {
        return Err(Error::CostGuard {
            cells: m as u128,
            guard: 3,
        });
    }
    let mut expr = SymExpr::one();
    for j in 0..m {
        expr = maass_delta(k + 1 + 2 * j, &expr);
    }
    Ok(expr)
}

fn binom(n: i64, k: i64) -> Rational {
    if k < 0 || k > n {
        return Rational::zero();
    }
    let mut out = Rational::one();
    for j in 0..k {
        out *= rint(n - j);
        out /= rint(j + 1);
    }
    out
}

fn rat_pow(base: Rational, e: i64) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// The verbatim triple-sum expansion constant, symbolically.
///
/// `C = sum_j (-4 pi)^{j-m} G_j binom(m,j) det(B)^j det(Y)^{j-m}
///      sum_i (2m-2j-i)!/(i!(m-j-i)!) (4 pi)^{i+j-m}
///      sum_n (l+1)!/(l+1-n)! (-4 pi)^{-n} binom(i,n) Tr(BY)^{i-n}`
/// with `G_j` the half-integer Gamma ratio and `l = k + 2m`.
pub fn maass_c_symbolic(k: u32, m: u32) -> SymExpr {
    let ell = (k + 2 * m) as i64;
    let mi = m as i64;
    let det_b = {
        let b1b3 = SymPoly::b_var(0).mul(&SymPoly::b_var(2));
        let b2sq = SymPoly::b_var(1)
            .mul(&SymPoly::b_var(1))
            .scale(&GaussianRational::from_rational(rat(-1, 4)));
        b1b3.add(&b2sq)
    };
    let tr_by = {
        let mut t = SymPoly::y_var(0).mul(&SymPoly::b_var(0));
        t = t.add(&SymPoly::y_var(1).mul(&SymPoly::b_var(1)));
        t.add(&SymPoly::y_var(2).mul(&SymPoly::b_var(2)))
    };
    let mut total = SymExpr::with_den(SymPoly::zero(), m);
    for j in 0..=mi {
        // Gamma(l - m + 1/2)/Gamma(l - 2m + j + 1/2) = prod (k + j + 1/2 + t)
        let mut gamma_ratio = Rational::one();
        for t in 0..(mi - j) {
            gamma_ratio *= rint(k as i64 + j + t) + rat(1, 2);
        }
        let mut det_b_pow = SymPoly::one();
        for _ in 0..j {
            det_b_pow = det_b_pow.mul(&det_b);
        }
        // (-4 pi)^{j - m}: pi power j - m, rational (-4)^{j-m}
        let lead = rat_pow(rint(-4), j - mi) * gamma_ratio * binom(mi, j);
        let mut inner_total = SymPoly::zero();
        for i in 0..=(mi - j) {
            let mid = crate::arch::factorial((2 * mi - 2 * j - i) as u32)
                / (crate::arch::factorial(i as u32)
                    * crate::arch::factorial((mi - j - i) as u32))
                * rat_pow(rint(4), i + j - mi);
            let mut n_sum = SymPoly::zero();
            for n in 0..=i {
                let c = crate::arch::factorial(ell as u32 + 1)
                    / crate::arch::factorial((ell + 1 - n) as u32)
                    * rat_pow(rint(-4), -n)
                    * binom(i, n);
                let mut tr_pow = SymPoly::one();
                for _ in 0..(i - n) {
                    tr_pow = tr_pow.mul(&tr_by);
                }
                n_sum = n_sum.add(
                    &tr_pow
                        .scale(&GaussianRational::from_rational(c))
                        .mul_pi(-n as i16),
                );
            }
            inner_total = inner_total.add(
                &n_sum
                    .scale(&GaussianRational::from_rational(mid))
                    .mul_pi((i + j - mi) as i16),
            );
        }
        let term = det_b_pow
            .mul(&inner_total)
            .scale(&GaussianRational::from_rational(lead))
            .mul_pi((j - mi) as i16);
        total = total.add(&SymExpr::with_den(term, (mi - j) as u32));
    }
    total
}

/// The verbatim expansion constant evaluated at rational input.
pub fn maass_c_eval(
    b: &SymHalfIntegralMatrix,
    y: &[Rational; 3],
    k: u32,
    m: u32,
) -> Result<PiPoly> {
    maass_c_symbolic(k, m).eval_real(b, y)
}

/// Numeric application of one weight-raising operator by central finite
/// differences, to the function `cofactor(Y) exp(2 pi i Tr(BZ))`, evaluated
/// at the point `Z = X + iY`.
pub fn numeric_maass_apply(
    kappa: u32,
    cofactor: &SymExpr,
    b: &SymHalfIntegralMatrix,
    x: &[f64; 3],
    y: &[f64; 3],
    h: f64,
) -> Complex {
    let pi = std::f64::consts::PI;
    let bv = [
        crate::arith::rational_to_f64_pub(&b.b1),
        crate::arith::rational_to_f64_pub(&b.b2),
        crate::arith::rational_to_f64_pub(&b.b3),
    ];
    // the full function of the six real coordinates
    let g = |xs: [f64; 3], ys: [f64; 3]| -> Complex {
        let phase = 2.0 * pi * (bv[0] * xs[0] + bv[1] * xs[1] + bv[2] * xs[2]);
        let decay = (-2.0 * pi * (bv[0] * ys[0] + bv[1] * ys[1] + bv[2] * ys[2])).exp();
        cofactor.eval_complex(b, &ys) * Complex::new(phase.cos(), phase.sin()) * decay
    };
    let shift = |mut xs: [f64; 3], mut ys: [f64; 3], i: usize, d: f64| -> ([f64; 3], [f64; 3]) {
        if i < 3 {
            xs[i] += d;
        } else {
            ys[i - 3] += d;
        }
        (xs, ys)
    };
    let d1 = |i: usize| -> Complex {
        let (xa, ya) = shift(*x, *y, i, h);
        let (xb, yb) = shift(*x, *y, i, -h);
        (g(xa, ya) - g(xb, yb)) / (2.0 * h)
    };
    let d2 = |i: usize, j: usize| -> Complex {
        if i == j {
            let (xa, ya) = shift(*x, *y, i, h);
            let (xb, yb) = shift(*x, *y, i, -h);
            (g(xa, ya) - 2.0 * g(*x, *y) + g(xb, yb)) / (h * h)
        } else {
            let pp = shift(*x, *y, i, h);
            let pp = shift(pp.0, pp.1, j, h);
            let pm = shift(*x, *y, i, h);
            let pm = shift(pm.0, pm.1, j, -h);
            let mp = shift(*x, *y, i, -h);
            let mp = shift(mp.0, mp.1, j, h);
            let mm = shift(*x, *y, i, -h);
            let mm = shift(mm.0, mm.1, j, -h);
            (g(pp.0, pp.1) - g(pm.0, pm.1) - g(mp.0, mp.1) + g(mm.0, mm.1)) / (4.0 * h * h)
        }
    };
    let i_c = Complex::new(0.0, 1.0);
    // d/dt_j = (d/dx_j - i d/dy_j)/2 ; coordinates: x indices 0..3, y indices 3..6
    let dtau = |j: usize| (d1(j) - i_c * d1(j + 3)) / 2.0;
    let d2tau1tau2 =
        (d2(0, 2) - i_c * d2(0, 5) - i_c * d2(3, 2) - d2(3, 5)) / 4.0;
    let d2zz = (d2(1, 1) - 2.0 * i_c * d2(1, 4) - d2(4, 4)) / 4.0;
    let det_y = y[0] * y[2] - y[1] * y[1];
    let kq = kappa as f64;
    let bracket = kq * (2.0 * kq - 1.0) / det_y * g(*x, *y) - 8.0 * d2tau1tau2
        + 2.0 * d2zz
        + (2.0 * kq) * i_c / det_y * (y[0] * dtau(0) + y[2] * dtau(2) + y[1] * dtau(1));
    bracket / (32.0 * pi * pi)
}

/// Comparison report between the verbatim expansion constant and the
/// operator-derived cofactor.
#[derive(Debug, Clone)]
pub struct MaassReport {
    pub k: u32,
    pub m: u32,
    /// Coefficient of `Tr(BY) det(Y)^{-1} pi^{-1}` in the verbatim constant.
    pub verbatim_trace_coeff: Option<Rational>,
    /// The same coefficient in the operator-derived cofactor.
    pub oracle_trace_coeff: Option<Rational>,
    /// Whether the two full expressions agree.
    pub expressions_agree: bool,
}

/// Build the comparison report for weights `(k, m)`.
pub fn maass_comparison_report(k: u32, m: u32) -> Result<MaassReport> {
    let verbatim = maass_c_symbolic(k, m);
    let oracle = maass_oracle(k, m)?;
    let target = verbatim.den_pow.max(oracle.den_pow);
    let agree = verbatim.raise_den(target) == oracle.raise_den(target);
    Ok(MaassReport {
        k,
        m,
        verbatim_trace_coeff: verbatim.trace_term_coefficient(),
        oracle_trace_coeff: oracle.trace_term_coefficient(),
        expressions_agree: agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_b() -> SymHalfIntegralMatrix {
        SymHalfIntegralMatrix::from_ints(2, 1, 3)
    }

    #[test]
    fn oracle_m0_is_one() {
        let e = maass_oracle(3, 0).unwrap();
        assert_eq!(e, SymExpr::one());
        let c = maass_c_symbolic(1, 0);
        let b = sample_b();
        let y = [rint(1), rint(0), rint(1)];
        assert_eq!(c.eval_real(&b, &y).unwrap(), PiPoly::one());
    }

    #[test]
    fn oracle_m1_k1_spec_value() {
        // det(B) - Tr(BY)/(4 pi det Y) + 3/(16 pi^2 det Y)
        let e = maass_oracle(1, 1).unwrap();
        let b = sample_b();
        let y = [rint(2), rint(1), rint(1)]; // det Y = 1
        let got = e.eval_real(&b, &y).unwrap();
        let det_b = b.det();
        let tr_by = rint(2 * 2) + rint(1) + rint(3); // b1 y1 + b2 v + b3 y2 = 4+1+3
        let mut want = PiPoly::from_rational(det_b);
        want = &want + &PiPoly::term(-1, -tr_by / rint(4));
        want = &want + &PiPoly::term(-2, rat(3, 16));
        assert_eq!(got, want);
    }

    #[test]
    fn verbatim_m1_k1_spec_value() {
        // det(B) - (3/(8 pi)) Tr(BY)/det Y + (3/(16 pi^2))/det Y
        let b = sample_b();
        let y = [rint(2), rint(1), rint(1)];
        let got = maass_c_eval(&b, &y, 1, 1).unwrap();
        let det_b = b.det();
        let tr_by = rint(8);
        let mut want = PiPoly::from_rational(det_b);
        want = &want + &PiPoly::term(-1, -tr_by * rat(3, 8));
        want = &want + &PiPoly::term(-2, rat(3, 16));
        assert_eq!(got, want);
    }

    #[test]
    fn trace_coefficient_discrepancy_pair() {
        let report = maass_comparison_report(1, 1).unwrap();
        assert_eq!(report.verbatim_trace_coeff, Some(rat(-3, 8)));
        assert_eq!(report.oracle_trace_coeff, Some(rat(-1, 4)));
        assert!(!report.expressions_agree);
    }

    #[test]
    fn oracle_pi2_coefficient_invariant() {
        // at m = 1 the coefficient of det(Y)^{-1} pi^{-2} is (k+1)(2k+1)/32
        for &k in &[1u32, 3, 5] {
            let e = maass_oracle(k, 1).unwrap();
            let b = SymHalfIntegralMatrix::from_ints(0, 0, 0);
            let y = [rint(1), rint(0), rint(1)];
            let v = e.eval_real(&b, &y).unwrap();
            assert_eq!(
                v.coeff(-2),
                rint(((k + 1) * (2 * k + 1)) as i64) / rint(32)
            );
        }
    }

    #[test]
    fn b_zero_collapses() {
        // with B = 0 only the j = 0 tower survives and Tr terms vanish
        let b = SymHalfIntegralMatrix::from_ints(0, 0, 0);
        let y = [rint(3), rint(1), rint(2)];
        let c = maass_c_eval(&b, &y, 1, 2).unwrap();
        // all terms carry det(B)^j = 0 for j > 0, Tr(BY)^* = 0 except the
        // scalar tower; the value is a pure Laurent polynomial in 1/pi
        for (e, _) in c.terms() {
            assert!(*e <= 0);
        }
    }

    #[test]
    fn finite_differences_match_symbolic() {
        // numeric application of the operator to (symbolic cofactor) * exponential
        let b = sample_b();
        let x = [0.31, -0.12, 0.07];
        let y = [1.1, 0.3, 0.9];
        for (k, m) in [(1u32, 1u32), (1, 2), (3, 1)] {
            let mut cof = SymExpr::one();
            for j in 0..m {
                let kappa = k + 1 + 2 * j;
                let num = numeric_maass_apply(kappa, &cof, &b, &x, &y, 1e-4);
                cof = maass_delta(kappa, &cof);
                // evaluate symbolic result at the same point
                let pi = std::f64::consts::PI;
                let phase = 2.0
                    * pi
                    * (crate::arith::rational_to_f64_pub(&b.b1) * x[0]
                        + crate::arith::rational_to_f64_pub(&b.b2) * x[1]
                        + crate::arith::rational_to_f64_pub(&b.b3) * x[2]);
                let decay = (-2.0
                    * pi
                    * (crate::arith::rational_to_f64_pub(&b.b1) * y[0]
                        + crate::arith::rational_to_f64_pub(&b.b2) * y[1]
                        + crate::arith::rational_to_f64_pub(&b.b3) * y[2]))
                    .exp();
                let sym = cof.eval_complex(&b, &y)
                    * Complex::new(phase.cos(), phase.sin())
                    * decay;
                let rel = (num - sym).norm() / sym.norm().max(1e-30);
                assert!(
                    rel < 1e-6,
                    "finite differences off at k={k} step {j}: rel {rel}"
                );
            }
        }
    }
}
