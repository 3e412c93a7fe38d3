//! A cell model for Bruhat-Schwartz functions on Q_p and the Weil action.
//!
//! Functions are supported in `p^{-M} Z_p` and constant on cosets of
//! `p^M Z_p`; the `p^{2M}` cells are indexed by `j`, representing the point
//! `x_j = p^{-M} j`. The Fourier transform in the Weyl-element action is an
//! exact Riemann sum of a locally constant integrand and is computed as a
//! length-`p^{2M}` DFT.

use crate::arith::{val_p, weil_gamma_chi, ExactScalar};
use crate::{rint, Complex, Error, Rational, Result};
use num_traits::Zero;
use rustfft::FftPlanner;

#[derive(Clone)]
pub struct CellFunction {
    p: u64,
    m: u32,
    vals: Vec<Complex>,
}

/// Generator words for the Weil action.
#[derive(Debug, Clone)]
pub enum WeilGen {
    /// Upper unipotent `u(b)`: multiply by `psi^e(b Q(x))`.
    U(Rational),
    /// Torus `t(a)` with sign: rescale and multiply by `eps chi_{psi^e}(a) |a|^{1/2}`.
    T(Rational, i32),
    /// Weyl element `s` with sign: `eps gamma(psi^e) * Fourier`.
    S(i32),
}

impl CellFunction {
    /// The characteristic function of Z_p at resolution `M >= 1`.
    pub fn one_zp(p: u64, m: u32) -> Self {
        let n = (p as usize).pow(2 * m);
        let pm = (p as usize).pow(m);
        let mut vals = vec![Complex::new(0.0, 0.0); n];
        for j in (0..n).step_by(pm) {
            vals[j] = Complex::new(1.0, 0.0);
        }
        CellFunction { p, m, vals }
    }

    pub fn resolution(&self) -> u32 {
        self.m
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn value(&self, j: usize) -> Complex {
        self.vals[j]
    }

    /// Pointwise `x -> f(-x)`.
    pub fn reflect(&self) -> Self {
        let n = self.vals.len();
        let mut vals = vec![Complex::new(0.0, 0.0); n];
        for (j, item) in vals.iter_mut().enumerate() {
            *item = self.vals[(n - j) % n];
        }
        CellFunction { p: self.p, m: self.m, vals }
    }

    /// `<f1, f2> = sum f1 conj(f2) vol(cell)`, `vol(cell) = p^{-M}`.
    pub fn inner(&self, other: &CellFunction) -> Complex {
        assert_eq!(self.p, other.p);
        assert_eq!(self.m, other.m);
        let vol = (self.p as f64).powi(-(self.m as i32));
        self.vals
            .iter()
            .zip(&other.vals)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex>()
            * vol
    }

    fn scale_complex(&self, c: Complex) -> Self {
        let vals = self.vals.iter().map(|v| v * c).collect();
        CellFunction { p: self.p, m: self.m, vals }
    }
}

/// `psi_p(x)` for the standard character: `exp(2 pi i {x}_p)` where `{x}_p`
/// is the p-power fractional part.
fn psi_frac(x: &Rational, p: u64) -> Result<f64> {
    // fractional part of x in Z[1/p]/Z
    if x.is_zero() {
        return Ok(0.0);
    }
    let v = val_p(x, p).unwrap();
    if v >= 0 {
        return Ok(0.0);
    }
    let k = (-v) as u32;
    let pk = crate::Integer::from(p).pow(k);
    // x = n / (d * p^k) with n, d prime to p; fractional part = (n d^{-1} mod p^k)/p^k
    let scaled = x * crate::Rational::from_integer(pk.clone());
    if val_p(&scaled, p).map_or(false, |w| w < 0) {
        return Err(Error::domain("psi_frac: internal valuation error"));
    }
    let residue = crate::arith::unit_residue(&scaled, p, k).or_else(|_| {
        // scaled may be divisible by p when x was not in lowest terms w.r.t. p
        Err(Error::domain("psi_frac: residue extraction failed"))
    })?;
    use num_traits::ToPrimitive;
    let num = residue.to_f64().unwrap();
    let den = pk.to_f64().unwrap();
    Ok(num / den)
}

/// Evaluate `psi_p(e * x)` as a complex number on the unit circle.
pub fn additive_character(x: &Rational, twist: i64, p: u64) -> Result<Complex> {
    let arg = psi_frac(&(x * rint(twist)), p)?;
    let theta = 2.0 * std::f64::consts::PI * arg;
    Ok(Complex::new(theta.cos(), theta.sin()))
}

/// Apply one Weil-representation generator for the one-dimensional quadratic
/// space with `Q(x) = x^2`, bilinear form `(x, y) = 2xy`, and additive
/// character `psi_p^twist` (the standard setup takes `twist = -1`, and the
/// discriminant-twisted model takes `twist = -D`).
pub fn apply_generator(
    gen: &WeilGen,
    f: &CellFunction,
    twist: i64,
    planner: &mut FftPlanner<f64>,
) -> Result<CellFunction> {
    let p = f.p;
    let m = f.m;
    let n = f.vals.len();
    let pm_big = crate::arith::pow_rational(p, m as i64);
    if twist % p as i64 == 0 {
        return Err(Error::UnsupportedPlace(
            "character twist must be a p-adic unit".into(),
        ));
    }
    match gen {
        WeilGen::U(b) => {
            // multiplier psi^twist(b x^2); must be constant on occupied cells
            let vb = val_p(b, p);
            let mut vals = vec![Complex::new(0.0, 0.0); n];
            for j in 0..n {
                if f.vals[j].norm_sqr() == 0.0 {
                    continue;
                }
                let x = crate::Rational::new(
                    crate::Integer::from(j as u64),
                    crate::Integer::from(1u64),
                ) / pm_big.clone();
                if let Some(vb) = vb {
                    // b((x+h)^2 - x^2) = b(2xh + h^2), h in p^M Z_p
                    let vx = val_p(&x, p).unwrap_or(m as i64);
                    if vb + m as i64 + vx.min(m as i64) < 0 {
                        return Err(Error::CellResolution(format!(
                            "u({b}) multiplier varies on an occupied cell at resolution {m}"
                        )));
                    }
                }
                let mult = additive_character(&(&(b * &x) * &x), twist, p)?;
                vals[j] = f.vals[j] * mult;
            }
            Ok(CellFunction { p, m, vals })
        }
        WeilGen::T(a, eps) => {
            if a.is_zero() {
                return Err(Error::domain("t(0) is singular"));
            }
            let (va, _) = crate::arith::split_p(a, p);
            // the rescaled support a^{-1} supp(f) must stay in the window
            if va > 0 {
                for (j, v) in f.vals.iter().enumerate() {
                    if v.norm_sqr() == 0.0 {
                        continue;
                    }
                    let vx = if j == 0 {
                        i64::MAX / 2
                    } else {
                        crate::arith::int_val_p(&crate::Integer::from(j as u64), p) as i64
                            - m as i64
                    };
                    if vx < va - m as i64 {
                        return Err(Error::CellResolution(format!(
                            "t({a}) pushes support outside the resolution-{m} window"
                        )));
                    }
                }
            }
            // (T(a) f)(x) = eps chi(a) |a|^{1/2} f(a x)
            let (_, chi) = weil_gamma_chi(a, p, &rint(twist))?;
            let half = ExactScalar::half_power(p, -va); // |a|^{1/2} = p^{-va/2}
            let c = chi.to_complex() * half.to_complex() * (*eps as f64);
            // index arithmetic: a x_j = p^{va - M} (u j) with u the unit part
            let big_n = n as u128;
            let (_, unit) = crate::arith::split_p(a, p);
            let u_mod = {
                use num_traits::ToPrimitive;
                crate::arith::unit_residue(&unit, p, 2 * m)
                    .expect("unit residue")
                    .to_u128()
                    .unwrap()
            };
            let p_u = p as u128;
            let mut vals = vec![Complex::new(0.0, 0.0); n];
            for (j, slot) in vals.iter_mut().enumerate() {
                let idx = if j == 0 {
                    0usize
                } else if va >= 0 {
                    let mut t = (u_mod * j as u128) % big_n;
                    for _ in 0..va.min(2 * m as i64 + 1) {
                        t = (t * p_u) % big_n;
                    }
                    t as usize
                } else {
                    // need p^{-va} | j, else a x_j falls outside the window
                    let mut jj = j as u128;
                    let mut ok = true;
                    for _ in 0..(-va) {
                        if jj % p_u != 0 {
                            ok = false;
                            break;
                        }
                        jj /= p_u;
                    }
                    if !ok {
                        *slot = Complex::new(0.0, 0.0);
                        continue;
                    }
                    ((u_mod * jj) % big_n) as usize
                };
                if va >= 0 {
                    *slot = f.vals[idx] * c;
                } else {
                    // the image of a model cell is a union of p^{-va} model
                    // cells; f must be constant across them
                    let count = p_u.pow((-va) as u32);
                    let step = p_u.pow((2 * m as i64 + va) as u32);
                    let val = f.vals[idx];
                    for r in 1..count {
                        let k = ((idx as u128 + r * step) % big_n) as usize;
                        if (f.vals[k] - val).norm_sqr() != 0.0 {
                            return Err(Error::CellResolution(format!(
                                "t({a}) image cell not constant at resolution {m}"
                            )));
                        }
                    }
                    *slot = val * c;
                }
            }
            Ok(CellFunction { p, m, vals })
        }
        WeilGen::S(eps) => {
            // (S f)(x) = eps gamma(psi^twist) int f(y) psi^twist(2xy) dy
            let (gamma, _) = weil_gamma_chi(&rint(twist), p, &rint(1))?;
            // gamma(psi^e) = gamma(e, psi) for odd p (gamma(psi_p) = 1)
            let fft = planner.plan_fft_forward(n);
            let mut buf: Vec<rustfft::num_complex::Complex64> = f
                .vals
                .iter()
                .map(|z| rustfft::num_complex::Complex64::new(z.re, z.im))
                .collect();
            fft.process(&mut buf);
            // result[i] = gamma * p^{-M} * sum_j f[j] e^{2 pi i twist 2 i j / N}
            // forward FFT gives F[k] = sum_j f[j] e^{-2 pi i j k / N}
            // so result[i] = gamma p^{-M} F[(-2 twist i) mod N]
            let vol = (p as f64).powi(-(m as i32));
            let g = gamma.to_complex() * (*eps as f64) * vol;
            let tw = (-2 * twist).rem_euclid(n as i64) as usize;
            let mut vals = vec![Complex::new(0.0, 0.0); n];
            for (i, slot) in vals.iter_mut().enumerate() {
                let k = (i * tw) % n;
                let v = buf[k];
                *slot = Complex::new(v.re, v.im) * g;
            }
            Ok(CellFunction { p, m, vals })
        }
    }
}

/// Apply a word of generators (leftmost acts last, matching operator
/// composition `w[0] w[1] ... w[k-1] applied to f` as `w[k-1]` first).
pub fn weil_action(word: &[WeilGen], f: &CellFunction, twist: i64) -> Result<CellFunction> {
    let mut planner = FftPlanner::new();
    let mut cur = f.clone();
    for gen in word.iter().rev() {
        cur = apply_generator(gen, &cur, twist, &mut planner)?;
    }
    Ok(cur)
}

/// Scale by an exact scalar (used when composing with metaplectic signs).
pub fn scale_cells(f: &CellFunction, c: &ExactScalar) -> CellFunction {
    f.scale_complex(c.to_complex())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn norm_of_indicator_is_one() {
        for &p in &[3u64, 5] {
            for m in 1..4 {
                let f = CellFunction::one_zp(p, m);
                let n = f.inner(&f);
                assert!((n - Complex::new(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn unipotent_fixes_indicator() {
        // psi(b x^2) = 1 on Z_p for integral b
        let p = 3;
        let f = CellFunction::one_zp(p, 3);
        let g = weil_action(&[WeilGen::U(rat(2, 1))], &f, -1).unwrap();
        for j in 0..f.len() {
            assert!((f.value(j) - g.value(j)).norm() < 1e-14);
        }
    }

    #[test]
    fn fourier_fixes_indicator() {
        // the self-dual measure fixes 1_{Z_p} under the Weyl action up to gamma
        let p = 5;
        let f = CellFunction::one_zp(p, 2);
        let g = weil_action(&[WeilGen::S(1)], &f, -1).unwrap();
        // gamma(psibar) = 1 for odd p, and F(1_{Z_p}) = 1_{Z_p} for (x,y)=2xy
        for j in 0..f.len() {
            assert!(
                (f.value(j) - g.value(j)).norm() < 1e-10,
                "cell {j}: {} vs {}",
                f.value(j),
                g.value(j)
            );
        }
    }

    #[test]
    fn weyl_squared_is_reflection_up_to_fourth_root() {
        let p = 3;
        let m = 2;
        // start from a non-symmetric function: translate the indicator
        let f0 = CellFunction::one_zp(p, m);
        let f = weil_action(&[WeilGen::U(rat(1, 3)), WeilGen::T(rat(2, 1), 1)], &f0, -1).unwrap();
        let g = weil_action(&[WeilGen::S(1), WeilGen::S(1)], &f, -1).unwrap();
        let reflected = f.reflect();
        // find the fourth root of unity lambda with g = lambda * reflected
        let mut lambda = None;
        for j in 0..f.len() {
            if reflected.value(j).norm() > 1e-9 {
                lambda = Some(g.value(j) / reflected.value(j));
                break;
            }
        }
        let lambda = lambda.expect("nonzero cell");
        assert!((lambda.norm() - 1.0).abs() < 1e-9);
        // lambda^4 = 1
        assert!((lambda.powi(4) - Complex::new(1.0, 0.0)).norm() < 1e-8);
        for j in 0..f.len() {
            assert!((g.value(j) - lambda * reflected.value(j)).norm() < 1e-10);
        }
    }

    #[test]
    fn torus_action_spec_example() {
        // <omega(t(3)) 1_{Z_3}, 1_{Z_3}> = chi_{psibar_3}(3) 3^{-1/2} = -i/sqrt(3)
        let p = 3;
        let f = CellFunction::one_zp(p, 2);
        let g = weil_action(&[WeilGen::T(rat(3, 1), 1)], &f, -1).unwrap();
        let ip = g.inner(&f);
        let expected = Complex::new(0.0, -1.0) / (3.0f64).sqrt();
        assert!((ip - expected).norm() < 1e-12, "got {ip}, want {expected}");
    }
}
