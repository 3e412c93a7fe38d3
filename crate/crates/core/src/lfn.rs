//! Degree-6 Euler factors and Gamma factors, the sign criterion, the
//! central-value assembler, and the subconvexity certificate.

use crate::arith::{factorize, gamma0_index, pow_rational};
use crate::periods::{alpha_sharp_p, IntegralMode, LevelCase, LocalConfig, PeriodValue};
use crate::{rat, rint, Complex, Error, Rational, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Local data for the degree-6 Euler factor at a good prime: the two scaled
/// eigenvalue triples are encoded through the eigenvalue power sums.
#[derive(Debug, Clone)]
pub struct EulerSixData {
    pub p: u64,
    pub k: u32,
    pub ell: u32,
    pub af_p: Rational,
    pub ag_p: Rational,
}

impl EulerSixData {
    pub fn new(p: u64, k: u32, ell: u32, af_p: Rational, ag_p: Rational) -> Self {
        EulerSixData { p, k, ell, af_p, ag_p }
    }

    /// Power sums of the two inverse-root pairs of the degree-2 data:
    /// `s_j = rho^j + rhobar^j` with `rho + rhobar = a, rho rhobar = q`.
    fn power_sums(a: &Rational, q: &Rational, n: usize) -> Vec<Rational> {
        let mut out = vec![rint(2), a.clone()];
        for j in 2..=n {
            let next = a * &out[j - 1] - q * &out[j - 2];
            out.push(next);
        }
        out
    }

    /// Coefficients `e_0..e_6` of the reciprocal degree-6 polynomial
    /// `prod (1 - lambda_i T)` in `T = p^{-s-ell}`, where the six
    /// `lambda_i` are the products of the degree-2 eigenvalues of the first
    /// form with the symmetric-square eigenvalues of the second.
    pub fn reciprocal_poly(&self) -> Vec<Rational> {
        let p = self.p;
        // first factor: inverse roots of 1 - af X + p^{2k-1} X^2
        let qf = pow_rational(p, 2 * self.k as i64 - 1);
        // second factor: eigenvalues p^{ell} {beta^2, 1, beta^{-2}} where
        // sigma = p^{ell/2} beta has sigma + sigmabar = ag, sigma sigmabar = p^ell
        let qg = pow_rational(p, self.ell as i64);
        let n = 6;
        let sf = Self::power_sums(&self.af_p, &qf, n);
        let sg = Self::power_sums(&self.ag_p, &qg, 2 * n);
        // Tr(A^j) = sf[j]; Tr(B^j) = u_{2j} + p^{j ell} with u_i = sigma^i + sigmabar^i
        let mut power = Vec::with_capacity(n + 1);
        power.push(rint(6));
        for j in 1..=n {
            let tr_b = &sg[2 * j] + pow_rational(p, self.ell as i64 * j as i64);
            power.push(&sf[j] * &tr_b);
        }
        // Newton's identities: e_0 = 1, j e_j = sum_{i=1}^{j} (-1)^{i-1} e_{j-i} power[i]
        let mut e = vec![Rational::one()];
        for j in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=j {
                let term = &e[j - i] * &power[i];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            e.push(acc / rint(j as i64));
        }
        // polynomial coefficients of prod (1 - lambda T): (-1)^j e_j
        for (j, c) in e.iter_mut().enumerate() {
            if j % 2 == 1 {
                *c = -c.clone();
            }
        }
        e
    }

    /// Coefficients of the same polynomial rewritten in the variable
    /// `p^{-s}`: the degree-`j` coefficient picks up `p^{-j ell}`.
    pub fn reciprocal_poly_in_p_minus_s(&self) -> Vec<Rational> {
        self.reciprocal_poly()
            .into_iter()
            .enumerate()
            .map(|(j, c)| c * pow_rational(self.p, -(self.ell as i64) * j as i64))
            .collect()
    }

    /// The six scaled eigenvalues, numerically.
    pub fn eigenvalues_complex(&self) -> [Complex; 6] {
        let p = self.p as f64;
        let ell = self.ell as i32;
        let k = self.k as i32;
        // alpha from trace t = af p^{(1-2k)/2}
        let unit_pair = |a: &Rational, scale: f64| -> (Complex, Complex) {
            let t = crate::arith::rational_to_f64_pub(a) / scale;
            let half = Complex::new(t / 2.0, 0.0);
            let disc = (half * half - 1.0).sqrt();
            (half + disc, half - disc)
        };
        let (alpha, alpha_inv) = unit_pair(&self.af_p, p.powi(k) / p.sqrt());
        let (beta, beta_inv) = unit_pair(&self.ag_p, p.powf(ell as f64 / 2.0));
        let scale = p.powi(k) / p.sqrt() * p.powi(ell);
        [
            alpha * beta * beta * scale,
            alpha * scale,
            alpha * beta_inv * beta_inv * scale,
            alpha_inv * beta * beta * scale,
            alpha_inv * scale,
            alpha_inv * beta_inv * beta_inv * scale,
        ]
    }
}

/// Euler-factor value `det(1 - A (x) B p^{-s-ell})^{-1}` at a complex point,
/// together with its exact reciprocal-polynomial coefficients.
pub fn euler_factor(data: &EulerSixData, s: Complex) -> Result<(Complex, Vec<Rational>)> {
    let coeffs = data.reciprocal_poly();
    let t = Complex::new(data.p as f64, 0.0).powc(-s - data.ell as f64);
    let mut poly = Complex::new(0.0, 0.0);
    for (j, c) in coeffs.iter().enumerate() {
        poly += Complex::new(crate::arith::rational_to_f64_pub(c), 0.0) * t.powu(j as u32);
    }
    if poly.norm() < 1e-14 {
        return Err(Error::Pole(format!("Euler factor pole near s = {s}")));
    }
    Ok((poly.inv(), coeffs))
}

/// Complex Gamma function by the Lanczos approximation (g = 7, n = 9),
/// accurate to about 14 significant digits away from the poles.
pub fn gamma_complex(z: Complex) -> Result<Complex> {
    const G: f64 = 7.0;
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if z.re < 0.5 {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        let s = (std::f64::consts::PI * z).sin();
        if s.norm() < 1e-300 {
            return Err(Error::Pole(format!("Gamma pole at {z}")));
        }
        return Ok(Complex::new(std::f64::consts::PI, 0.0)
            / (s * gamma_complex(Complex::new(1.0, 0.0) - z)?));
    }
    let z = z - 1.0;
    let mut x = Complex::new(COEFFS[0], 0.0);
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        x += Complex::new(c, 0.0) / (z + i as f64);
    }
    let t = z + G + 0.5;
    let sqrt_2pi = (2.0 * std::f64::consts::PI).sqrt();
    Ok(sqrt_2pi * t.powc(z + 0.5) * (-t).exp() * x)
}

/// Doubled Gamma factor `2 (2 pi)^{-s} Gamma(s)`.
pub fn gamma_c(s: Complex) -> Result<Complex> {
    let two_pi = Complex::new(2.0 * std::f64::consts::PI, 0.0);
    Ok(2.0 * two_pi.powc(-s) * gamma_complex(s)?)
}

/// The archimedean factor: the product of the three doubled Gamma factors
/// at `s`, `s + ell`, and `s + ell - 2k + 1`.
pub fn gamma_factor(k: u32, ell: u32, s: Complex) -> Result<Complex> {
    let a = gamma_c(s)?;
    let b = gamma_c(s + ell as f64)?;
    let c = gamma_c(s + (ell as f64 - 2.0 * k as f64 + 1.0))?;
    Ok(a * b * c)
}

/// One row of the sign criterion: required and provided local signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignRow {
    pub place: String,
    pub required: i32,
    pub provided: i32,
    pub matches: bool,
}

/// Per-place sign table and the overall non-vanishing criterion.
#[derive(Debug, Clone)]
pub struct NonvanishingReport {
    pub rows: Vec<SignRow>,
    pub overall: bool,
}

/// The local sign criterion: at the real place both signs are `-1`; at a
/// prime of the smaller level the required sign is the Atkin-Lehner sign,
/// matched by the discriminant choice; at a prime of the level quotient the
/// required sign is `+1`, so the criterion holds exactly when the
/// Atkin-Lehner sign is `+1` there.
pub fn nonvanishing_criterion(
    k: u32,
    ell: u32,
    atkin_lehner: &BTreeMap<u64, i32>,
    ng: u64,
    nf: u64,
) -> Result<NonvanishingReport> {
    if ell < k {
        return Err(Error::domain("ell >= k required"));
    }
    if nf % ng != 0 {
        return Err(Error::domain("the smaller level must divide the larger"));
    }
    let mut rows = vec![SignRow {
        place: "oo".into(),
        required: -1,
        provided: -1,
        matches: true,
    }];
    let mut overall = true;
    for (&p, &w) in atkin_lehner {
        if ng % p == 0 {
            rows.push(SignRow {
                place: p.to_string(),
                required: w,
                provided: w,
                matches: true,
            });
        } else {
            let ok = w == 1;
            overall &= ok;
            rows.push(SignRow {
                place: p.to_string(),
                required: 1,
                provided: w,
                matches: ok,
            });
        }
    }
    Ok(NonvanishingReport { rows, overall })
}

/// Inputs of the central-value assembler.
#[derive(Debug, Clone)]
pub struct CentralValueInput {
    pub nf_level: u64,
    pub ng_level: u64,
    pub k: u32,
    pub ell: u32,
    pub petersson_f: f64,
    pub petersson_h: f64,
    pub petersson_g: f64,
    /// `|<restricted lift, g x level-raised g>|^2`.
    pub pairing_sq: f64,
    pub atkin_lehner: BTreeMap<u64, i32>,
}

/// Output of the assembler: the value and the exposed constants.
#[derive(Debug, Clone)]
pub struct CentralValue {
    pub lambda: f64,
    pub power_of_two: Rational,
    pub c0: Rational,
    pub c_fg: Rational,
}

/// Assemble the completed central value from Petersson data:
/// `2^{6m+k+1-nu} C0 C_fg <f,f>/<h,h> pairing^2 / <g,g>^2` with
/// `C0 = Mg^2 mu(Ng)^2 / Nf`.
pub fn central_value(input: &CentralValueInput) -> Result<CentralValue> {
    let CentralValueInput {
        nf_level,
        ng_level,
        k,
        ell,
        ..
    } = *input;
    if nf_level % ng_level != 0 {
        return Err(Error::domain("the smaller level must divide the larger"));
    }
    let mg = nf_level / ng_level;
    for (p, _) in factorize(mg) {
        match input.atkin_lehner.get(&p) {
            Some(1) => {}
            Some(_) => {
                return Err(Error::HypothesisViolation(format!(
                    "the level-quotient prime {p} carries a negative sign"
                )))
            }
            None => {
                return Err(Error::MissingDatum(format!("Atkin-Lehner sign at {p}")))
            }
        }
    }
    if input.petersson_f <= 0.0 || input.petersson_h <= 0.0 || input.petersson_g <= 0.0 {
        return Err(Error::domain("Petersson norms must be positive"));
    }
    if input.pairing_sq < 0.0 {
        return Err(Error::domain("the squared pairing must be nonnegative"));
    }
    let m = (ell - k) / 2;
    let nu = factorize(mg).len() as i64;
    let power_of_two = pow_rational(2, 6 * m as i64 + k as i64 + 1 - nu);
    let mu_ng = gamma0_index(ng_level)?;
    let c0 = rint((mg * mg) as i64) * rint(mu_ng as i64) * rint(mu_ng as i64)
        / rint(nf_level as i64);
    let c_fg = crate::arch::arch_period(k, ell)?.c_fg;
    let lambda = crate::arith::rational_to_f64_pub(&power_of_two)
        * crate::arith::rational_to_f64_pub(&c0)
        * crate::arith::rational_to_f64_pub(&c_fg)
        * (input.petersson_f / input.petersson_h)
        * (input.pairing_sq / (input.petersson_g * input.petersson_g));
    Ok(CentralValue {
        lambda,
        power_of_two,
        c0,
        c_fg,
    })
}

/// The local subconvexity certificate: the local integral value, the
/// conductor product, the unit-circle bracket, and the pass flag.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub alpha_sharp: f64,
    pub conductor_product: f64,
    pub bracket: (Rational, Rational),
    pub passes: bool,
    pub vanishes: bool,
}

/// Certificate at a prime dividing the larger level: the local integral is
/// `(p - w_p)^2/p^2` with conductor product `p^2` when the prime divides the
/// smaller level, and otherwise the unit-circle value bracketed by
/// `[2(p-1)^4/(p^2(p+1)^3), 2(p+1)/p^2]` with conductor product `p`.
pub fn subconvexity_certificate(cfg: &LocalConfig) -> Result<Certificate> {
    let p = cfg.p;
    let p_i = p as i64;
    match cfg.case {
        LevelCase::Unramified => Err(Error::domain(
            "the certificate is issued at ramified primes",
        )),
        LevelCase::DividesNg => {
            let v = alpha_sharp_p(cfg, IntegralMode::Closed)?;
            let alpha = crate::arith::rational_to_f64_pub(v.as_exact().unwrap());
            let lo = rint((p_i - 1) * (p_i - 1)) / rint(p_i * p_i);
            Ok(Certificate {
                alpha_sharp: alpha,
                conductor_product: (p * p) as f64,
                bracket: (lo.clone(), rint((p_i + 1) * (p_i + 1)) / rint(p_i * p_i)),
                passes: alpha >= crate::arith::rational_to_f64_pub(&lo) && alpha > 0.0,
                vanishes: false,
            })
        }
        LevelCase::DividesMg => {
            let lo = rint(2 * (p_i - 1).pow(4))
                / (rint(p_i * p_i) * rint((p_i + 1).pow(3)));
            let hi = rat(2 * (p_i + 1), p_i * p_i);
            if cfg.wp == -1 {
                return Ok(Certificate {
                    alpha_sharp: 0.0,
                    conductor_product: p as f64,
                    bracket: (lo, hi),
                    passes: false,
                    vanishes: true,
                });
            }
            let v = alpha_sharp_p(cfg, IntegralMode::Closed)?;
            let (alpha, exact) = match &v {
                PeriodValue::Exact(r) => (crate::arith::rational_to_f64_pub(r), Some(r.clone())),
                PeriodValue::Complex(z) => {
                    if z.im.abs() > 1e-12 {
                        return Err(Error::domain(
                            "the local integral must be real on the unit circle",
                        ));
                    }
                    (z.re, None)
                }
                PeriodValue::RationalFn { .. } => {
                    return Err(Error::domain(
                        "substitute a unit-modulus value before certifying",
                    ))
                }
            };
            let lo_f = crate::arith::rational_to_f64_pub(&lo);
            let passes = match &exact {
                Some(r) => r >= &lo && r.is_positive(),
                None => alpha >= lo_f - 1e-12 && alpha > 0.0,
            };
            Ok(Certificate {
                alpha_sharp: alpha,
                conductor_product: p as f64,
                bracket: (lo, hi),
                passes,
                vanishes: false,
            })
        }
    }
}
