//! Brute-force evaluation of the three local matrix coefficients.
//!
//! The tau and metaplectic coefficients are exact averages of the integrand
//! over `GL_2(Z/p^M)` (resp. `SL_2(Z/p^M)`). The integrand only depends on a
//! group element through its bottom row, and every unimodular bottom row has
//! the same number of completions to the group, so the sum is taken over
//! bottom rows. Within the row enumeration the integrand is constant on the
//! classes cut out by the valuation and the quadratic residue class of each
//! entry; the oracle accumulates class counts with machine integers, computes
//! one exact value per class, and then verifies both reductions at runtime on
//! a deterministic pseudo-random sample of rows and completions.
//!
//! The third coefficient is a floating-point inner product in the cell model
//! of the Weil representation.

use super::cell::{weil_action, CellFunction, WeilGen};
use super::mat2::Mat2;
use super::metaplectic::{metaplectic_multiply, MetaplecticElement};
use super::vectors::{eval_h_vector, eval_tau_vector, TauVariant};
use crate::arith::{ExactScalar, LaurentPoly};
use crate::{rint, Complex, Error, Rational, Result};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Which of the three matrix-coefficient factors to compute.
#[derive(Debug, Clone)]
pub enum OracleFactor {
    /// Principal-series coefficient of one of the tau test vectors.
    Tau(TauVariant),
    /// Metaplectic special-representation coefficient; carries the chosen
    /// fundamental discriminant and a unit `delta`.
    PiTilde { d_disc: i64, delta: Rational },
    /// Weil-representation coefficient in the cell model.
    Omega,
}

/// Double-coset representative family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetElement {
    Alpha(i64),
    Beta(i64),
}

impl CosetElement {
    pub fn order(&self) -> i64 {
        match self {
            CosetElement::Alpha(n) => n.abs(),
            CosetElement::Beta(m) => m.abs(),
        }
    }

    pub fn matrix(&self, p: u64) -> Mat2 {
        match self {
            CosetElement::Alpha(n) => Mat2::alpha(*n, p),
            CosetElement::Beta(m) => Mat2::beta(*m, p),
        }
    }

    /// Metaplectic lift: `[alpha_n, 1]`, and the product `[s,1][alpha_m,1]`
    /// for the Weyl-translated family.
    pub fn metaplectic_lift(&self, p: u64) -> Result<MetaplecticElement> {
        match self {
            CosetElement::Alpha(n) => MetaplecticElement::new(Mat2::alpha(*n, p), 1),
            CosetElement::Beta(m) => {
                let s = MetaplecticElement::new(Mat2::s(), 1)?;
                let a = MetaplecticElement::new(Mat2::alpha(*m, p), 1)?;
                metaplectic_multiply(&s, &a, p)
            }
        }
    }
}

/// Oracle output: exact Laurent data, an exact scalar, or a float.
#[derive(Debug, Clone)]
pub enum OracleValue {
    Laurent(LaurentPoly),
    Scalar(ExactScalar),
    Complex(Complex),
}

impl OracleValue {
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        match self {
            OracleValue::Laurent(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_scalar(&self) -> Option<&ExactScalar> {
        match self {
            OracleValue::Scalar(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_complex(&self) -> Option<Complex> {
        match self {
            OracleValue::Complex(z) => Some(*z),
            OracleValue::Scalar(s) => Some(s.to_complex()),
            _ => None,
        }
    }
}

/// Tuning knobs for the enumeration.
#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Congruence resolution `M`; the enumeration runs over `p^{2M}` rows.
    pub resolution: u32,
    /// Hard refusal threshold on the number of enumeration cells.
    pub cost_guard: u128,
    /// Number of pseudo-random rows re-evaluated exactly as a check.
    pub verify_rows: u32,
    /// Number of pseudo-random alternative completions checked per run.
    pub verify_completions: u32,
    /// Seed for the verification sampling.
    pub seed: u64,
}

impl OracleConfig {
    pub fn new(resolution: u32) -> Self {
        OracleConfig {
            resolution,
            cost_guard: 100_000_000,
            verify_rows: 256,
            verify_completions: 32,
            seed: 0x5eed,
        }
    }
}

/// Default resolution for an element: `2|n| + 3`.
pub fn default_resolution(elem: CosetElement) -> u32 {
    (2 * elem.order() + 3) as u32
}

struct RowClasses {
    /// class index -> (count, representative row)
    counts: Vec<u64>,
    reps: Vec<Option<(u64, u64)>>,
    m: u32,
    p: u64,
    leg: Vec<i8>,
}

impl RowClasses {
    fn new(p: u64, m: u32) -> Self {
        let side = (m as usize + 2) * 3;
        let mut leg = vec![0i8; p as usize];
        for x in 1..p {
            leg[x as usize] = if mod_pow(x, (p - 1) / 2, p) == 1 { 1 } else { -1 };
        }
        RowClasses {
            counts: vec![0; side * side],
            reps: vec![None; side * side],
            m,
            p,
            leg,
        }
    }

    #[inline]
    fn entry_class(&self, mut x: u64) -> usize {
        // (min(val, M+1), residue class of the unit part)
        if x == 0 {
            return (self.m as usize + 1) * 3;
        }
        let mut v = 0usize;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        let l = if self.leg[(x % self.p) as usize] == 1 { 1 } else { 2 };
        v * 3 + l
    }

    #[inline]
    fn class_of(&self, c: u64, d: u64) -> usize {
        let side = (self.m as usize + 2) * 3;
        self.entry_class(c) * side + self.entry_class(d)
    }
}

#[inline]
fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mod_inv_u64(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// Exact completion of the unimodular row `(c, d)` mod `p^M` to a rational
/// matrix in `SL_2(Z_p)`.
fn complete_sl2(c: u64, d: u64, p: u64, m: u32) -> Mat2 {
    let pm = (p as u128).pow(m) as u64;
    if d % p != 0 {
        if c == 0 {
            // exact inverse on the diagonal
            return Mat2::new(rint(d as i64).recip(), rint(0), rint(0), rint(d as i64));
        }
        let a = mod_inv_u64(d % pm, pm).unwrap();
        // b = (a d - 1)/c is p-integral
        let b = Rational::new(
            crate::Integer::from(a) * crate::Integer::from(d) - crate::Integer::from(1u32),
            crate::Integer::from(c),
        );
        Mat2::new(rint(a as i64), b, rint(c as i64), rint(d as i64))
    } else {
        // c is a unit
        if d == 0 {
            return Mat2::new(
                rint(0),
                -rint(c as i64).recip(),
                rint(c as i64),
                rint(0),
            );
        }
        let binv = mod_inv_u64(c % pm, pm).unwrap();
        let b = (pm - binv) % pm; // b = -c^{-1} mod p^M
        let a = Rational::new(
            crate::Integer::from(1u32) + crate::Integer::from(b) * crate::Integer::from(c),
            crate::Integer::from(d),
        );
        Mat2::new(a, rint(b as i64), rint(c as i64), rint(d as i64))
    }
}

/// Exact completion of the row to `GL_2(Z_p)` with unit determinant.
fn complete_gl2(c: u64, d: u64, p: u64) -> Mat2 {
    if d % p != 0 {
        Mat2::new(rint(1), rint(0), rint(c as i64), rint(d as i64))
    } else {
        Mat2::new(rint(0), rint(-1), rint(c as i64), rint(d as i64))
    }
}

fn tau_integrand(
    variant: TauVariant,
    x: &Mat2,
    g: &Mat2,
    p: u64,
) -> Result<LaurentPoly> {
    let left = eval_tau_vector(variant, &(x * g), p)?;
    let right = eval_tau_vector(variant, x, p)?;
    Ok(&left * &right.conj())
}

fn pi_integrand(
    x: &Mat2,
    glift: &MetaplecticElement,
    p: u64,
    d_disc: i64,
    delta: &Rational,
) -> Result<ExactScalar> {
    let e0 = MetaplecticElement::split_lift(x.clone(), p)?;
    let e = metaplectic_multiply(&e0, glift, p)?;
    let left = eval_h_vector(&e, p, d_disc, delta)?;
    // conj of the value at the split lift: 1 - (p+1) on the Iwahori subgroup
    let in_gamma = crate::arith::val_p(&x.c, p).map_or(true, |v| v >= 1);
    let conj_factor = if in_gamma { rint(-(p as i64)) } else { rint(1) };
    Ok(left.scale(&conj_factor))
}

enum ExactAccum {
    Laurent(LaurentPoly),
    Scalar(ExactScalar),
}

/// Normalized matrix coefficient of one factor at a double-coset
/// representative, by finite enumeration.
///
/// For the exact factors the value is the full average over the finite group
/// at resolution `M`, normalized so the compact group has volume 1; the
/// metaplectic factor is additionally divided by the squared norm of the
/// newvector, which the same enumeration computes (it equals `p`).
pub fn coefficient_oracle(
    factor: &OracleFactor,
    elem: CosetElement,
    p: u64,
    cfg: &OracleConfig,
) -> Result<OracleValue> {
    if p == 2 || !crate::arith::is_prime_small(p) {
        return Err(Error::UnsupportedPlace(format!(
            "oracle requires an odd prime, got {p}"
        )));
    }
    match factor {
        OracleFactor::Omega => omega_oracle(elem, p, cfg),
        OracleFactor::Tau(variant) => {
            let raw = exact_row_average(
                &|x, g| tau_integrand(*variant, x, g, p).map(ExactAccum::Laurent),
                elem,
                p,
                cfg,
                false,
            )?;
            match raw {
                ExactAccum::Laurent(q) => Ok(OracleValue::Laurent(q)),
                _ => unreachable!(),
            }
        }
        OracleFactor::PiTilde { d_disc, delta } => {
            let glift = elem.metaplectic_lift(p)?;
            let num = exact_row_average(
                &|x, _| pi_integrand(x, &glift, p, *d_disc, delta).map(ExactAccum::Scalar),
                elem,
                p,
                cfg,
                true,
            )?;
            // squared norm from the same enumeration at the identity
            let idlift = MetaplecticElement::identity();
            let norm = exact_row_average(
                &|x, _| pi_integrand(x, &idlift, p, *d_disc, delta).map(ExactAccum::Scalar),
                CosetElement::Alpha(0),
                p,
                cfg,
                true,
            )?;
            let (ExactAccum::Scalar(num), ExactAccum::Scalar(norm)) = (num, norm) else {
                unreachable!()
            };
            if norm.is_zero() {
                return Err(Error::IndeterminateNormalization(
                    "vanishing newvector norm".into(),
                ));
            }
            Ok(OracleValue::Scalar(&num * &norm.invert()?))
        }
    }
}

/// The squared norm of the metaplectic newvector, computed by enumeration.
pub fn h_vector_norm_oracle(
    p: u64,
    d_disc: i64,
    delta: &Rational,
    cfg: &OracleConfig,
) -> Result<ExactScalar> {
    let idlift = MetaplecticElement::identity();
    let norm = exact_row_average(
        &|x, _| pi_integrand(x, &idlift, p, d_disc, delta).map(ExactAccum::Scalar),
        CosetElement::Alpha(0),
        p,
        cfg,
        true,
    )?;
    match norm {
        ExactAccum::Scalar(s) => Ok(s),
        _ => unreachable!(),
    }
}

/// The squared norm of a tau test vector, computed by enumeration.
pub fn tau_norm_oracle(
    variant: TauVariant,
    p: u64,
    cfg: &OracleConfig,
) -> Result<LaurentPoly> {
    let raw = exact_row_average(
        &|x, g| tau_integrand(variant, x, g, p).map(ExactAccum::Laurent),
        CosetElement::Alpha(0),
        p,
        cfg,
        false,
    )?;
    match raw {
        ExactAccum::Laurent(q) => Ok(q),
        _ => unreachable!(),
    }
}

fn exact_row_average(
    integrand: &dyn Fn(&Mat2, &Mat2) -> Result<ExactAccum>,
    elem: CosetElement,
    p: u64,
    cfg: &OracleConfig,
    sl2: bool,
) -> Result<ExactAccum> {
    let m = cfg.resolution;
    if (m as i64) < 2 * elem.order() + 2 {
        return Err(Error::domain(format!(
            "resolution {m} too small for the order-{} element",
            elem.order()
        )));
    }
    let cells = (p as u128).pow(2 * m);
    if cells > cfg.cost_guard {
        return Err(Error::CostGuard {
            cells,
            guard: cfg.cost_guard,
        });
    }
    let g = elem.matrix(p);
    let pm = (p as u128).pow(m) as u64;
    let mut classes = RowClasses::new(p, m);

    // pass 1: count rows per class
    for c in 0..pm {
        let c_div = c % p == 0;
        for d in 0..pm {
            if c_div && d % p == 0 {
                continue;
            }
            let idx = classes.class_of(c, d);
            classes.counts[idx] += 1;
            if classes.reps[idx].is_none() {
                classes.reps[idx] = Some((c, d));
            }
        }
    }

    // pass 2: one exact evaluation per occupied class
    let complete = |c: u64, d: u64| -> Mat2 {
        if sl2 {
            complete_sl2(c, d, p, m)
        } else {
            complete_gl2(c, d, p)
        }
    };
    let nclasses = classes.counts.len();
    let mut class_values: Vec<Option<ExactAccum>> = Vec::with_capacity(nclasses);
    for idx in 0..nclasses {
        if classes.counts[idx] == 0 {
            class_values.push(None);
            continue;
        }
        let (c, d) = classes.reps[idx].unwrap();
        let x = complete(c, d);
        class_values.push(Some(integrand(&x, &g)?));
    }

    // pass 3: verify class constancy and completion independence on samples
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (p << 8) ^ (m as u64));
    for _ in 0..cfg.verify_rows {
        let c = rng.gen_range(0..pm);
        let d = rng.gen_range(0..pm);
        if c % p == 0 && d % p == 0 {
            continue;
        }
        let idx = classes.class_of(c, d);
        let x = complete(c, d);
        let val = integrand(&x, &g)?;
        let expected = class_values[idx].as_ref().unwrap();
        if !accum_eq(&val, expected) {
            return Err(Error::domain(format!(
                "integrand is not constant on the row class of ({c}, {d}) at resolution {m}"
            )));
        }
    }
    for _ in 0..cfg.verify_completions {
        let c = rng.gen_range(0..pm);
        let d = rng.gen_range(0..pm);
        if c % p == 0 && d % p == 0 {
            continue;
        }
        let idx = classes.class_of(c, d);
        let x = complete(c, d);
        // alternative completion: shear the top row by a multiple of the
        // bottom row (keeps the determinant), and for the full group also
        // rescale the top row by a unit
        let lambda = rint(rng.gen_range(1..50));
        let mut alt = Mat2::new(
            &x.a + &(&lambda * &x.c),
            &x.b + &(&lambda * &x.d),
            x.c.clone(),
            x.d.clone(),
        );
        if !sl2 {
            let mut mu = rng.gen_range(1..p);
            if mu == 0 {
                mu = 1;
            }
            alt = Mat2::new(
                &alt.a * &rint(mu as i64),
                &alt.b * &rint(mu as i64),
                alt.c.clone(),
                alt.d.clone(),
            );
        }
        let val = integrand(&alt, &g)?;
        let expected = class_values[idx].as_ref().unwrap();
        if !accum_eq(&val, expected) {
            return Err(Error::domain(format!(
                "integrand depends on the completion of row ({c}, {d})"
            )));
        }
    }

    // exact average
    let total: u64 = classes.counts.iter().sum();
    let total_rat = Rational::new(crate::Integer::one(), crate::Integer::from(total));
    let mut acc_laurent = LaurentPoly::zero(p);
    let mut acc_scalar = ExactScalar::zero(p);
    let mut is_laurent = false;
    for (idx, v) in class_values.iter().enumerate() {
        let Some(v) = v else { continue };
        let count = rint(classes.counts[idx] as i64);
        match v {
            ExactAccum::Laurent(q) => {
                is_laurent = true;
                acc_laurent =
                    &acc_laurent + &q.scale(&ExactScalar::from_rational(p, count));
            }
            ExactAccum::Scalar(s) => {
                acc_scalar = &acc_scalar + &s.scale(&count);
            }
        }
    }
    Ok(if is_laurent {
        ExactAccum::Laurent(acc_laurent.scale(&ExactScalar::from_rational(p, total_rat)))
    } else {
        ExactAccum::Scalar(acc_scalar.scale(&total_rat))
    })
}

fn accum_eq(a: &ExactAccum, b: &ExactAccum) -> bool {
    match (a, b) {
        (ExactAccum::Laurent(x), ExactAccum::Laurent(y)) => x == y,
        (ExactAccum::Scalar(x), ExactAccum::Scalar(y)) => x == y,
        _ => false,
    }
}

fn omega_oracle(elem: CosetElement, p: u64, cfg: &OracleConfig) -> Result<OracleValue> {
    let m = cfg.resolution;
    let cells = (p as u128).pow(2 * m);
    if cells > cfg.cost_guard {
        return Err(Error::CostGuard {
            cells,
            guard: cfg.cost_guard,
        });
    }
    let f = CellFunction::one_zp(p, m);
    let word = match elem {
        CosetElement::Alpha(n) => vec![WeilGen::T(crate::arith::pow_rational(p, n), 1)],
        CosetElement::Beta(mm) => vec![
            WeilGen::S(1),
            WeilGen::T(crate::arith::pow_rational(p, mm), 1),
        ],
    };
    let transformed = weil_action(&word, &f, -1)?;
    let num = transformed.inner(&f);
    let den = f.inner(&f);
    Ok(OracleValue::Complex(num / den))
}
