//! Invariants of the metaplectic layer and the enumeration oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2period::arith::pow_rational;
use sl2period::padic::{
    cocycle, coefficient_oracle, eval_tau_vector, metaplectic_multiply, CosetElement, Mat2,
    MetaplecticElement, OracleConfig, OracleFactor, TauVariant,
};
use sl2period::{rint, Complex};

fn random_sl2(rng: &mut ChaCha8Rng, p: u64) -> Mat2 {
    let mut g = Mat2::identity();
    for _ in 0..rng.gen_range(1..5) {
        match rng.gen_range(0..3) {
            0 => {
                let v: i64 = rng.gen_range(-3..=3);
                g = &g * &Mat2::u(pow_rational(p, v) * rint(rng.gen_range(1..7)));
            }
            1 => {
                let v: i64 = rng.gen_range(-3..=3);
                let mut u = rng.gen_range(1..7i64);
                while u % p as i64 == 0 {
                    u += 1;
                }
                g = &g * &Mat2::t(pow_rational(p, v) * rint(u));
            }
            _ => g = &g * &Mat2::s(),
        }
    }
    g
}

#[test]
fn cocycle_identity_five_hundred_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for &p in &[3u64, 5] {
        for _ in 0..250 {
            let g1 = random_sl2(&mut rng, p);
            let g2 = random_sl2(&mut rng, p);
            let g3 = random_sl2(&mut rng, p);
            let lhs = cocycle(&g1, &g2, p).unwrap() * cocycle(&(&g1 * &g2), &g3, p).unwrap();
            let rhs = cocycle(&g2, &g3, p).unwrap() * cocycle(&g1, &(&g2 * &g3), p).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn tau_vectors_are_iwahori_invariant() {
    // right translation by Iwahori elements fixes all evaluation data
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for &p in &[3u64, 5] {
        for variant in [TauVariant::OldAtMg, TauVariant::NewAtNg] {
            for _ in 0..30 {
                let y = random_sl2(&mut rng, p);
                let mut gamma = Mat2::u(rint(rng.gen_range(0..20)));
                gamma = &gamma * &Mat2::r_lower(rint(p as i64 * rng.gen_range(0..6)));
                let mut u = rng.gen_range(1..7i64);
                while u % p as i64 == 0 {
                    u += 1;
                }
                gamma = &gamma * &Mat2::t(rint(u));
                assert!(gamma.in_k0(p));
                let before = eval_tau_vector(variant, &y, p).unwrap();
                let after = eval_tau_vector(variant, &(&y * &gamma), p).unwrap();
                assert_eq!(before, after, "invariance fails at p={p} {variant:?}");
            }
        }
    }
}

#[test]
fn beta_lift_consistency() {
    // the Weyl-translated lift equals the product of the standard lifts
    for &p in &[3u64, 5, 7] {
        for m in -2..=2i64 {
            let lift = CosetElement::Beta(m).metaplectic_lift(p).unwrap();
            let s = MetaplecticElement::new(Mat2::s(), 1).unwrap();
            let a = MetaplecticElement::new(Mat2::alpha(m, p), 1).unwrap();
            let prod = metaplectic_multiply(&s, &a, p).unwrap();
            assert_eq!(lift, prod);
            assert_eq!(lift.g, Mat2::beta(m, p));
        }
    }
}

#[test]
fn delta_independence_across_primes() {
    // the metaplectic coefficient is the same for either unit nonresidue,
    // including at p = 7 (resolution 4 keeps the enumeration within guard)
    for (p, m, deltas) in [(3u64, 5u32, [2i64, 5]), (5, 4, [2, 3]), (7, 4, [3, 5])] {
        let d_disc = sl2period::periods::pick_discriminant(p, 1).unwrap();
        let cfg = OracleConfig::new(m);
        for elem in [CosetElement::Alpha(1), CosetElement::Beta(0)] {
            let mut vals = Vec::new();
            for delta in deltas {
                assert_eq!(
                    sl2period::arith::legendre_symbol(&sl2period::Integer::from(delta), p),
                    -1,
                    "test needs a nonresidue"
                );
                let v = coefficient_oracle(
                    &OracleFactor::PiTilde {
                        d_disc,
                        delta: rint(delta),
                    },
                    elem,
                    p,
                    &cfg,
                )
                .unwrap();
                vals.push(v.as_scalar().unwrap().clone());
            }
            assert_eq!(vals[0], vals[1], "delta dependence at p={p} {elem:?}");
        }
    }
}

#[test]
fn pi_oracle_resolution_stability() {
    let p = 5;
    let d_disc = sl2period::periods::pick_discriminant(p, 1).unwrap();
    let elem = CosetElement::Beta(1);
    let factor = OracleFactor::PiTilde {
        d_disc,
        delta: rint(2),
    };
    let a = coefficient_oracle(&factor, elem, p, &OracleConfig::new(4)).unwrap();
    let b = coefficient_oracle(&factor, elem, p, &OracleConfig::new(5)).unwrap();
    assert_eq!(a.as_scalar().unwrap(), b.as_scalar().unwrap());
}

#[test]
fn omega_oracle_weyl_stability() {
    // the Weyl-translated element at resolution 3 vs 4
    let p = 3;
    let a = coefficient_oracle(&OracleFactor::Omega, CosetElement::Beta(1), p, &OracleConfig::new(3))
        .unwrap()
        .as_complex()
        .unwrap();
    let b = coefficient_oracle(&OracleFactor::Omega, CosetElement::Beta(1), p, &OracleConfig::new(4))
        .unwrap()
        .as_complex()
        .unwrap();
    assert!((a - b).norm() < 1e-10);
}

#[test]
fn truncation_convergence_rate() {
    // |truncated(N) - closed| decays at least like p^{-N}
    use sl2period::periods::{
        alpha_sharp_p, alpha_sharp_truncated_batch, IntegralMode, LevelCase, LocalConfig,
        XiValue,
    };
    for &p in &[3u64, 5] {
        let xi = Complex::new(0.6, 0.8); // unit modulus
        let cfg = LocalConfig::new(p, LevelCase::DividesMg, 1, XiValue::Unit(xi)).unwrap();
        let closed = alpha_sharp_p(&cfg, IntegralMode::Closed)
            .unwrap()
            .to_complex(xi);
        let mut errors = Vec::new();
        for n in [10i64, 20, 40] {
            let t = alpha_sharp_truncated_batch(&cfg, n, &[xi]).unwrap()[0];
            errors.push((closed - t).norm());
        }
        // geometric decay with a generously fitted constant
        let c = 10.0 * errors[0] * (p as f64).powi(10);
        for (err, n) in errors.iter().zip([10i32, 20, 40]) {
            assert!(
                *err <= c * (p as f64).powi(-n) + 1e-15,
                "decay violated at p={p} N={n}: {err}"
            );
        }
    }
}

#[test]
fn unit_circle_positivity() {
    // for |xi| = 1 the local integral is real inside the stated bracket
    use sl2period::periods::{alpha_sharp_p, IntegralMode, LevelCase, LocalConfig, XiValue};
    for &p in &[3u64, 5, 7] {
        let p_f = p as f64;
        let lo = 2.0 * (p_f - 1.0).powi(4) / (p_f * p_f * (p_f + 1.0).powi(3));
        let hi = 2.0 * (p_f + 1.0) / (p_f * p_f);
        for j in 0..24 {
            let theta = std::f64::consts::TAU * (j as f64) / 24.0;
            let xi = Complex::new(theta.cos(), theta.sin());
            let cfg = LocalConfig::new(p, LevelCase::DividesMg, 1, XiValue::Unit(xi)).unwrap();
            let v = alpha_sharp_p(&cfg, IntegralMode::Closed)
                .unwrap()
                .to_complex(xi);
            assert!(v.im.abs() < 1e-12, "imaginary part at p={p} j={j}");
            assert!(
                v.re >= lo - 1e-12 && v.re <= hi + 1e-12,
                "bracket violated at p={p} j={j}: {}",
                v.re
            );
        }
    }
}

#[test]
fn lattice_indicator_is_maximal_compact_invariant() {
    // the cell-model action of integral generators fixes the indicator
    use sl2period::padic::{weil_action, CellFunction, WeilGen};
    for &p in &[3u64, 5] {
        let f = CellFunction::one_zp(p, 3);
        let words: Vec<Vec<WeilGen>> = vec![
            vec![WeilGen::U(rint(2))],
            vec![WeilGen::T(rint(if p == 3 { 2 } else { 3 }), 1)],
            vec![WeilGen::S(1)],
            vec![
                WeilGen::U(rint(1)),
                WeilGen::S(1),
                WeilGen::T(rint(p as i64 - 1), 1),
                WeilGen::U(rint(3)),
            ],
        ];
        for word in words {
            let g = weil_action(&word, &f, -1).unwrap();
            for j in 0..f.len() {
                assert!(
                    (f.value(j) - g.value(j)).norm() < 1e-9,
                    "invariance fails at p={p} cell {j}"
                );
            }
        }
    }
}

#[test]
fn truncated_sum_vanishes_for_negative_sign() {
    // the signed double-coset sum telescopes to zero when the
    // Atkin-Lehner sign is negative
    use sl2period::periods::{alpha_sharp_truncated_batch, LevelCase, LocalConfig, XiValue};
    for &p in &[3u64, 5] {
        let xi = Complex::new(0.28, 0.96).unscale((0.28f64.powi(2) + 0.96f64.powi(2)).sqrt());
        let cfg = LocalConfig::new(p, LevelCase::DividesMg, -1, XiValue::Unit(xi)).unwrap();
        let t = alpha_sharp_truncated_batch(&cfg, 60, &[xi]).unwrap()[0];
        assert!(t.norm() < 1e-10, "nonzero sum at p={p}: {t}");
    }
}
