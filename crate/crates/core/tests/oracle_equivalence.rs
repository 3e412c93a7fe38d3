//! Cross-checks between the enumeration oracles and the closed forms.

use sl2period::arith::ExactScalar;
use sl2period::padic::{
    coefficient_oracle, h_vector_norm_oracle, tau_norm_oracle, CosetElement, OracleConfig,
    OracleFactor, TauVariant,
};
use sl2period::periods::{
    matrix_coefficient_closed, pick_discriminant, ClosedFactor, LevelCase, LocalConfig, XiValue,
};
use sl2period::{rint, Complex};

fn elements() -> Vec<CosetElement> {
    vec![
        CosetElement::Alpha(-1),
        CosetElement::Alpha(0),
        CosetElement::Alpha(1),
        CosetElement::Beta(0),
        CosetElement::Beta(1),
    ]
}

fn nonresidue(p: u64) -> i64 {
    (2..p as i64)
        .find(|&u| sl2period::arith::legendre_symbol(&sl2period::Integer::from(u), p) == -1)
        .unwrap()
}

#[test]
fn tau_oracle_matches_closed_form_small() {
    // quick version at p=3, M=4; the acceptance suite runs M=5 and p=5
    let p = 3;
    let cfg_local = LocalConfig::new(p, LevelCase::DividesMg, 1, XiValue::Formal).unwrap();
    for elem in elements() {
        let oracle_cfg = OracleConfig::new(4);
        let got = coefficient_oracle(
            &OracleFactor::Tau(TauVariant::OldAtMg),
            elem,
            p,
            &oracle_cfg,
        )
        .unwrap();
        let want = matrix_coefficient_closed(ClosedFactor::TauOld, elem, &cfg_local).unwrap();
        assert_eq!(
            got.as_laurent().unwrap(),
            want.as_laurent().unwrap(),
            "tau mismatch at {elem:?}"
        );
    }
}

#[test]
fn pi_oracle_matches_closed_form_small() {
    let p = 3;
    for wp in [1, -1] {
        let d_disc = pick_discriminant(p, wp).unwrap();
        let delta = rint(nonresidue(p));
        let cfg_local = LocalConfig::new(p, LevelCase::DividesMg, wp, XiValue::Formal).unwrap();
        for elem in elements() {
            let oracle_cfg = OracleConfig::new(4);
            let got = coefficient_oracle(
                &OracleFactor::PiTilde {
                    d_disc,
                    delta: delta.clone(),
                },
                elem,
                p,
                &oracle_cfg,
            )
            .unwrap();
            let want =
                matrix_coefficient_closed(ClosedFactor::PiTilde { d_disc }, elem, &cfg_local)
                    .unwrap();
            assert_eq!(
                got.as_scalar().unwrap(),
                want.as_scalar().unwrap(),
                "pi mismatch at {elem:?} (wp={wp}, D={d_disc})"
            );
        }
    }
}

#[test]
fn omega_oracle_matches_closed_form_small() {
    let p = 3;
    let cfg_local = LocalConfig::new(p, LevelCase::DividesMg, 1, XiValue::Formal).unwrap();
    for elem in elements() {
        let oracle_cfg = OracleConfig::new(3);
        let got = coefficient_oracle(&OracleFactor::Omega, elem, p, &oracle_cfg).unwrap();
        let want = matrix_coefficient_closed(ClosedFactor::Omega, elem, &cfg_local).unwrap();
        let diff = got.as_complex().unwrap() - want.as_scalar().unwrap().to_complex();
        assert!(
            diff.norm() < 1e-10,
            "omega mismatch at {elem:?}: {} vs {}",
            got.as_complex().unwrap(),
            want.as_scalar().unwrap().to_complex()
        );
    }
}

#[test]
fn norms_are_exact() {
    for &p in &[3u64, 5] {
        let cfg = OracleConfig::new(3);
        assert_eq!(
            tau_norm_oracle(TauVariant::OldAtMg, p, &cfg).unwrap(),
            sl2period::arith::LaurentPoly::one(p)
        );
        let d_disc = pick_discriminant(p, 1).unwrap();
        assert_eq!(
            h_vector_norm_oracle(p, d_disc, &rint(nonresidue(p)), &cfg).unwrap(),
            ExactScalar::from_rational(p, rint(p as i64))
        );
    }
}

#[test]
fn resolution_stability() {
    let p = 3;
    let elem = CosetElement::Alpha(1);
    let a = coefficient_oracle(
        &OracleFactor::Tau(TauVariant::OldAtMg),
        elem,
        p,
        &OracleConfig::new(4),
    )
    .unwrap();
    let b = coefficient_oracle(
        &OracleFactor::Tau(TauVariant::OldAtMg),
        elem,
        p,
        &OracleConfig::new(5),
    )
    .unwrap();
    assert_eq!(a.as_laurent().unwrap(), b.as_laurent().unwrap());

    let om_a = coefficient_oracle(&OracleFactor::Omega, elem, p, &OracleConfig::new(3))
        .unwrap()
        .as_complex()
        .unwrap();
    let om_b = coefficient_oracle(&OracleFactor::Omega, elem, p, &OracleConfig::new(4))
        .unwrap()
        .as_complex()
        .unwrap();
    assert!((om_a - om_b).norm() < 1e-10);
}

#[test]
fn delta_independence_small() {
    // both nonresidue representatives give the same metaplectic coefficient
    let p = 3;
    let d_disc = pick_discriminant(p, 1).unwrap();
    let elem = CosetElement::Beta(1);
    let mut vals = Vec::new();
    for delta in [2i64, 5] {
        // 2 and 5 are both nonresidues mod 3
        let got = coefficient_oracle(
            &OracleFactor::PiTilde {
                d_disc,
                delta: rint(delta),
            },
            elem,
            p,
            &OracleConfig::new(4),
        )
        .unwrap();
        vals.push(got.as_scalar().unwrap().clone());
    }
    assert_eq!(vals[0], vals[1]);
}

#[test]
fn spec_example_tau_alpha1_p3() {
    // the oracle reproduces (3^{-1}/4) * (X^2(3X^2-1) + X^{-2}(X^2-3))/(X^2-1)
    let p = 3;
    let got = coefficient_oracle(
        &OracleFactor::Tau(TauVariant::OldAtMg),
        CosetElement::Alpha(1),
        p,
        &OracleConfig::new(5),
    )
    .unwrap();
    let want = sl2period::periods::tau_old_alpha_closed(1, p);
    assert_eq!(got.as_laurent().unwrap(), &want);
    // and the closed form at xi = e^{i theta} stays within the unit interval bounds
    let q = want;
    for k in 0..8 {
        let theta = std::f64::consts::PI * (k as f64) / 4.0;
        let x = Complex::new((theta / 2.0).cos(), (theta / 2.0).sin());
        let v = q.eval_complex(x);
        assert!(v.norm() <= 1.0 + 1e-9);
    }
}
