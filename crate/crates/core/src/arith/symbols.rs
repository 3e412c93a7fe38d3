//! Quadratic symbols over Q and the local Weil index data.

use super::{factorize, is_squarefree, split_p, squarefree_kernel, unit_residue};
use crate::{Error, Integer, Rational, Result};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::scalar::ExactScalar;

/// A place of Q: the real place or a finite prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Infinity,
    Finite(u64),
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Infinity => write!(f, "oo"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre_symbol(a: &Integer, p: u64) -> i32 {
    let pb = Integer::from(p);
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return 0;
    }
    let e = (&pb - 1u32) / 2u32;
    let s = r.modpow(&e, &pb);
    if s.is_one() {
        1
    } else {
        -1
    }
}

/// Legendre symbol of a p-adic unit rational.
fn legendre_unit(u: &Rational, p: u64) -> i32 {
    let r = unit_residue(u, p, 1).expect("legendre_unit: not a unit");
    legendre_symbol(&r, p)
}

/// `(u-1)/2 mod 2` for an odd rational unit at 2.
fn eps2(u: &Rational, k: u32) -> u64 {
    // residue of u modulo 2^k, then the classical epsilon invariant
    let r = unit_residue(u, 2, k).expect("eps2: not odd");
    let r = r
        .to_u64_digits()
        .1
        .first()
        .copied()
        .unwrap_or(0);
    (r.wrapping_sub(1) / 2) % 2
}

/// `(u^2-1)/8 mod 2` for an odd rational unit at 2.
fn omega2(u: &Rational) -> u64 {
    let r = unit_residue(u, 2, 3).expect("omega2: not odd");
    let r = r.to_u64_digits().1.first().copied().unwrap_or(0);
    ((r * r - 1) / 8) % 2
}

/// Hilbert symbol `(a, b)_v` for nonzero rationals at a place of Q.
///
/// At an odd prime: the standard unit/uniformizer decomposition formula.
/// At 2: the `(-1)^{eps(u)eps(w) + alpha*omega(w) + beta*omega(u)}` formula.
/// At the real place: `-1` exactly when both arguments are negative.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::domain("hilbert symbol of zero"));
    }
    Ok(match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => {
            let (alpha, u) = split_p(a, 2);
            let (beta, w) = split_p(b, 2);
            let e = eps2(&u, 2) * eps2(&w, 2)
                + (alpha.rem_euclid(2) as u64) * omega2(&w)
                + (beta.rem_euclid(2) as u64) * omega2(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            debug_assert!(p % 2 == 1, "finite place must be prime");
            let (alpha, u) = split_p(a, p);
            let (beta, w) = split_p(b, p);
            let mut s = 1i32;
            if alpha % 2 != 0 {
                s *= legendre_unit(&w, p);
            }
            if beta % 2 != 0 {
                s *= legendre_unit(&u, p);
            }
            if alpha % 2 != 0 && beta % 2 != 0 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            s
        }
    })
}

/// Kronecker symbol `(D/n)` for `n >= 1`, completely multiplicative in `n`.
pub fn kronecker_symbol(d: &Integer, n: u64) -> i32 {
    if n == 0 {
        panic!("kronecker_symbol requires n >= 1");
    }
    let mut s = 1i32;
    for (p, e) in factorize(n) {
        let local = if p == 2 {
            if d.is_even() {
                0
            } else {
                let r = d.mod_floor(&Integer::from(8u32));
                let r = r.to_u64_digits().1.first().copied().unwrap_or(0);
                if r == 1 || r == 7 {
                    1
                } else {
                    -1
                }
            }
        } else {
            legendre_symbol(d, p)
        };
        if local == 0 {
            return 0;
        }
        if e % 2 == 1 {
            s *= local;
        }
    }
    s
}

/// Weil index `gamma(a, psi_p)` for the standard character of Q_p, odd p.
///
/// Determined by: trivial on units, `gamma(p, psi_p) = 1` or `-i` according
/// to `p mod 4`, square-class invariance, and the cocycle rule
/// `gamma(ab) = (a,b)_p gamma(a) gamma(b)`.
fn gamma_standard(a: &Rational, p: u64) -> ExactScalar {
    let (v, u) = split_p(a, p);
    if v.rem_euclid(2) == 0 {
        return ExactScalar::one(p);
    }
    // gamma(p * unit) = (p, u)_p gamma(p) gamma(u) = legendre(u) gamma(p)
    let leg = legendre_unit(&u, p);
    let gp = if p % 4 == 1 {
        ExactScalar::one(p)
    } else {
        -ExactScalar::i(p)
    };
    if leg >= 0 {
        gp
    } else {
        -gp
    }
}

/// `gamma(a, psi_p^d)` and `chi_{psi_p^d}(a)` for an odd prime `p`.
///
/// Both are fourth roots of unity. The twist rule is
/// `gamma(a, psi^d) = (a,d)_p gamma(a, psi)` and
/// `chi_{psi^d} = chi_psi * (d, .)_p`, with
/// `chi_psi(a) = (a,-1)_p gamma(a, psi)`.
pub fn weil_gamma_chi(a: &Rational, p: u64, d: &Rational) -> Result<(ExactScalar, ExactScalar)> {
    if p == 2 || !is_prime_small(p) {
        return Err(Error::UnsupportedPlace(format!(
            "weil_gamma_chi requires an odd prime, got {p}"
        )));
    }
    if a.is_zero() || d.is_zero() {
        return Err(Error::domain("weil_gamma_chi of zero"));
    }
    let g_std = gamma_standard(a, p);
    let tw = hilbert_symbol(a, d, Place::Finite(p))?;
    let gamma = g_std.mul_sign(tw);
    let m1 = -Rational::one();
    let s1 = hilbert_symbol(a, &m1, Place::Finite(p))?;
    let chi_std = gamma_standard(a, p).mul_sign(s1);
    let chi = chi_std.mul_sign(tw);
    Ok((gamma, chi))
}

/// Cheap deterministic primality for the small inputs used here.
pub fn is_prime_small(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Discriminant of the quadratic extension `Q(sqrt(t))` for nonzero rational
/// `t`: the squarefree kernel `s` of `t` when `s = 1 mod 4`, else `4s`; the
/// value `1` signals that `t` is a square (no extension).
pub fn field_discriminant(t: &Rational) -> Result<Integer> {
    if t.is_zero() {
        return Err(Error::domain("field_discriminant of zero"));
    }
    let s = squarefree_kernel(&(t.numer() * t.denom()));
    if s.is_one() {
        return Ok(Integer::one());
    }
    let four = Integer::from(4u32);
    if s.mod_floor(&four).is_one() {
        Ok(s)
    } else {
        Ok(4u32 * s)
    }
}

/// The quadratic character attached to the square class of `t`, evaluated at
/// `n >= 1` as a Kronecker symbol of the field discriminant.
pub fn quadratic_character(t: &Rational, n: u64) -> Result<i32> {
    Ok(kronecker_symbol(&field_discriminant(t)?, n))
}

/// Decompose `xi > 0` as `xi = d * f^2` where `-d` is the discriminant of
/// `Q(sqrt(-xi))` and `f > 0` is rational.
pub fn fundamental_decomposition(xi: &Rational) -> Result<(Integer, Rational)> {
    if !xi.is_positive() {
        return Err(Error::domain("fundamental_decomposition requires xi > 0"));
    }
    let d = -field_discriminant(&-xi.clone())?;
    // f = sqrt(xi / d), exact.
    let q = xi / Rational::from_integer(d.clone());
    let f = sqrt_rational(&q).ok_or_else(|| Error::domain("internal: xi/d not a square"))?;
    Ok((d, f))
}

/// Exact square root of a nonnegative rational if it is a perfect square.
pub fn sqrt_rational(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Index of the Hecke congruence subgroup of squarefree level `t` in the
/// full modular group: the product of `p + 1` over primes dividing `t`.
pub fn gamma0_index(t: u64) -> Result<u64> {
    if t == 0 {
        return Err(Error::domain("level must be positive"));
    }
    if !is_squarefree(t) {
        return Err(Error::domain(format!("level {t} is not squarefree")));
    }
    Ok(factorize(t).iter().map(|&(p, _)| p + 1).product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    #[test]
    fn hilbert_spec_examples() {
        // (-3, 3)_3 = +1: standard decomposition, cross-checked by solvability
        // of z^2 = -3x^2 + 3y^2 mod 3^4 (z=0,x=1,y=1).
        assert_eq!(
            hilbert_symbol(&rint(-3), &rint(3), Place::Finite(3)).unwrap(),
            1
        );
        // (1, b)_v = +1
        assert_eq!(
            hilbert_symbol(&rint(1), &rat(-7, 5), Place::Finite(5)).unwrap(),
            1
        );
        assert_eq!(
            hilbert_symbol(&rint(1), &rint(-2), Place::Infinity).unwrap(),
            1
        );
        // (-1,-1)_oo = -1
        assert_eq!(
            hilbert_symbol(&rint(-1), &rint(-1), Place::Infinity).unwrap(),
            -1
        );
        assert!(hilbert_symbol(&rint(0), &rint(1), Place::Infinity).is_err());
    }

    #[test]
    fn hilbert_brute_force_vs_formula_at_3() {
        // Solvability search of z^2 = a x^2 + b y^2 over Z/3^4 with a
        // primitive triple (x, y, z), for a small sweep of (a, b).
        let m = 81i64;
        let mut has_sqrt = vec![false; m as usize];
        let mut has_unit_sqrt = vec![false; m as usize];
        for z in 0..m {
            let r = (z * z).rem_euclid(m) as usize;
            has_sqrt[r] = true;
            if z % 3 != 0 {
                has_unit_sqrt[r] = true;
            }
        }
        for a in [-6i64, -3, -2, -1, 1, 2, 3, 6] {
            for b in [-6i64, -3, -2, -1, 1, 2, 3, 6] {
                let mut solvable = false;
                'outer: for x in 0..m {
                    for y in 0..m {
                        let rhs = (a * x * x + b * y * y).rem_euclid(m) as usize;
                        let ok = if x % 3 != 0 || y % 3 != 0 {
                            has_sqrt[rhs]
                        } else {
                            has_unit_sqrt[rhs]
                        };
                        if ok {
                            solvable = true;
                            break 'outer;
                        }
                    }
                }
                let sym = hilbert_symbol(&rint(a), &rint(b), Place::Finite(3)).unwrap();
                assert_eq!(sym == 1, solvable, "mismatch at a={a} b={b}");
            }
        }
    }

    #[test]
    fn kronecker_spec_examples() {
        assert_eq!(kronecker_symbol(&Integer::from(-4), 3), -1);
        assert_eq!(kronecker_symbol(&Integer::from(17), 1), 1);
        assert_eq!(kronecker_symbol(&Integer::from(-3), 5), -1);
        // complete multiplicativity spot check
        let d = Integer::from(-20);
        for n in 1..60u64 {
            for m in 1..20u64 {
                assert_eq!(
                    kronecker_symbol(&d, n * m),
                    kronecker_symbol(&d, n) * kronecker_symbol(&d, m)
                );
            }
        }
    }

    #[test]
    fn weil_gamma_spec_examples() {
        // gamma(3, psi_3) = -i since 3 = 3 mod 4
        let (g, _) = weil_gamma_chi(&rint(3), 3, &rint(1)).unwrap();
        assert_eq!(g, -ExactScalar::i(3));
        // gamma(u, psi_p) = 1 for units
        for u in [1i64, 2, 4, 5, 7, -1, -2] {
            let (g, _) = weil_gamma_chi(&rint(u), 3, &rint(1)).unwrap();
            assert_eq!(g, ExactScalar::one(3));
        }
        // chi_{psi_3}(3) = (3,-1)_3 gamma(3,psi_3) = i
        let (_, chi) = weil_gamma_chi(&rint(3), 3, &rint(1)).unwrap();
        assert_eq!(chi, ExactScalar::i(3));
        // chi_{psibar_3}(3) = -i (twist d = -1)
        let (_, chi) = weil_gamma_chi(&rint(3), 3, &rint(-1)).unwrap();
        assert_eq!(chi, -ExactScalar::i(3));
        assert!(weil_gamma_chi(&rint(3), 2, &rint(1)).is_err());
    }

    #[test]
    fn fundamental_decomposition_examples() {
        let (d, f) = fundamental_decomposition(&rint(3)).unwrap();
        assert_eq!((d, f), (Integer::from(3), rint(1)));
        let (d, f) = fundamental_decomposition(&rint(12)).unwrap();
        assert_eq!((d, f), (Integer::from(3), rint(2)));
        let (d, f) = fundamental_decomposition(&rat(1, 4)).unwrap();
        assert_eq!((d, f), (Integer::from(4), rat(1, 4)));
        let (d, f) = fundamental_decomposition(&rint(4)).unwrap();
        assert_eq!((d, f), (Integer::from(4), rint(1)));
        assert!(fundamental_decomposition(&rint(-3)).is_err());
    }

    #[test]
    fn gamma0_index_examples() {
        assert_eq!(gamma0_index(1).unwrap(), 1);
        assert_eq!(gamma0_index(3).unwrap(), 4);
        assert_eq!(gamma0_index(15).unwrap(), 24);
        assert!(gamma0_index(9).is_err());
    }
}
