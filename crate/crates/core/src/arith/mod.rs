//! Exact scalar arithmetic and the number-theoretic symbol layer.

mod symbols;
mod scalar;
mod laurent;
mod pipoly;

pub use symbols::{
    field_discriminant, fundamental_decomposition, gamma0_index, hilbert_symbol, is_prime_small,
    kronecker_symbol, legendre_symbol, quadratic_character, weil_gamma_chi, Place,
};
pub use scalar::{ExactScalar, GaussianRational};
pub use laurent::LaurentPoly;
pub use pipoly::PiPoly;

use crate::{Integer, Rational, Result};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// Lossy conversion to `f64` for the floating-point oracles.
pub fn rational_to_f64_pub(r: &Rational) -> f64 {
    scalar::rational_to_f64(r)
}

/// p-adic valuation of a big integer, returning 0 on zero input (used for
/// exponent defects where the zero case cannot occur).
pub fn int_val_p_or_zero(n: &Integer, p: u64) -> i64 {
    if n.is_zero() {
        0
    } else {
        int_val_p(n, p) as i64
    }
}

/// p-adic valuation of a nonzero big integer.
pub fn int_val_p(n: &Integer, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let p = Integer::from(p);
    let mut v = 0u64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub fn val_p(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(int_val_p(x.numer(), p) as i64 - int_val_p(x.denom(), p) as i64)
}

/// Decompose a nonzero rational as `p^v * u` with `u` a p-adic unit.
///
/// Returns `(v, u)`.
pub fn split_p(x: &Rational, p: u64) -> (i64, Rational) {
    let v = val_p(x, p).expect("split_p of zero");
    let pw = pow_rational(p, v);
    (v, x / pw)
}

/// `p^v` as a rational, any sign of `v`.
pub fn pow_rational(p: u64, v: i64) -> Rational {
    let big = Integer::from(p).pow(v.unsigned_abs() as u32);
    if v >= 0 {
        Rational::from_integer(big)
    } else {
        Rational::new(Integer::one(), big)
    }
}

/// Residue of a p-adic unit rational modulo `p^k`, as an integer in `[0, p^k)`.
pub fn unit_residue(u: &Rational, p: u64, k: u32) -> Result<Integer> {
    if val_p(u, p) != Some(0) {
        return Err(crate::Error::domain(format!("{u} is not a unit at p={p}")));
    }
    let modulus = Integer::from(p).pow(k);
    let n = u.numer().mod_floor(&modulus);
    let d = u.denom().mod_floor(&modulus);
    let d_inv = mod_inverse(&d, &modulus)
        .ok_or_else(|| crate::Error::domain(format!("{u} is not a unit at p={p}")))?;
    Ok((n * d_inv).mod_floor(&modulus))
}

/// Modular inverse via extended gcd; `None` when not coprime.
pub fn mod_inverse(a: &Integer, m: &Integer) -> Option<Integer> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Squarefree kernel of a nonzero integer, preserving sign.
pub fn squarefree_kernel(n: &Integer) -> Integer {
    let mut m = n.abs();
    let mut kernel = Integer::one();
    let mut d = Integer::from(2u32);
    while &d * &d <= m {
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&d);
            if r.is_zero() {
                m = q;
                e += 1;
            } else {
                break;
            }
        }
        if e % 2 == 1 {
            kernel *= &d;
        }
        d += 1;
    }
    kernel *= m; // leftover prime
    if n.is_negative() {
        -kernel
    } else {
        kernel
    }
}

/// Prime factorization of a positive integer (trial division; inputs here are small).
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// True when `n` is squarefree.
pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    #[test]
    fn valuations() {
        assert_eq!(val_p(&rat(9, 4), 3), Some(2));
        assert_eq!(val_p(&rat(4, 9), 3), Some(-2));
        assert_eq!(val_p(&rint(0), 3), None);
        let (v, u) = split_p(&rat(18, 5), 3);
        assert_eq!(v, 2);
        assert_eq!(u, rat(2, 5));
    }

    #[test]
    fn unit_residues() {
        let u = rat(2, 5);
        // 2/5 mod 9: 5^{-1} = 2 mod 9, so 2*2 = 4.
        assert_eq!(unit_residue(&u, 3, 2).unwrap(), Integer::from(4));
        assert!(unit_residue(&rat(3, 5), 3, 2).is_err());
    }

    #[test]
    fn kernels() {
        assert_eq!(squarefree_kernel(&Integer::from(12)), Integer::from(3));
        assert_eq!(squarefree_kernel(&Integer::from(-75)), Integer::from(-3));
        assert_eq!(squarefree_kernel(&Integer::from(1)), Integer::from(1));
    }
}
