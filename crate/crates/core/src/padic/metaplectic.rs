//! The metaplectic double cover of SL2 over Q_p with its explicit 2-cocycle.

use super::mat2::Mat2;
use crate::arith::{hilbert_symbol, val_p, Place};
use crate::{Error, Rational, Result};
use num_traits::{One, Zero};

/// An element `[g, eps]` of the double cover, `g` of determinant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaplecticElement {
    pub g: Mat2,
    pub eps: i32,
}

impl MetaplecticElement {
    pub fn new(g: Mat2, eps: i32) -> Result<Self> {
        if !g.det().is_one() {
            return Err(Error::domain("metaplectic element needs determinant 1"));
        }
        if eps != 1 && eps != -1 {
            return Err(Error::domain("sign must be +-1"));
        }
        Ok(MetaplecticElement { g, eps })
    }

    pub fn identity() -> Self {
        MetaplecticElement { g: Mat2::identity(), eps: 1 }
    }

    /// The canonical splitting lift `[g, s_p(g)]` of an integral `g`.
    pub fn split_lift(g: Mat2, p: u64) -> Result<Self> {
        let eps = splitting_sign(&g, p)?;
        MetaplecticElement::new(g, eps)
    }
}

/// The `x`-map: the lower-left entry when nonzero, else the lower-right.
pub fn x_map(g: &Mat2) -> Rational {
    if g.c.is_zero() {
        g.d.clone()
    } else {
        g.c.clone()
    }
}

/// The 2-cocycle `eps_p(g1, g2) = (x(g1)x(g1g2), x(g2)x(g1g2))_p`.
pub fn cocycle(g1: &Mat2, g2: &Mat2, p: u64) -> Result<i32> {
    let g12 = g1 * g2;
    let x1 = x_map(g1);
    let x2 = x_map(g2);
    let x12 = x_map(&g12);
    hilbert_symbol(&(&x1 * &x12), &(&x2 * &x12), Place::Finite(p))
}

/// The splitting correction `s_p(g)`: `(c, d)_p` when `cd != 0` with
/// `ord_p(c)` odd, and `1` otherwise.
pub fn splitting_sign(g: &Mat2, p: u64) -> Result<i32> {
    if g.c.is_zero() || g.d.is_zero() {
        return Ok(1);
    }
    let vc = val_p(&g.c, p).unwrap();
    if vc.rem_euclid(2) == 1 {
        hilbert_symbol(&g.c, &g.d, Place::Finite(p))
    } else {
        Ok(1)
    }
}

/// Group multiplication `[g1, e1][g2, e2] = [g1 g2, eps_p(g1, g2) e1 e2]`.
pub fn metaplectic_multiply(
    e1: &MetaplecticElement,
    e2: &MetaplecticElement,
    p: u64,
) -> Result<MetaplecticElement> {
    let tw = cocycle(&e1.g, &e2.g, p)?;
    MetaplecticElement::new(&e1.g * &e2.g, tw * e1.eps * e2.eps)
}
