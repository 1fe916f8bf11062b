use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int_poly::IntPolynomial;

fn pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

fn exact(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "inexact division in subresultant sequence");
    q
}

/// Resultant by the subresultant remainder sequence.
pub fn resultant(a: &IntPolynomial, b: &IntPolynomial) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        return s * pow(&b.lead(), a.deg());
    }
    let (ca, cb) = (a.content(), b.content());
    let t = pow(&ca, b.deg()) * pow(&cb, a.deg());
    a = a.primitive();
    b = b.primitive();
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let den = &g * pow(&h, delta);
        b = IntPolynomial::new(r.coeffs().iter().map(|c| exact(c, &den)).collect());
        g = a.lead();
        h = if delta == 0 { h } else { exact(&pow(&g, delta), &pow(&h, delta - 1)) };
        if b.is_zero() {
            return BigInt::zero();
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg();
    let hh = exact(&pow(&b.lead(), da), &pow(&h, da - 1));
    s * t * hh
}

/// Discriminant `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &IntPolynomial) -> BigInt {
    let d = p.deg();
    if d == 0 {
        return BigInt::zero();
    }
    let r = resultant(p, &p.derivative());
    let sign = if (d * (d - 1) / 2) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    exact(&(sign * r), &p.lead())
}
