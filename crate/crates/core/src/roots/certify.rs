//! Single-root certificates on disks.
//!
//! A disk D(c, r) holds exactly one root of p when
//! `|q_1| r > sum_{k != 1} |q_k| r^k`, where `q_k = p^(k)(c) / k!`
//! (Rouché against the linear Taylor term). The strict inequality also
//! rules out roots on the boundary circle.

use crate::exactnum::{Dyadic, DyadicComplex, Round};
use crate::polynomial::{taylor_shift_complex, IntPolynomial};

/// Magnitudes of the Taylor coefficients: lower bound for index 1, upper bounds elsewhere.
fn coefficient_bounds(q: &[DyadicComplex], prec: u32) -> Vec<Dyadic> {
    q.iter()
        .enumerate()
        .map(|(k, c)| c.norm_sq().sqrt_round(prec, if k == 1 { Round::Down } else { Round::Up }))
        .collect()
}

/// Checks the single-root inequality for a given radius using precomputed bounds.
fn holds(bounds: &[Dyadic], r: &Dyadic) -> bool {
    if r.is_zero() || bounds.len() < 2 {
        return false;
    }
    let lhs = &bounds[1] * r;
    let mut rhs = bounds[0].clone();
    let mut rk = r.clone();
    for b in bounds.iter().skip(2) {
        rk = &rk * r;
        rhs = &rhs + &(b * &rk);
    }
    lhs > rhs
}

/// Tries to certify that a small disk around `c` holds exactly one root.
/// Returns the radius (zero when `c` is an exact root).
pub fn certify_disk(p: &IntPolynomial, c: &DyadicComplex, prec: u32) -> Option<Dyadic> {
    let q = taylor_shift_complex(p, c);
    if q[0].is_zero() {
        return if q.len() > 1 && !q[1].is_zero() { Some(Dyadic::zero()) } else { None };
    }
    let bounds = coefficient_bounds(&q, prec);
    if bounds[1].is_zero() {
        return None;
    }
    let ratio = Dyadic::div_round(&bounds[0], &bounds[1], 16, Round::Up);
    for mult in [2i64, 3, 4, 8] {
        let r = (&ratio * &Dyadic::from(mult)).round(8, Round::Up);
        if holds(&bounds, &r) {
            return Some(r);
        }
    }
    None
}

/// Verifies the single-root inequality for an explicit disk; used by tests and refinement.
pub fn disk_has_single_root(p: &IntPolynomial, c: &DyadicComplex, r: &Dyadic, prec: u32) -> bool {
    let q = taylor_shift_complex(p, c);
    if r.is_zero() {
        return q[0].is_zero() && q.len() > 1 && !q[1].is_zero();
    }
    holds(&coefficient_bounds(&q, prec), r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_and_approximate_roots() {
        let p = IntPolynomial::from_i64s(&[1, 0, 1]);
        assert_eq!(certify_disk(&p, &DyadicComplex::i(), 64), Some(Dyadic::zero()));
        let p = IntPolynomial::from_i64s(&[-2, 0, 1]);
        let c = DyadicComplex::real(Dyadic::from_f64(std::f64::consts::SQRT_2).unwrap());
        let r = certify_disk(&p, &c, 128).unwrap();
        assert!(r < Dyadic::pow2(-40));
        assert!(disk_has_single_root(&p, &c, &r, 128));
        // A disk around 0 of radius 1 holds no root of x^2 - 2, so the test must fail.
        assert!(!disk_has_single_root(&p, &DyadicComplex::zero(), &Dyadic::one(), 128));
    }
}
