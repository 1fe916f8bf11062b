use num_traits::Signed;

use super::dyadic_poly::sign_variations;
use super::int_poly::IntPolynomial;
use crate::error::{Error, Result};
use crate::exactnum::Dyadic;

/// Signed remainder sequence realized with primitive pseudo-remainders. Each
/// element is a positive multiple of the corresponding rational Sturm polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    pub polys: Vec<IntPolynomial>,
}

/// Builds the Sturm chain of a square-free polynomial of degree >= 1.
pub fn sturm_chain(p: &IntPolynomial) -> Result<SturmChain> {
    if p.degree().unwrap_or(0) < 1 {
        return Err(Error::domain("Sturm chain needs degree >= 1"));
    }
    let mut polys = vec![p.clone(), p.derivative()];
    loop {
        let n = polys.len();
        let (a, b) = (&polys[n - 2], &polys[n - 1]);
        let prem = a.pseudo_rem(b);
        if prem.is_zero() {
            break;
        }
        // rem = prem / lc(b)^(delta+1); we need -rem up to a positive factor.
        let delta = a.deg() - b.deg();
        let lc_neg_odd = b.lead().is_negative() && (delta + 1) % 2 == 1;
        let next = if lc_neg_odd { prem } else { prem.neg() };
        polys.push(next.primitive());
    }
    if polys.last().unwrap().deg() != 0 {
        return Err(Error::NotSquareFree);
    }
    Ok(SturmChain { polys })
}

impl SturmChain {
    pub fn variations_at(&self, x: &Dyadic) -> usize {
        sign_variations(self.polys.iter().map(|q| q.sign_at(x)))
    }

    /// Number of distinct real roots in (a, b].
    pub fn count_roots_interval(&self, a: &Dyadic, b: &Dyadic) -> usize {
        assert!(a < b, "count_roots_interval requires a < b");
        self.variations_at(a) - self.variations_at(b)
    }

    /// Number of distinct real roots in the open interval (a, b).
    pub fn count_roots_open(&self, a: &Dyadic, b: &Dyadic) -> usize {
        let c = self.count_roots_interval(a, b);
        if self.polys[0].sign_at(b) == 0 { c - 1 } else { c }
    }

    /// Number of distinct real roots in the closed interval [a, b].
    pub fn count_roots_closed(&self, a: &Dyadic, b: &Dyadic) -> usize {
        if a == b {
            return usize::from(self.polys[0].sign_at(a) == 0);
        }
        let c = self.count_roots_interval(a, b);
        if self.polys[0].sign_at(a) == 0 { c + 1 } else { c }
    }

    /// Number of real roots on the whole line.
    pub fn count_real_roots(&self) -> usize {
        let at = |pos: bool| {
            sign_variations(self.polys.iter().map(|q| {
                let s = q.lead().sign();
                let s = match s {
                    num_bigint::Sign::Minus => -1,
                    num_bigint::Sign::NoSign => 0,
                    num_bigint::Sign::Plus => 1,
                };
                if pos || q.deg() % 2 == 0 { s } else { -s }
            }))
        };
        at(false) - at(true)
    }
}

/// Convenience wrapper matching the module's operation list.
pub fn count_roots_interval(chain: &SturmChain, a: &Dyadic, b: &Dyadic) -> usize {
    chain.count_roots_interval(a, b)
}
