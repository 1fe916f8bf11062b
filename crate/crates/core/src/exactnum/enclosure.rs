use serde::{Deserialize, Serialize};

use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::interval::Fi;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

/// Closed real interval with dyadic endpoints. Every operation rounds the
/// lower end down and the upper end up to the requested precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealEnclosure {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl RealEnclosure {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain("enclosure with lo > hi"));
        }
        Ok(RealEnclosure { lo, hi })
    }

    pub fn point(x: Dyadic) -> Self {
        RealEnclosure { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(Dyadic::from(n))
    }

    fn outward(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        RealEnclosure { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up) }
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        Self::outward(&self.lo + &o.lo, &self.hi + &o.hi, prec)
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        Self::outward(&self.lo - &o.hi, &self.hi - &o.lo, prec)
    }

    pub fn neg(&self) -> Self {
        RealEnclosure { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::outward(lo, hi, prec)
    }

    /// Errors with a domain error when the divisor encloses zero.
    pub fn div(&self, o: &Self, prec: u32) -> Result<Self> {
        if o.contains_zero() {
            return Err(Error::domain("division by an enclosure containing zero"));
        }
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let l = Dyadic::div_round(a, b, prec, Round::Down);
                let h = Dyadic::div_round(a, b, prec, Round::Up);
                lo = Some(match lo {
                    Some(x) if x <= l => x,
                    _ => l,
                });
                hi = Some(match hi {
                    Some(x) if x >= h => x,
                    _ => h,
                });
            }
        }
        Ok(RealEnclosure { lo: lo.unwrap(), hi: hi.unwrap() })
    }

    /// Square root; negative parts of the operand are clamped to zero.
    pub fn sqrt(&self, prec: u32) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(Error::domain("square root of a negative enclosure"));
        }
        let lo = if self.lo.is_positive() { self.lo.sqrt_round(prec, Round::Down) } else { Dyadic::zero() };
        Ok(RealEnclosure { lo, hi: self.hi.sqrt_round(prec, Round::Up) })
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            RealEnclosure { lo: Dyadic::zero(), hi: self.hi.max_with(&-&self.lo) }
        }
    }

    pub fn hull(&self, o: &Self) -> Self {
        RealEnclosure { lo: self.lo.min_with(&o.lo), hi: self.hi.max_with(&o.hi) }
    }

    /// `Some(true)` if every point is below every point of `o`, `Some(false)`
    /// if no point is, `None` when undecided.
    pub fn certainly_lt(&self, o: &Self) -> Option<bool> {
        if self.hi < o.lo {
            Some(true)
        } else if self.lo >= o.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn to_fi(&self) -> Fi {
        Fi::new(self.lo.to_f64_dir(Round::Down), self.hi.to_f64_dir(Round::Up))
    }

    /// Exact conversion of a finite f64 interval.
    pub fn from_fi(x: Fi) -> Result<Self> {
        match (Dyadic::from_f64(x.lo), Dyadic::from_f64(x.hi)) {
            (Some(lo), Some(hi)) => Ok(RealEnclosure { lo, hi }),
            _ => Err(Error::resource("non-finite interval cannot be represented exactly")),
        }
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn e(a: i64, b: i64) -> RealEnclosure {
        RealEnclosure::new(Dyadic::from(a), Dyadic::from(b)).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(e(1, 2).add(&e(3, 4), 128), e(4, 6));
        assert_eq!(e(-1, 1).mul(&e(2, 2), 128), e(-2, 2));
        let q = e(1, 1).div(&e(2, 2), 128).unwrap();
        assert_eq!(q, RealEnclosure::point(Dyadic::new(BigInt::from(1), -1)));
        assert!(e(1, 1).div(&e(-1, 1), 128).is_err());
    }

    #[test]
    fn third_is_tight() {
        let q = e(1, 1).div(&e(3, 3), 64).unwrap();
        assert!(q.width() <= Dyadic::pow2(-64));
        assert!(q.contains(&Dyadic::div_round(&Dyadic::one(), &Dyadic::from(3), 200, Round::Down)));
    }

    #[test]
    fn sqrt_and_abs() {
        let s = e(2, 2).sqrt(64).unwrap();
        assert!(s.lo.square() <= Dyadic::from(2) && s.hi.square() >= Dyadic::from(2));
        assert_eq!(e(-3, 2).abs(), e(0, 3));
        assert_eq!(e(-3, -2).abs(), e(2, 3));
    }
}
