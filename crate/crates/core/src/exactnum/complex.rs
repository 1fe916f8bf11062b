use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::dyadic::{Dyadic, Round};
use super::enclosure::RealEnclosure;

/// Complex number with exact dyadic parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicComplex {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl DyadicComplex {
    pub fn new(re: Dyadic, im: Dyadic) -> Self {
        DyadicComplex { re, im }
    }

    pub fn real(re: Dyadic) -> Self {
        DyadicComplex { re, im: Dyadic::zero() }
    }

    pub fn zero() -> Self {
        Self::real(Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::real(Dyadic::one())
    }

    pub fn i() -> Self {
        DyadicComplex { re: Dyadic::zero(), im: Dyadic::one() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        DyadicComplex { re: Dyadic::from(re), im: Dyadic::from(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        DyadicComplex { re: self.re.clone(), im: -&self.im }
    }

    /// Exact `|z|^2`.
    pub fn norm_sq(&self) -> Dyadic {
        self.re.square() + self.im.square()
    }

    pub fn abs_enclosure(&self, prec: u32) -> RealEnclosure {
        let n = self.norm_sq();
        RealEnclosure { lo: n.sqrt_round(prec, Round::Down), hi: n.sqrt_round(prec, Round::Up) }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        DyadicComplex { re: self.re.mul_pow2(k), im: self.im.mul_pow2(k) }
    }

    pub fn scale(&self, s: &Dyadic) -> Self {
        DyadicComplex { re: &self.re * s, im: &self.im * s }
    }

    /// Both parts rounded to `prec` bits toward the nearest lower grid point.
    pub fn round(&self, prec: u32) -> Self {
        DyadicComplex { re: self.re.round(prec, Round::Down), im: self.im.round(prec, Round::Down) }
    }

    /// Both parts rounded to the nearest multiple of `2^k`.
    pub fn round_grid(&self, k: i64) -> Self {
        DyadicComplex { re: self.re.round_nearest_grid(k), im: self.im.round_nearest_grid(k) }
    }

    /// Approximate quotient; both parts carry roughly `prec` correct bits.
    pub fn div_approx(&self, o: &Self, prec: u32) -> Self {
        let den = o.norm_sq();
        let num = self * &o.conj();
        DyadicComplex {
            re: Dyadic::div_round(&num.re, &den, prec, Round::Down),
            im: Dyadic::div_round(&num.im, &den, prec, Round::Down),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn from_f64(re: f64, im: f64) -> Option<Self> {
        Some(DyadicComplex { re: Dyadic::from_f64(re)?, im: Dyadic::from_f64(im)? })
    }
}

impl<'a> Add<&'a DyadicComplex> for &'a DyadicComplex {
    type Output = DyadicComplex;
    fn add(self, o: &DyadicComplex) -> DyadicComplex {
        DyadicComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a DyadicComplex> for &'a DyadicComplex {
    type Output = DyadicComplex;
    fn sub(self, o: &DyadicComplex) -> DyadicComplex {
        DyadicComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a DyadicComplex> for &'a DyadicComplex {
    type Output = DyadicComplex;
    fn mul(self, o: &DyadicComplex) -> DyadicComplex {
        DyadicComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &DyadicComplex {
    type Output = DyadicComplex;
    fn neg(self) -> DyadicComplex {
        DyadicComplex { re: -&self.re, im: -&self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_and_norm() {
        let i = DyadicComplex::i();
        assert_eq!(&i * &i, DyadicComplex::from_ints(-1, 0));
        let z = DyadicComplex::from_ints(3, 4);
        assert_eq!(z.norm_sq(), Dyadic::from(25));
        assert_eq!(z.abs_enclosure(64), RealEnclosure::from_int(5));
        let q = z.div_approx(&DyadicComplex::from_ints(0, 1), 64);
        assert_eq!(q, DyadicComplex::from_ints(4, -3));
    }
}
