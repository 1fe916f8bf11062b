use num_bigint::BigInt;
use num_traits::Zero;

use super::int_poly::IntPolynomial;
use crate::exactnum::{Dyadic, DyadicComplex};

/// Polynomial with exact dyadic coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicPolynomial {
    pub coeffs: Vec<Dyadic>,
}

impl DyadicPolynomial {
    pub fn new(mut coeffs: Vec<Dyadic>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DyadicPolynomial { coeffs }
    }

    pub fn from_int(p: &IntPolynomial) -> Self {
        Self::new(p.coeffs().iter().map(|c| Dyadic::from(c.clone())).collect())
    }

    pub fn eval(&self, x: &Dyadic) -> Dyadic {
        self.coeffs.iter().rev().fold(Dyadic::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Coefficients of `q(x) = self(x + c)`.
    pub fn taylor_shift(&self, c: &Dyadic) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = c * &a[j + 1];
                a[j] = &a[j] + &t;
            }
        }
        Self::new(a)
    }

    /// Coefficients of `self(s x)`.
    pub fn scale_arg(&self, s: &Dyadic) -> Self {
        let mut pw = Dyadic::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw = &pw * s;
        }
        Self::new(out)
    }

    /// Integer polynomial obtained by multiplying with the smallest power of two
    /// that clears every denominator (a positive scaling).
    pub fn clear_denominators(&self) -> IntPolynomial {
        let min_e = self.coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.exponent()).min().unwrap_or(0).min(0);
        IntPolynomial::new(self.coeffs.iter().map(|c| c.mul_pow2(-min_e).to_integer().expect("cleared")).collect())
    }
}

/// Taylor shift of an integer polynomial to a dyadic center.
pub fn taylor_shift(p: &IntPolynomial, c: &Dyadic) -> DyadicPolynomial {
    DyadicPolynomial::from_int(p).taylor_shift(c)
}

/// Taylor coefficients `p^(k)(z) / k!` at a complex dyadic point, exact.
pub fn taylor_shift_complex(p: &IntPolynomial, z: &DyadicComplex) -> Vec<DyadicComplex> {
    let mut a: Vec<DyadicComplex> = p.coeffs().iter().map(|c| DyadicComplex::real(Dyadic::from(c.clone()))).collect();
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = z * &a[j + 1];
            a[j] = &a[j] + &t;
        }
    }
    a
}

/// In-place integer Taylor shift by 1.
fn shift_by_one(a: &mut [BigInt]) {
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
}

/// Number of sign changes in a sequence of signs (-1, 0, 1); zeros are skipped.
pub fn sign_variations<I: IntoIterator<Item = i32>>(seq: I) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in seq {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn bigint_sign(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.sign() == num_bigint::Sign::Minus {
        -1
    } else {
        1
    }
}

/// Descartes variation count for the open interval (a, b): sign changes of
/// the coefficients of `(x+1)^d p((a x + b)/(x + 1))`, computed over scaled integers.
pub fn mobius_variation(p: &IntPolynomial, a: &Dyadic, b: &Dyadic) -> usize {
    assert!(a < b, "mobius_variation requires a < b");
    // r(x) = p(a + (b-a) x) maps (0,1) onto (a,b); reversing and shifting by 1
    // maps (0, inf) onto (0,1).
    let r = taylor_shift(p, a).scale_arg(&(b - a)).clear_denominators();
    let mut c: Vec<BigInt> = r.coeffs().iter().rev().cloned().collect();
    if c.is_empty() {
        return 0;
    }
    shift_by_one(&mut c);
    sign_variations(c.iter().map(bigint_sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn ints(v: &[i64]) -> DyadicPolynomial {
        DyadicPolynomial::new(v.iter().map(|&x| Dyadic::from(x)).collect())
    }

    #[test]
    fn taylor_examples() {
        assert_eq!(taylor_shift(&p(&[0, 0, 1]), &Dyadic::one()), ints(&[1, 2, 1]));
        assert_eq!(taylor_shift(&p(&[0, 1]), &Dyadic::from(3)), ints(&[3, 1]));
        assert_eq!(taylor_shift(&p(&[1, -3, 2]), &Dyadic::one()), ints(&[0, 1, 2]));
    }

    #[test]
    fn variation_examples() {
        assert_eq!(sign_variations([1, -1, 1]), 2);
        assert_eq!(sign_variations([-1, 0, 1]), 1);
        assert_eq!(sign_variations([0, 0, 0]), 0);
        assert_eq!(mobius_variation(&p(&[-2, 0, 1]), &Dyadic::zero(), &Dyadic::from(2)), 1);
        assert_eq!(mobius_variation(&p(&[1, 0, 1]), &Dyadic::zero(), &Dyadic::one()), 0);
        assert_eq!(mobius_variation(&p(&[-5, 1]), &Dyadic::zero(), &Dyadic::one()), 0);
        assert!(mobius_variation(&p(&[-1, 0, 1]), &Dyadic::from(-2), &Dyadic::from(2)) >= 2);
    }

    #[test]
    fn complex_taylor_matches_derivatives() {
        // p = x^3 at z = i: coefficients z^3, 3 z^2, 3 z, 1
        let c = taylor_shift_complex(&p(&[0, 0, 0, 1]), &DyadicComplex::i());
        assert_eq!(c[0], DyadicComplex::from_ints(0, -1));
        assert_eq!(c[1], DyadicComplex::from_ints(-3, 0));
        assert_eq!(c[2], DyadicComplex::from_ints(0, 3));
        assert_eq!(c[3], DyadicComplex::one());
    }
}
