use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicComplex, RealEnclosure, Round};

/// Integer polynomial, coefficients in ascending degree order, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// Exact norms and the benchmark root bound of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormsAndBounds {
    pub two_norm_sq: BigInt,
    pub height: BigInt,
    pub root_bound: Dyadic,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `x - r`.
    pub fn linear_root(r: i64) -> Self {
        Self::from_i64s(&[-r, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; callers check `is_zero` first.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Smallest L with every |coefficient| < 2^L.
    pub fn bit_height(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn norms_and_bounds(&self) -> NormsAndBounds {
        let two_norm_sq = self.coeffs.iter().map(|c| c * c).sum();
        let height = self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default();
        NormsAndBounds { two_norm_sq, height, root_bound: Dyadic::pow2(self.bit_height() as i64) }
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content, keeping the sign of the leading coefficient.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "pseudo-remainder by zero");
        let db = b.deg();
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        if self.is_zero() || self.deg() < db {
            return self.clone();
        }
        let delta = self.deg() - db;
        let mut steps = 0usize;
        while r.len() > db && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[j + shift] -= &lr * bc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            steps += 1;
            if r.len() <= db {
                break;
            }
        }
        // Pad the missing multiplications so the factor is exactly lc^(delta+1).
        let missing = (delta + 1).saturating_sub(steps);
        let f = num_traits::pow(lb, missing);
        Self::new(r.into_iter().map(|c| c * &f).collect())
    }

    /// Exact quotient `self / b` when `b` divides `self` over the integers.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let db = b.deg();
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.deg() - db + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + db].clone();
            let (qk, rem) = top.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k + j] -= &qk * bc;
            }
            q[k] = qk;
        }
        if r.iter().all(|c| c.is_zero()) { Some(Self::new(q)) } else { None }
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.is_zero() {
            return b.normalize_sign();
        }
        if b.is_zero() {
            return a.normalize_sign();
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.normalize_sign()
    }

    fn normalize_sign(&self) -> Self {
        if self.lead().is_negative() { self.neg() } else { self.clone() }
    }

    /// True iff gcd(p, p') is constant.
    pub fn is_square_free(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact value at a dyadic point by Horner's rule.
    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        if x.exponent() >= 0 {
            return Dyadic::from(self.eval_int(&x.to_integer().unwrap()));
        }
        // p(m 2^-k) = 2^(-kd) * sum c_i m^i 2^(k(d-i)); Horner over integers.
        let k = (-x.exponent()) as u64;
        let m = x.mantissa();
        let mut acc = BigInt::zero();
        for (j, c) in self.coeffs.iter().rev().enumerate() {
            acc = if j == 0 { c.clone() } else { acc * m + (c << (k * j as u64)) };
        }
        Dyadic::new(acc, -(k as i64) * self.deg() as i64)
    }

    pub fn sign_at(&self, x: &Dyadic) -> i32 {
        self.eval_dyadic(x).signum()
    }

    /// Exact value at a complex dyadic point.
    pub fn eval_complex(&self, z: &DyadicComplex) -> DyadicComplex {
        let mut acc = DyadicComplex::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &DyadicComplex::real(Dyadic::from(c.clone()));
        }
        acc
    }

    /// Outward-rounded box around p(z) at the given precision.
    pub fn eval_complex_enclosure(&self, z: &DyadicComplex, precision: u32) -> (RealEnclosure, RealEnclosure) {
        let v = self.eval_complex(z);
        let r = |x: &Dyadic| RealEnclosure { lo: x.round(precision, Round::Down), hi: x.round(precision, Round::Up) };
        (r(&v.re), r(&v.im))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Parses the text format: ascending decimal coefficients separated by whitespace.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs: std::result::Result<Vec<BigInt>, _> = s.split_whitespace().map(BigInt::from_str).collect();
        let coeffs = coeffs.map_err(|e| Error::Parse(format!("bad coefficient in {s:?}: {e}")))?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        Ok(Self::new(coeffs))
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Serialized in the text format, e.g. `"-2 0 1"`.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        IntPolynomial::parse(&s).map_err(de::Error::custom)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial[{}]", self.to_text())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let coef = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            write!(f, "{}{}{}{}", if first { "" } else { " " }, sign, if first || sign.is_empty() { "" } else { " " }, coef + &mono)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn dy(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p(&[-2, 0, 1]).eval_dyadic(&dy(1, 0)), dy(-1, 0));
        assert_eq!(p(&[-2, 0, 1]).eval_dyadic(&dy(0, 0)), dy(-2, 0));
        assert_eq!(p(&[1, -3, 0, 2]).eval_dyadic(&dy(1, -1)), dy(-1, -2));
        assert_eq!(p(&[-2, 0, 1]).eval_dyadic(&dy(3, -1)), dy(1, -2));
    }

    #[test]
    fn complex_evaluation() {
        let (re, im) = p(&[1, 0, 1]).eval_complex_enclosure(&DyadicComplex::i(), 64);
        assert!(re.contains(&Dyadic::zero()) && im.contains(&Dyadic::zero()));
        let (re, im) = p(&[0, 1]).eval_complex_enclosure(&DyadicComplex::from_ints(3, 4), 64);
        assert!(re.contains(&Dyadic::from(3)) && im.contains(&Dyadic::from(4)));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p(&[-2, 0, 1]).derivative(), p(&[0, 2]));
        assert!(p(&[5]).derivative().is_zero());
        assert_eq!(p(&[1, -3, 0, 2]).derivative(), p(&[-3, 0, 6]));
    }

    #[test]
    fn norms() {
        let n = p(&[-2, 0, 1]).norms_and_bounds();
        assert_eq!((n.two_norm_sq, n.height, n.root_bound), (BigInt::from(5), BigInt::from(2), Dyadic::from(4)));
        let n = p(&[1, 0, 1]).norms_and_bounds();
        assert_eq!((n.two_norm_sq, n.height, n.root_bound), (BigInt::from(2), BigInt::from(1), Dyadic::from(2)));
        let n = p(&[0, 1]).norms_and_bounds();
        assert_eq!((n.two_norm_sq, n.height, n.root_bound), (BigInt::from(1), BigInt::from(1), Dyadic::from(2)));
    }

    #[test]
    fn square_free() {
        assert!(p(&[-1, 0, 1]).is_square_free());
        assert!(!p(&[1, -2, 1]).is_square_free());
        assert!(p(&[0, -1, 0, 1]).is_square_free());
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.exact_div(&b), Some(p(&[-1, 1])));
        assert_eq!(a.exact_div(&p(&[2, 1])), None);
        assert_eq!(a.gcd(&p(&[1, 2, 1])), b);
        let pr = p(&[1, 0, 1]).pseudo_rem(&p(&[0, 2]));
        assert_eq!(pr, p(&[4]));
    }

    #[test]
    fn parse_and_display() {
        let q: IntPolynomial = "-2 0 1".parse().unwrap();
        assert_eq!(q, p(&[-2, 0, 1]));
        assert_eq!(q.to_string(), "x^2 - 2");
        assert!(IntPolynomial::parse("1 a").is_err());
    }
}
