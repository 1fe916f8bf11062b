use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Rounding direction for inexact dyadic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// Exact binary rational `mantissa * 2^exponent` kept in canonical form
/// (zero is `0 * 2^0`, otherwise the mantissa is odd).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

fn shift_exp(e: i64, k: i64) -> i64 {
    e.checked_add(k).expect("dyadic exponent overflow")
}

impl Dyadic {
    pub fn new(m: BigInt, e: i64) -> Self {
        if m.is_zero() {
            return Dyadic { m, e: 0 };
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { m, e }
        } else {
            Dyadic { m: m >> tz, e: shift_exp(e, tz as i64) }
        }
    }

    pub fn zero() -> Self {
        Dyadic { m: BigInt::zero(), e: 0 }
    }

    pub fn one() -> Self {
        Dyadic { m: BigInt::one(), e: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic { m: BigInt::one(), e: k }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    /// Re-canonicalizes; a no-op on values built through the public API.
    pub fn normalize(&self) -> Self {
        Dyadic::new(self.m.clone(), self.e)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.m.is_positive()
    }

    pub fn abs(&self) -> Self {
        Dyadic { m: self.m.abs(), e: self.e }
    }

    pub fn half(&self) -> Self {
        self.mul_pow2(-1)
    }

    pub fn double(&self) -> Self {
        self.mul_pow2(1)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { m: self.m.clone(), e: shift_exp(self.e, k) }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, k: u32) -> Self {
        if self.is_zero() {
            return if k == 0 { Dyadic::one() } else { Dyadic::zero() };
        }
        Dyadic { m: num_traits::pow(self.m.clone(), k as usize), e: self.e.checked_mul(k as i64).expect("dyadic exponent overflow") }
    }

    pub fn min_with(&self, o: &Self) -> Self {
        if self <= o { self.clone() } else { o.clone() }
    }

    pub fn max_with(&self, o: &Self) -> Self {
        if self >= o { self.clone() } else { o.clone() }
    }

    /// Bit length of the mantissa magnitude.
    pub fn bits(&self) -> u64 {
        self.m.bits()
    }

    /// Integer part when the value is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.e >= 0 {
            Some(&self.m << self.e as u64)
        } else {
            None
        }
    }

    /// `floor(log2 |x|)` for nonzero x.
    pub fn ilog2(&self) -> i64 {
        assert!(!self.is_zero(), "ilog2 of zero");
        self.e + self.m.bits() as i64 - 1
    }

    /// Rounds to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let prec = prec.max(1) as u64;
        let bits = self.m.bits();
        if bits <= prec {
            return self.clone();
        }
        let s = bits - prec;
        // `>>` on BigInt floors toward negative infinity.
        let floor = &self.m >> s;
        let m = match dir {
            Round::Down => floor,
            Round::Up => {
                if (&floor << s) == self.m {
                    floor
                } else {
                    floor + 1
                }
            }
        };
        Dyadic::new(m, shift_exp(self.e, s as i64))
    }

    /// Rounds to a multiple of `2^k` in the given direction.
    pub fn round_to_grid(&self, k: i64, dir: Round) -> Self {
        if self.is_zero() || self.e >= k {
            return self.clone();
        }
        let s = (k - self.e) as u64;
        let floor = &self.m >> s;
        let m = match dir {
            Round::Down => floor,
            Round::Up => {
                if (&floor << s) == self.m {
                    floor
                } else {
                    floor + 1
                }
            }
        };
        Dyadic::new(m, k)
    }

    /// Nearest multiple of `2^k`, ties away from the down neighbour.
    pub fn round_nearest_grid(&self, k: i64) -> Self {
        let lo = self.round_to_grid(k, Round::Down);
        let hi = self.round_to_grid(k, Round::Up);
        if (self - &lo) < (&hi - self) { lo } else { hi }
    }

    /// Quotient `a / b` rounded to `prec` bits in direction `dir`.
    pub fn div_round(a: &Self, b: &Self, prec: u32, dir: Round) -> Self {
        assert!(!b.is_zero(), "dyadic division by zero");
        if a.is_zero() {
            return Dyadic::zero();
        }
        let k = (prec as i64 + b.m.bits() as i64 - a.m.bits() as i64 + 2).max(0);
        let num: BigInt = &a.m << k as u64;
        let (q, r) = num.div_mod_floor(&b.m);
        let q = match dir {
            Round::Down => q,
            Round::Up => {
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            }
        };
        Dyadic::new(q, shift_exp(shift_exp(a.e, -b.e), -k)).round(prec, dir)
    }

    /// Square root of a nonnegative value rounded to `prec` bits. Exact on perfect squares.
    pub fn sqrt_round(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = 2 * prec as i64 + 4;
        let mut k = (want - self.m.bits() as i64).max(0);
        if (self.e - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let n: BigInt = &self.m << k as u64;
        let s = n.sqrt();
        let s = if dir == Round::Up && &s * &s != n { s + 1 } else { s };
        Dyadic::new(s, (self.e - k) / 2).round(prec, dir)
    }

    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp_bits == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp_bits - 1075) };
        let m = BigInt::from(mant);
        Some(Dyadic::new(if neg { -m } else { m }, e))
    }

    /// Directed conversion to f64. Values beyond the f64 range saturate to
    /// +-inf or +-MAX, tiny values are pushed outward past zero.
    pub fn to_f64_dir(&self, dir: Round) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let top = self.ilog2();
        if top > 1020 {
            return match (self.is_positive(), dir) {
                (true, Round::Up) => f64::INFINITY,
                (true, Round::Down) => f64::MAX,
                (false, Round::Up) => -f64::MAX,
                (false, Round::Down) => f64::NEG_INFINITY,
            };
        }
        if top < -1000 {
            let tiny = 2f64.powi(-1000);
            return match (self.is_positive(), dir) {
                (true, Round::Up) => tiny,
                (true, Round::Down) => 0.0,
                (false, Round::Up) => 0.0,
                (false, Round::Down) => -tiny,
            };
        }
        let r = self.round(53, dir);
        let m = r.m.to_i64().expect("53-bit mantissa fits i64") as f64;
        ldexp(m, r.e)
    }

    pub fn to_f64(&self) -> f64 {
        self.round(53, Round::Down).to_f64_dir(Round::Down)
    }

    /// Decimal rendering for small exponents; falls back to `m*2^e`.
    pub fn to_decimal_string(&self) -> String {
        if self.e >= 0 {
            return (&self.m << self.e as u64).to_string();
        }
        let k = (-self.e) as u32;
        if k > 200 {
            return format!("{}*2^{}", self.m, self.e);
        }
        // m / 2^k = m * 5^k / 10^k
        let scaled = &self.m * num_traits::pow(BigInt::from(5), k as usize);
        let neg = scaled.is_negative();
        let digits = scaled.abs().to_string();
        let k = k as usize;
        let padded = if digits.len() <= k { format!("{}{}", "0".repeat(k + 1 - digits.len()), digits) } else { digits };
        let (ip, fp) = padded.split_at(padded.len() - k);
        format!("{}{}.{}", if neg { "-" } else { "" }, ip, fp)
    }
}

/// `x * 2^k` computed in f64 through exact power-of-two steps.
fn ldexp(mut x: f64, mut k: i64) -> f64 {
    while k > 1000 {
        x *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= 2f64.powi(-1000);
        k += 1000;
    }
    x * 2f64.powi(k as i32)
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same sign: compare magnitudes quickly by top bit position first.
        let (ta, tb) = (self.ilog2(), other.ilog2());
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let e = self.e.min(other.e);
            let a = self.m.abs() << (self.e - e) as u64;
            let b = other.m.abs() << (other.e - e) as u64;
            a.cmp(&b)
        };
        if sa > 0 { mag } else { mag.reverse() }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as u64;
        let b = &o.m << (o.e - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, o: &Dyadic) -> Dyadic {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, o: &Dyadic) -> Dyadic {
        if self.is_zero() || o.is_zero() {
            return Dyadic::zero();
        }
        // Product of odd mantissas is odd: already canonical.
        Dyadic { m: &self.m * &o.m, e: shift_exp(self.e, o.e) }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { m: -&self.m, e: self.e }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { m: -self.m, e: self.e }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $f(self, o: Dyadic) -> Dyadic {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $f(self, o: &Dyadic) -> Dyadic {
                (&self).$f(o)
            }
        }
        impl<'a> $tr<Dyadic> for &'a Dyadic {
            type Output = Dyadic;
            fn $f(self, o: Dyadic) -> Dyadic {
                self.$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl From<BigInt> for Dyadic {
    fn from(n: BigInt) -> Self {
        Dyadic::from_int(n)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.m, self.e)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.m, self.e)
    }
}

#[derive(Serialize, Deserialize)]
struct DyadicRepr {
    m: String,
    e: i64,
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DyadicRepr { m: self.m.to_string(), e: self.e }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = DyadicRepr::deserialize(d)?;
        let m: BigInt = r.m.parse().map_err(de::Error::custom)?;
        Ok(Dyadic::new(m, r.e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(d(1, -1) + d(1, -2), d(3, -2));
        assert_eq!(d(3, -1) * d(5, 0), d(15, -1));
        let n = d(4, -2);
        assert_eq!(n.mantissa(), &BigInt::from(1));
        assert_eq!(n.exponent(), 0);
        assert_eq!(d(6, 0).half(), d(3, 0));
    }

    #[test]
    fn shr_floors_negative() {
        assert_eq!(BigInt::from(-3) >> 1u32, BigInt::from(-2));
    }

    #[test]
    fn rounding_is_directed() {
        let x = d(0b1011, 0);
        assert_eq!(x.round(2, Round::Down), d(8, 0));
        assert_eq!(x.round(2, Round::Up), d(12, 0));
        assert_eq!((-&x).round(2, Round::Down), d(-12, 0));
        assert_eq!((-&x).round(2, Round::Up), d(-8, 0));
    }

    #[test]
    fn division_and_sqrt() {
        let third_lo = Dyadic::div_round(&d(1, 0), &d(3, 0), 64, Round::Down);
        let third_hi = Dyadic::div_round(&d(1, 0), &d(3, 0), 64, Round::Up);
        assert!(&third_lo * &d(3, 0) < d(1, 0));
        assert!(&third_hi * &d(3, 0) > d(1, 0));
        assert_eq!(Dyadic::div_round(&d(1, 0), &d(2, 0), 64, Round::Down), d(1, -1));
        assert_eq!(d(9, -4).sqrt_round(64, Round::Up), d(3, -2));
        let s = d(2, 0).sqrt_round(80, Round::Down);
        assert!(s.square() < d(2, 0));
        let s = d(2, 0).sqrt_round(80, Round::Up);
        assert!(s.square() > d(2, 0));
    }

    #[test]
    fn f64_roundtrip() {
        for x in [0.1, -3.75, 1e-300, 6.02e23, 5e-324] {
            let y = Dyadic::from_f64(x).unwrap();
            assert_eq!(y.to_f64_dir(Round::Down).min(y.to_f64_dir(Round::Up)), y.to_f64_dir(Round::Down));
            if x.abs() > 1e-290 {
                assert_eq!(y.to_f64_dir(Round::Down), x);
                assert_eq!(y.to_f64_dir(Round::Up), x);
            }
        }
        let third = Dyadic::div_round(&d(1, 0), &d(3, 0), 200, Round::Down);
        let (lo, hi) = (third.to_f64_dir(Round::Down), third.to_f64_dir(Round::Up));
        assert!(lo < hi && hi == lo.next_up());
    }

    #[test]
    fn decimal_and_serde() {
        assert_eq!(d(-3, -2).to_decimal_string(), "-0.75");
        assert_eq!(d(5, 3).to_decimal_string(), "40");
        let s = serde_json::to_string(&d(-3, -2)).unwrap();
        assert_eq!(s, r#"{"m":"-3","e":-2}"#);
        let back: Dyadic = serde_json::from_str(r#"{"m":"12","e":0}"#).unwrap();
        assert_eq!(back, d(3, 2));
    }
}
