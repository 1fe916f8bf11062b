use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::{square_free_check, IntPolynomial};

/// Attempts made by the random generator before giving up on square-freeness.
const RANDOM_RETRIES: usize = 256;

/// A polynomial source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `x^d - 2 (a x - 1)^2`
    Mignotte { d: usize, a: u64 },
    /// `(x - 1)(x - 2)...(x - n)`
    Wilkinson { n: usize },
    /// `2 T_n(x / 2)`, monic with integer coefficients and roots `2 cos((2k-1)π / 2n)`.
    Chebyshev { n: usize },
    /// Degree `d`, coefficients uniform in `(-2^l, 2^l)`.
    Random { d: usize, l: u64, seed: u64 },
    /// Polynomial number `line` (0-based) of a text-format file.
    File {
        path: PathBuf,
        #[serde(default)]
        line: usize,
    },
    /// Text-format polynomial given inline.
    Explicit { poly: String },
}

/// Family names accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    Mignotte,
    Wilkinson,
    Chebyshev,
    Random,
}

impl std::str::FromStr for FamilyName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mignotte" => Ok(FamilyName::Mignotte),
            "wilkinson" => Ok(FamilyName::Wilkinson),
            "chebyshev" => Ok(FamilyName::Chebyshev),
            "random" => Ok(FamilyName::Random),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// Largest `a >= 1` with `2 a^2 < 2^l`, so every Mignotte coefficient stays below `2^l`.
pub fn mignotte_a_for_height(l: u64) -> u64 {
    let cap = 1u128 << l.min(120);
    let mut a = (((cap / 2) as f64).sqrt() as u128).max(1);
    while a > 1 && 2 * a * a >= cap {
        a -= 1;
    }
    while 2 * (a + 1) * (a + 1) < cap {
        a += 1;
    }
    a as u64
}

impl Family {
    /// Family member of degree `d` with height parameter `l` (Mignotte picks `a`
    /// from `l`; Wilkinson and Chebyshev ignore it).
    pub fn from_params(name: FamilyName, d: usize, l: u64, seed: u64) -> Self {
        match name {
            FamilyName::Mignotte => Family::Mignotte { d, a: mignotte_a_for_height(l) },
            FamilyName::Wilkinson => Family::Wilkinson { n: d },
            FamilyName::Chebyshev => Family::Chebyshev { n: d },
            FamilyName::Random => Family::Random { d, l, seed },
        }
    }

    pub fn label(&self) -> String {
        match self {
            Family::Mignotte { d, a } => format!("mignotte(d={d},a={a})"),
            Family::Wilkinson { n } => format!("wilkinson({n})"),
            Family::Chebyshev { n } => format!("chebyshev({n})"),
            Family::Random { d, l, seed } => format!("random(d={d},L={l},seed={seed})"),
            Family::File { path, line } => format!("file({}:{})", path.display(), line + 1),
            Family::Explicit { poly } => format!("poly({poly})"),
        }
    }
}

/// Non-blank lines of a polynomial file; `#` starts a comment.
pub fn polynomial_lines(text: &str) -> Vec<&str> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).collect()
}

fn x_minus(c: i64) -> IntPolynomial {
    IntPolynomial::from_i64s(&[-c, 1])
}

fn mignotte(d: usize, a: u64) -> Result<IntPolynomial> {
    if d < 1 || a < 1 {
        return Err(Error::domain("mignotte needs d >= 1 and a >= 1"));
    }
    let mut xd = vec![BigInt::zero(); d + 1];
    xd[d] = BigInt::one();
    let lin = IntPolynomial::new(vec![BigInt::from(-1), BigInt::from(a)]);
    Ok(IntPolynomial::new(xd).sub(&lin.mul(&lin).scale(&BigInt::from(2))))
}

fn wilkinson(n: usize) -> Result<IntPolynomial> {
    if n < 1 {
        return Err(Error::domain("wilkinson needs n >= 1"));
    }
    Ok((1..=n as i64).fold(IntPolynomial::constant(1), |acc, i| acc.mul(&x_minus(i))))
}

fn chebyshev(n: usize) -> Result<IntPolynomial> {
    if n < 1 {
        return Err(Error::domain("chebyshev needs n >= 1"));
    }
    let x = IntPolynomial::from_i64s(&[0, 1]);
    let (mut prev, mut cur) = (IntPolynomial::constant(2), x.clone());
    for _ in 1..n {
        let next = x.mul(&cur).sub(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Uniform integer in `(-2^l, 2^l)` by rejection on `l + 1` random bits.
fn coefficient(rng: &mut ChaCha8Rng, l: u64) -> BigInt {
    let span = (BigInt::one() << (l + 1)) - 1u8;
    loop {
        let words: Vec<u64> = (0..l / 64 + 1).map(|_| rng.gen()).collect();
        let raw = words.iter().rev().fold(BigInt::zero(), |acc, &w| (acc << 64) + w);
        let r = raw & ((BigInt::one() << (l + 1)) - 1u8);
        if r < span {
            return r - ((BigInt::one() << l) - 1u8);
        }
    }
}

fn random(d: usize, l: u64, seed: u64) -> Result<IntPolynomial> {
    if d < 1 || l < 1 {
        return Err(Error::domain("random needs d >= 1 and L >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_RETRIES {
        let mut c: Vec<BigInt> = (0..=d).map(|_| coefficient(&mut rng, l)).collect();
        while c[d].is_zero() {
            c[d] = coefficient(&mut rng, l);
        }
        let p = IntPolynomial::new(c);
        if square_free_check(&p) {
            return Ok(p);
        }
    }
    Err(Error::resource(format!("no square-free polynomial after {RANDOM_RETRIES} draws")))
}

/// Builds the polynomial for a family. Every generated polynomial is square-free
/// except possibly those read from a file or given inline, which are returned
/// as-is so the caller can report the rejection.
pub fn gen_family(f: &Family) -> Result<IntPolynomial> {
    let p = match f {
        Family::Mignotte { d, a } => mignotte(*d, *a)?,
        Family::Wilkinson { n } => wilkinson(*n)?,
        Family::Chebyshev { n } => chebyshev(*n)?,
        Family::Random { d, l, seed } => random(*d, *l, *seed)?,
        Family::File { path, line } => {
            let text = std::fs::read_to_string(path)?;
            let lines = polynomial_lines(&text);
            let s = lines.get(*line).ok_or_else(|| Error::Parse(format!("{} has no polynomial {}", path.display(), line + 1)))?;
            IntPolynomial::parse(s)?
        }
        Family::Explicit { poly } => IntPolynomial::parse(poly)?,
    };
    if matches!(f, Family::Mignotte { .. } | Family::Wilkinson { .. } | Family::Chebyshev { .. }) && !square_free_check(&p) {
        return Err(Error::NotSquareFree);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(gen_family(&Family::Wilkinson { n: 3 }).unwrap(), IntPolynomial::from_i64s(&[-6, 11, -6, 1]));
        assert_eq!(gen_family(&Family::Mignotte { d: 4, a: 3 }).unwrap(), IntPolynomial::from_i64s(&[-2, 12, -18, 0, 1]));
        let r = Family::Random { d: 5, l: 8, seed: 42 };
        assert_eq!(gen_family(&r).unwrap(), gen_family(&r).unwrap());
    }

    #[test]
    fn chebyshev_small() {
        // 2 T_2(x/2) = x^2 - 2, 2 T_3(x/2) = x^3 - 3x
        assert_eq!(gen_family(&Family::Chebyshev { n: 2 }).unwrap(), IntPolynomial::from_i64s(&[-2, 0, 1]));
        assert_eq!(gen_family(&Family::Chebyshev { n: 3 }).unwrap(), IntPolynomial::from_i64s(&[0, -3, 0, 1]));
    }

    #[test]
    fn mignotte_height() {
        assert_eq!(mignotte_a_for_height(8), 11);
        let p = gen_family(&Family::from_params(FamilyName::Mignotte, 6, 8, 0)).unwrap();
        assert_eq!(p.bit_height(), 8);
    }

    #[test]
    fn random_respects_height() {
        for seed in 0..20 {
            let p = gen_family(&Family::Random { d: 7, l: 5, seed }).unwrap();
            assert_eq!(p.deg(), 7);
            assert!(p.bit_height() <= 5);
        }
        let big = gen_family(&Family::Random { d: 3, l: 100, seed: 1 }).unwrap();
        assert!(big.bit_height() <= 100);
    }
}
