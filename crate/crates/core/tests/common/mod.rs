#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rootca::exactnum::{Dyadic, DyadicComplex};
use rootca::harness::{gen_family, Family};
use rootca::polynomial::IntPolynomial;
use rootca::predicates::{Algorithm, Predicate};

/// 1D suite: Wilkinson n <= 8, Mignotte d <= 12, Chebyshev n <= 10, random d <= 12 with L <= 16.
pub fn suite_1d() -> Vec<Family> {
    let mut v: Vec<Family> = (1..=8).map(|n| Family::Wilkinson { n }).collect();
    for d in 3..=12 {
        v.push(Family::Mignotte { d, a: rootca::harness::mignotte_a_for_height(8) });
    }
    for d in [3, 5, 8] {
        v.push(Family::Mignotte { d, a: rootca::harness::mignotte_a_for_height(14) });
    }
    v.extend((1..=10).map(|n| Family::Chebyshev { n }));
    let mut seed = 0;
    for d in [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12] {
        for l in [4, 16] {
            v.push(Family::Random { d, l, seed });
            seed += 1;
        }
    }
    v
}

/// 2D suite: d <= 8, L <= 8, every member with a square-free derivative.
pub fn suite_2d() -> Vec<Family> {
    let mut v: Vec<Family> = (1..=4).map(|n| Family::Wilkinson { n }).collect();
    v.extend((2..=8).map(|n| Family::Chebyshev { n }));
    for d in 3..=6 {
        v.push(Family::Mignotte { d, a: rootca::harness::mignotte_a_for_height(4) });
    }
    let mut seed = 1000;
    for d in 2..=8 {
        for l in [3, 8] {
            // Skip draws whose derivative is not square-free.
            loop {
                let f = Family::Random { d, l, seed };
                seed += 1;
                let p = gen_family(&f).unwrap();
                if p.derivative().is_square_free() {
                    v.push(f);
                    break;
                }
            }
        }
    }
    v.retain(|f| {
        let p = gen_family(f).unwrap();
        p.bit_height() <= 8 && p.derivative().is_square_free()
    });
    v
}

/// Uniform dyadic with `bits` fractional bits in `[lo, hi]`.
pub fn dyadic_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64, bits: i64) -> Dyadic {
    let scale = 2f64.powi(bits as i32);
    let (a, b) = ((lo * scale).ceil() as i64, (hi * scale).floor() as i64);
    Dyadic::new(rng.gen_range(a..=b).into(), -bits)
}

pub fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

/// Random square-free integer polynomial of degree `d` with coefficients in `[-m, m]`
/// that the predicate accepts.
pub fn random_poly_for(rng: &mut ChaCha8Rng, id: Algorithm, d: usize, m: i64) -> IntPolynomial {
    loop {
        let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-m..=m)).collect();
        if c[d] == 0 {
            c[d] = 1;
        }
        let p = IntPolynomial::from_i64s(&c);
        if Predicate::new(id, &p).is_ok() {
            return p;
        }
    }
}

pub fn point(x: &Dyadic, y: &Dyadic) -> DyadicComplex {
    DyadicComplex::new(x.clone(), y.clone())
}
