use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicComplex};

/// Real interval with dyadic endpoints. Predicates treat it as open; roots
/// that land exactly on a bisection point are recorded by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo >= hi {
            return Err(Error::domain("interval needs lo < hi"));
        }
        Ok(Interval { lo, hi })
    }

    /// `[-2^l, 2^l]`.
    pub fn benchmark(l: u64) -> Self {
        let b = Dyadic::pow2(l as i64);
        Interval { lo: -&b, hi: b }
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Dyadic {
        (&self.lo + &self.hi).half()
    }

    pub fn bisect(&self) -> [Interval; 2] {
        let m = self.mid();
        [Interval { lo: self.lo.clone(), hi: m.clone() }, Interval { lo: m, hi: self.hi.clone() }]
    }
}

/// Half-open square `[x0, x1) × (y0, y1]` in the complex plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Square {
    pub x0: Dyadic,
    pub x1: Dyadic,
    pub y0: Dyadic,
    pub y1: Dyadic,
}

impl Square {
    pub fn new(x0: Dyadic, x1: Dyadic, y0: Dyadic, y1: Dyadic) -> Result<Self> {
        if x0 >= x1 || y0 >= y1 || &x1 - &x0 != &y1 - &y0 {
            return Err(Error::domain("square needs equal positive side lengths"));
        }
        Ok(Square { x0, x1, y0, y1 })
    }

    /// `[-2^l, 2^l) × (-2^l, 2^l]`.
    pub fn benchmark(l: u64) -> Self {
        let b = Dyadic::pow2(l as i64);
        Square { x0: -&b, x1: b.clone(), y0: -&b, y1: b }
    }

    /// Square of side `w` centered at `c`.
    pub fn centered(c: &DyadicComplex, w: &Dyadic) -> Self {
        let h = w.half();
        Square { x0: &c.re - &h, x1: &c.re + &h, y0: &c.im - &h, y1: &c.im + &h }
    }

    pub fn width(&self) -> Dyadic {
        &self.x1 - &self.x0
    }

    pub fn area(&self) -> Dyadic {
        self.width().square()
    }

    pub fn mid(&self) -> DyadicComplex {
        DyadicComplex::new((&self.x0 + &self.x1).half(), (&self.y0 + &self.y1).half())
    }

    /// Membership under the half-open convention.
    pub fn contains(&self, z: &DyadicComplex) -> bool {
        self.x0 <= z.re && z.re < self.x1 && self.y0 < z.im && z.im <= self.y1
    }

    /// Children in the order SW, SE, NW, NE.
    pub fn bisect(&self) -> [Square; 4] {
        let m = self.mid();
        let q = |x0: &Dyadic, x1: &Dyadic, y0: &Dyadic, y1: &Dyadic| Square { x0: x0.clone(), x1: x1.clone(), y0: y0.clone(), y1: y1.clone() };
        [
            q(&self.x0, &m.re, &self.y0, &m.im),
            q(&m.re, &self.x1, &self.y0, &m.im),
            q(&self.x0, &m.re, &m.im, &self.y1),
            q(&m.re, &self.x1, &m.im, &self.y1),
        ]
    }
}

/// A 1D interval or a 2D square.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    Interval(Interval),
    Square(Square),
}

impl Region {
    pub fn dim(&self) -> usize {
        match self {
            Region::Interval(_) => 1,
            Region::Square(_) => 2,
        }
    }

    pub fn width(&self) -> Dyadic {
        match self {
            Region::Interval(i) => i.width(),
            Region::Square(s) => s.width(),
        }
    }

    pub fn bisect(&self) -> Vec<Region> {
        match self {
            Region::Interval(i) => i.bisect().into_iter().map(Region::Interval).collect(),
            Region::Square(s) => s.bisect().into_iter().map(Region::Square).collect(),
        }
    }

    /// One-line rendering with exact `m*2^e` endpoints.
    pub fn dump(&self) -> String {
        match self {
            Region::Interval(i) => format!("[{}, {}]", i.lo, i.hi),
            Region::Square(s) => format!("[{}, {}) x ({}, {}]", s.x0, s.x1, s.y0, s.y1),
        }
    }
}

/// Splits a region into its children (2 in 1D, 4 in 2D).
pub fn bisect(r: &Region) -> Vec<Region> {
    r.bisect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(m: i64, e: i64) -> Dyadic {
        Dyadic::new(num_bigint::BigInt::from(m), e)
    }

    #[test]
    fn interval_bisection() {
        let i = Interval::new(Dyadic::zero(), Dyadic::one()).unwrap();
        let [a, b] = i.bisect();
        assert_eq!((a.lo, a.hi.clone(), b.lo, b.hi), (Dyadic::zero(), q(1, -1), q(1, -1), Dyadic::one()));
        let [a, b] = Interval::new(Dyadic::zero(), q(1, -2)).unwrap().bisect();
        assert_eq!((a.hi, b.lo), (q(1, -3), q(1, -3)));
    }

    #[test]
    fn square_bisection_partitions() {
        let s = Square::benchmark(1);
        let kids = s.bisect();
        assert!(kids.iter().all(|k| k.width() == Dyadic::from(2)));
        // Every lattice point of the parent lies in exactly one child.
        for a in -8..=8 {
            for b in -8..=8 {
                let z = DyadicComplex::new(q(a, -2), q(b, -2));
                let n = kids.iter().filter(|k| k.contains(&z)).count();
                assert_eq!(n, usize::from(s.contains(&z)));
            }
        }
    }
}
