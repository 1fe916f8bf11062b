//! Outward-rounded f64 intervals and interval-valued derivative jets.
//!
//! Every arithmetic result is widened by one ulp on each side, which keeps
//! enclosures sound under round-to-nearest. Transcendental functions are
//! widened by a few ulps to cover the libm error.

use std::ops::{Add, Div, Mul, Neg, Sub};

const LIBM_ULPS: u32 = 4;

fn dn(x: f64) -> f64 {
    if x.is_nan() { f64::NEG_INFINITY } else { x.next_down() }
}

fn up(x: f64) -> f64 {
    if x.is_nan() { f64::INFINITY } else { x.next_up() }
}

fn dn_k(mut x: f64, k: u32) -> f64 {
    for _ in 0..k {
        x = dn(x);
    }
    x
}

fn up_k(mut x: f64, k: u32) -> f64 {
    for _ in 0..k {
        x = up(x);
    }
    x
}

/// Product with the convention `0 * inf = 0`.
fn mul0(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 { 0.0 } else { a * b }
}

/// Closed interval `[lo, hi]` of f64 values (infinite ends allowed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fi {
    pub lo: f64,
    pub hi: f64,
}

impl Fi {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval with lo > hi: {lo} {hi}");
        Fi { lo, hi }
    }

    pub const fn point(x: f64) -> Self {
        Fi { lo: x, hi: x }
    }

    pub fn entire() -> Self {
        Fi { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    pub fn nonneg() -> Self {
        Fi { lo: 0.0, hi: f64::INFINITY }
    }

    /// Tight enclosure of a real constant given by its nearest f64.
    pub fn around(x: f64) -> Self {
        Fi { lo: dn(x), hi: up(x) }
    }

    pub fn widen(self, k: u32) -> Self {
        Fi { lo: dn_k(self.lo, k), hi: up_k(self.hi, k) }
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    pub fn is_finite(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn hull(self, o: Fi) -> Fi {
        Fi { lo: self.lo.min(o.lo), hi: self.hi.max(o.hi) }
    }

    /// Intersection; `None` when disjoint.
    pub fn meet(self, o: Fi) -> Option<Fi> {
        let lo = self.lo.max(o.lo);
        let hi = self.hi.min(o.hi);
        if lo <= hi { Some(Fi { lo, hi }) } else { None }
    }

    pub fn min(self, o: Fi) -> Fi {
        Fi { lo: self.lo.min(o.lo), hi: self.hi.min(o.hi) }
    }

    pub fn max(self, o: Fi) -> Fi {
        Fi { lo: self.lo.max(o.lo), hi: self.hi.max(o.hi) }
    }

    pub fn abs(self) -> Fi {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Fi { lo: 0.0, hi: self.hi.max(-self.lo) }
        }
    }

    pub fn sqr(self) -> Fi {
        let a = self.abs();
        Fi { lo: dn(a.lo * a.lo).max(0.0), hi: up(a.hi * a.hi) }
    }

    pub fn sqrt(self) -> Fi {
        let lo = if self.lo <= 0.0 { 0.0 } else { dn(self.lo.sqrt()).max(0.0) };
        let hi = if self.hi <= 0.0 { 0.0 } else { up(self.hi.sqrt()) };
        Fi { lo, hi }
    }

    pub fn recip(self) -> Fi {
        Fi::point(1.0) / self
    }

    /// Natural log; nonpositive parts map to `-inf`.
    pub fn ln(self) -> Fi {
        let f = |x: f64| if x <= 0.0 { f64::NEG_INFINITY } else { x.ln() };
        Fi { lo: dn_k(f(self.lo), LIBM_ULPS), hi: up_k(f(self.hi), LIBM_ULPS) }
    }

    pub fn exp(self) -> Fi {
        Fi { lo: dn_k(self.lo.exp(), LIBM_ULPS).max(0.0), hi: up_k(self.hi.exp(), LIBM_ULPS) }
    }

    pub fn asinh(self) -> Fi {
        Fi { lo: dn_k(self.lo.asinh(), LIBM_ULPS), hi: up_k(self.hi.asinh(), LIBM_ULPS) }
    }

    pub fn powi(self, n: u32) -> Fi {
        let mut r = Fi::point(1.0);
        for _ in 0..n {
            r = r * self;
        }
        r
    }

    pub fn scale(self, c: f64) -> Fi {
        self * Fi::point(c)
    }

    pub fn ln2() -> Fi {
        Fi::around(std::f64::consts::LN_2)
    }

    pub fn pi() -> Fi {
        Fi::around(std::f64::consts::PI)
    }

    pub fn sqrt2() -> Fi {
        Fi::point(2.0).sqrt()
    }

    pub fn sqrt3() -> Fi {
        Fi::point(3.0).sqrt()
    }
}

impl Add for Fi {
    type Output = Fi;
    fn add(self, o: Fi) -> Fi {
        Fi { lo: dn(self.lo + o.lo), hi: up(self.hi + o.hi) }
    }
}

impl Sub for Fi {
    type Output = Fi;
    fn sub(self, o: Fi) -> Fi {
        Fi { lo: dn(self.lo - o.hi), hi: up(self.hi - o.lo) }
    }
}

impl Neg for Fi {
    type Output = Fi;
    fn neg(self) -> Fi {
        Fi { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Fi {
    type Output = Fi;
    fn mul(self, o: Fi) -> Fi {
        let c = [mul0(self.lo, o.lo), mul0(self.lo, o.hi), mul0(self.hi, o.lo), mul0(self.hi, o.hi)];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Fi { lo: dn(lo), hi: up(hi) }
    }
}

impl Div for Fi {
    type Output = Fi;
    fn div(self, o: Fi) -> Fi {
        if o.contains_zero() {
            return Fi::entire();
        }
        let q = |a: f64, b: f64| if a == 0.0 { 0.0 } else { a / b };
        let c = [q(self.lo, o.lo), q(self.lo, o.hi), q(self.hi, o.lo), q(self.hi, o.hi)];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Fi { lo: dn(lo), hi: up(hi) }
    }
}

/// Arithmetic shared by plain intervals and derivative jets, so formulas can
/// be written once and evaluated at either order.
pub trait Scalar: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> {
    fn cst(c: Fi) -> Self;
    fn value(&self) -> Fi;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn recip(&self) -> Self;
    fn sqr(&self) -> Self {
        self.clone() * self.clone()
    }
    fn scale(&self, c: Fi) -> Self {
        self.clone() * Self::cst(c)
    }
}

impl Scalar for Fi {
    fn cst(c: Fi) -> Self {
        c
    }
    fn value(&self) -> Fi {
        *self
    }
    fn sqrt(&self) -> Self {
        Fi::sqrt(*self)
    }
    fn ln(&self) -> Self {
        Fi::ln(*self)
    }
    fn recip(&self) -> Self {
        Fi::recip(*self)
    }
    fn sqr(&self) -> Self {
        Fi::sqr(*self)
    }
}

/// Value with first and second derivative in one variable.
#[derive(Debug, Clone, Copy)]
pub struct Jet1 {
    pub v: Fi,
    pub d1: Fi,
    pub d2: Fi,
}

impl Jet1 {
    pub fn var(x: Fi) -> Self {
        Jet1 { v: x, d1: Fi::point(1.0), d2: Fi::point(0.0) }
    }

    fn compose(self, f: Fi, f1: Fi, f2: Fi) -> Self {
        Jet1 { v: f, d1: f1 * self.d1, d2: f2 * self.d1.sqr() + f1 * self.d2 }
    }
}

impl Add for Jet1 {
    type Output = Jet1;
    fn add(self, o: Jet1) -> Jet1 {
        Jet1 { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

impl Sub for Jet1 {
    type Output = Jet1;
    fn sub(self, o: Jet1) -> Jet1 {
        Jet1 { v: self.v - o.v, d1: self.d1 - o.d1, d2: self.d2 - o.d2 }
    }
}

impl Mul for Jet1 {
    type Output = Jet1;
    fn mul(self, o: Jet1) -> Jet1 {
        Jet1 {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + (self.d1 * o.d1).scale(2.0) + self.v * o.d2,
        }
    }
}

impl Div for Jet1 {
    type Output = Jet1;
    fn div(self, o: Jet1) -> Jet1 {
        self * o.recip()
    }
}

impl Scalar for Jet1 {
    fn cst(c: Fi) -> Self {
        Jet1 { v: c, d1: Fi::point(0.0), d2: Fi::point(0.0) }
    }
    fn value(&self) -> Fi {
        self.v
    }
    fn sqrt(&self) -> Self {
        let s = self.v.sqrt();
        let f1 = Fi::point(0.5) / s;
        let f2 = Fi::point(-0.25) / (s * self.v);
        self.compose(s, f1, f2)
    }
    fn ln(&self) -> Self {
        let r = self.v.recip();
        self.compose(self.v.ln(), r, -r.sqr())
    }
    fn recip(&self) -> Self {
        let r = self.v.recip();
        let r2 = r.sqr();
        self.compose(r, -r2, (r2 * r).scale(2.0))
    }
}

/// Value, gradient and Hessian in two variables.
#[derive(Debug, Clone, Copy)]
pub struct Jet2 {
    pub v: Fi,
    pub gx: Fi,
    pub gy: Fi,
    pub hxx: Fi,
    pub hxy: Fi,
    pub hyy: Fi,
}

impl Jet2 {
    pub fn var_x(x: Fi) -> Self {
        Jet2 { v: x, gx: Fi::point(1.0), ..Self::cst(Fi::point(0.0)) }
    }

    pub fn var_y(y: Fi) -> Self {
        Jet2 { v: y, gy: Fi::point(1.0), ..Self::cst(Fi::point(0.0)) }
    }

    fn compose(self, f: Fi, f1: Fi, f2: Fi) -> Self {
        Jet2 {
            v: f,
            gx: f1 * self.gx,
            gy: f1 * self.gy,
            hxx: f2 * self.gx.sqr() + f1 * self.hxx,
            hxy: f2 * self.gx * self.gy + f1 * self.hxy,
            hyy: f2 * self.gy.sqr() + f1 * self.hyy,
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v + o.v,
            gx: self.gx + o.gx,
            gy: self.gy + o.gy,
            hxx: self.hxx + o.hxx,
            hxy: self.hxy + o.hxy,
            hyy: self.hyy + o.hyy,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v - o.v,
            gx: self.gx - o.gx,
            gy: self.gy - o.gy,
            hxx: self.hxx - o.hxx,
            hxy: self.hxy - o.hxy,
            hyy: self.hyy - o.hyy,
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        let two = |x: Fi| x.scale(2.0);
        Jet2 {
            v: self.v * o.v,
            gx: self.gx * o.v + self.v * o.gx,
            gy: self.gy * o.v + self.v * o.gy,
            hxx: self.hxx * o.v + two(self.gx * o.gx) + self.v * o.hxx,
            hxy: self.hxy * o.v + self.gx * o.gy + self.gy * o.gx + self.v * o.hxy,
            hyy: self.hyy * o.v + two(self.gy * o.gy) + self.v * o.hyy,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

impl Scalar for Jet2 {
    fn cst(c: Fi) -> Self {
        let z = Fi::point(0.0);
        Jet2 { v: c, gx: z, gy: z, hxx: z, hxy: z, hyy: z }
    }
    fn value(&self) -> Fi {
        self.v
    }
    fn sqrt(&self) -> Self {
        let s = self.v.sqrt();
        self.compose(s, Fi::point(0.5) / s, Fi::point(-0.25) / (s * self.v))
    }
    fn ln(&self) -> Self {
        let r = self.v.recip();
        self.compose(self.v.ln(), r, -r.sqr())
    }
    fn recip(&self) -> Self {
        let r = self.v.recip();
        let r2 = r.sqr();
        self.compose(r, -r2, (r2 * r).scale(2.0))
    }
}
