//! Simultaneous root iteration (Aberth–Ehrlich) in f64 and in rounded dyadic arithmetic.

use num_traits::ToPrimitive;

use crate::exactnum::{Dyadic, DyadicComplex};
use crate::polynomial::IntPolynomial;

#[derive(Clone, Copy, Debug, PartialEq)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64 { re: self.re + o.re, im: self.im + o.im }
    }
    fn sub(self, o: C64) -> C64 {
        C64 { re: self.re - o.re, im: self.im - o.im }
    }
    fn mul(self, o: C64) -> C64 {
        C64 { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
    fn div(self, o: C64) -> C64 {
        let n = o.re * o.re + o.im * o.im;
        C64 { re: (self.re * o.re + self.im * o.im) / n, im: (self.im * o.re - self.re * o.im) / n }
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// f64 Aberth iteration from points on a perturbed circle.
pub fn aberth_f64(p: &IntPolynomial, max_iter: usize) -> Vec<(f64, f64)> {
    let d = p.deg();
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect();
    let dc: Vec<f64> = (1..=d).map(|i| c[i] * i as f64).collect();
    let lead = c[d].abs();
    // Fujiwara-type radius for the starting circle.
    let radius = (0..d)
        .map(|i| (c[i].abs() / lead).powf(1.0 / (d - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<C64> = (0..d)
        .map(|j| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.4;
            C64 { re: radius * t.cos(), im: radius * t.sin() }
        })
        .collect();
    let horner = |cs: &[f64], x: C64| cs.iter().rev().fold(C64 { re: 0.0, im: 0.0 }, |acc, &k| acc.mul(x).add(C64 { re: k, im: 0.0 }));
    let mut done = vec![false; d];
    for _ in 0..max_iter {
        let mut moved = false;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let pv = horner(&c, z[i]);
            let dv = horner(&dc, z[i]);
            if pv.abs() == 0.0 {
                done[i] = true;
                continue;
            }
            let n = pv.div(dv);
            let mut s = C64 { re: 0.0, im: 0.0 };
            for j in 0..d {
                if j != i {
                    s = s.add(C64 { re: 1.0, im: 0.0 }.div(z[i].sub(z[j])));
                }
            }
            let w = n.div(C64 { re: 1.0, im: 0.0 }.sub(n.mul(s)));
            if !(w.re.is_finite() && w.im.is_finite()) {
                continue;
            }
            z[i] = z[i].sub(w);
            if w.abs() <= 1e-15 * z[i].abs().max(1e-300) {
                done[i] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    z.into_iter().map(|c| (c.re, c.im)).collect()
}

fn round_c(z: &DyadicComplex, prec: u32) -> DyadicComplex {
    z.round(prec)
}

/// Aberth iteration with every intermediate rounded to `prec` bits. Returns
/// the largest correction magnitude (as f64) from the last sweep.
pub fn aberth_dyadic(p: &IntPolynomial, z: &mut [DyadicComplex], prec: u32, max_iter: usize) -> f64 {
    let dp = p.derivative();
    let d = z.len();
    let one = DyadicComplex::one();
    let mut last = f64::INFINITY;
    for _ in 0..max_iter {
        let mut worst = 0.0f64;
        let mut worst_rel = 0.0f64;
        for i in 0..d {
            let pv = p.eval_complex(&z[i]);
            if pv.is_zero() {
                continue;
            }
            let dv = dp.eval_complex(&z[i]);
            if dv.is_zero() {
                // Nudge off a critical point.
                z[i] = &z[i] + &DyadicComplex::new(Dyadic::pow2(-(prec as i64) / 4), Dyadic::pow2(-(prec as i64) / 4));
                worst = f64::INFINITY;
                continue;
            }
            let n = round_c(&pv.div_approx(&dv, prec), prec);
            let mut s = DyadicComplex::zero();
            for j in 0..d {
                if j != i {
                    let diff = &z[i] - &z[j];
                    if diff.is_zero() {
                        continue;
                    }
                    s = round_c(&(&s + &one.div_approx(&diff, prec)), prec);
                }
            }
            let den = &one - &round_c(&(&n * &s), prec);
            let w = if den.is_zero() { n } else { n.div_approx(&den, prec) };
            z[i] = round_c(&(&z[i] - &w), prec);
            let (wr, wi) = w.to_f64();
            let mag = wr.hypot(wi);
            let (zr, zi) = z[i].to_f64();
            worst = worst.max(mag);
            worst_rel = worst_rel.max(mag / zr.hypot(zi).max(f64::MIN_POSITIVE));
        }
        last = worst;
        if worst_rel < 2f64.powi(-(prec as i32) + 8) || worst == 0.0 {
            break;
        }
    }
    last
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_iteration_finds_simple_roots() {
        let p = IntPolynomial::from_i64s(&[-6, 11, -6, 1]);
        let mut r: Vec<f64> = aberth_f64(&p, 200).into_iter().map(|(re, _)| re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - want).abs() < 1e-10);
        }
    }

    #[test]
    fn dyadic_iteration_sharpens() {
        let p = IntPolynomial::from_i64s(&[-2, 0, 1]);
        let mut z: Vec<DyadicComplex> = aberth_f64(&p, 100).into_iter().map(|(a, b)| DyadicComplex::from_f64(a, b).unwrap()).collect();
        aberth_dyadic(&p, &mut z, 200, 20);
        for zi in &z {
            let v = p.eval_complex(zi);
            assert!(v.norm_sq() < Dyadic::pow2(-300));
        }
    }
}
