use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::exactnum::Dyadic;
use crate::roots::{CertifiedRoot, RootSet};
use crate::subdivide::Interval;

/// Exact range of `t^2` for `t` in `[lo, hi]`.
fn sq_range(lo: &Dyadic, hi: &Dyadic) -> (Dyadic, Dyadic) {
    let (a, b) = (lo.square(), hi.square());
    let top = a.clone().max_with(&b);
    if lo.signum() <= 0 && hi.signum() >= 0 {
        (Dyadic::zero(), top)
    } else {
        (a.min_with(&b), top)
    }
}

/// Box `[x-r, x+r] x [y-r, y+r]` around a root relative to `m`; real roots keep y = 0.
fn root_box(root: &CertifiedRoot, m: &Dyadic) -> (Dyadic, Dyadic, Dyadic, Dyadic) {
    let r = &root.radius;
    let u = &root.center.re - m;
    let (ylo, yhi) = if root.is_real { (Dyadic::zero(), Dyadic::zero()) } else { (&root.center.im - r, &root.center.im + r) };
    (&u - r, &u + r, ylo, yhi)
}

/// `Some(true)` if the root is in the open disk of diameter `j`, `Some(false)` if outside.
fn in_one_circle(root: &CertifiedRoot, j: &Interval) -> Option<bool> {
    let (ulo, uhi, ylo, yhi) = root_box(root, &j.mid());
    let rad_sq = j.width().half().square();
    let (u2lo, u2hi) = sq_range(&ulo, &uhi);
    let (y2lo, y2hi) = sq_range(&ylo, &yhi);
    if &u2hi + &y2hi < rad_sq {
        Some(true)
    } else if &u2lo + &y2lo >= rad_sq {
        Some(false)
    } else {
        None
    }
}

/// Same for the union of the two disks through the endpoints of `j` centered at
/// `m ± i w/(2 sqrt3)`. With `u = x - m`, a point is inside iff
/// `u^2 + y^2 - w^2/4 < |y| w / sqrt3`.
fn in_two_circle(root: &CertifiedRoot, j: &Interval) -> Option<bool> {
    let (ulo, uhi, ylo, yhi) = root_box(root, &j.mid());
    let w = j.width();
    let q = w.half().square();
    let (u2lo, u2hi) = sq_range(&ulo, &uhi);
    let (y2lo, y2hi) = sq_range(&ylo, &yhi);
    let l_lo = &(&u2lo + &y2lo) - &q;
    let l_hi = &(&u2hi + &y2hi) - &q;
    let w2 = w.square();
    let three = Dyadic::from(3);
    if l_hi.is_negative() {
        return Some(true);
    }
    if !l_lo.is_negative() {
        if &three * &l_hi.square() < &y2lo * &w2 {
            return Some(true);
        }
        if &three * &l_lo.square() >= &y2hi * &w2 {
            return Some(false);
        }
    }
    None
}

/// Counts roots satisfying `test`, refining the enclosures until every root is decided.
fn count_with(rs: &RootSet, test: impl Fn(&CertifiedRoot) -> Option<bool>) -> Result<usize> {
    let mut cur: Cow<RootSet> = Cow::Borrowed(rs);
    let mut pending: Vec<usize> = (0..rs.roots.len()).collect();
    let mut count = 0;
    loop {
        let mut still = Vec::new();
        for &i in &pending {
            match test(&cur.roots[i]) {
                Some(true) => count += 1,
                Some(false) => {}
                None => still.push(i),
            }
        }
        if still.is_empty() {
            return Ok(count);
        }
        pending = still;
        cur = Cow::Owned(cur.refined().map_err(|_| Error::resource("root on circle boundary undecidable at maximum precision"))?);
    }
}

/// The open disk with diameter `j` holds no root.
pub fn one_circle_holds(rs: &RootSet, j: &Interval) -> Result<bool> {
    Ok(count_with(rs, |r| in_one_circle(r, j))? == 0)
}

/// The union of the two disks circumscribing the equilateral triangles on `j` holds exactly one root.
pub fn two_circle_holds(rs: &RootSet, j: &Interval) -> Result<bool> {
    Ok(count_with(rs, |r| in_two_circle(r, j))? == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::IntPolynomial;
    use crate::roots::root_set;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(Dyadic::from_f64(a).unwrap(), Dyadic::from_f64(b).unwrap()).unwrap()
    }

    fn rs(c: &[i64]) -> RootSet {
        root_set(&IntPolynomial::from_i64s(c)).unwrap()
    }

    #[test]
    fn circle_examples() {
        assert!(one_circle_holds(&rs(&[1, 0, 1]), &iv(-0.5, 0.5)).unwrap());
        assert!(two_circle_holds(&rs(&[-2, 0, 1]), &iv(1.3, 1.5)).unwrap());
        assert!(!one_circle_holds(&rs(&[-1, 0, 1]), &iv(-2.0, 2.0)).unwrap());
    }

    #[test]
    fn boundary_points_are_outside() {
        // Roots ±1 sit on the circle with diameter [-1, 1].
        assert!(one_circle_holds(&rs(&[-1, 0, 1]), &iv(-1.0, 1.0)).unwrap());
        // The endpoints of J lie on both two-circle boundaries.
        assert!(!two_circle_holds(&rs(&[-2, 1]), &iv(0.0, 2.0)).unwrap());
        assert!(two_circle_holds(&rs(&[-1, 1]), &iv(0.0, 2.0)).unwrap());
        assert!(!two_circle_holds(&rs(&[-3, 1]), &iv(0.0, 2.0)).unwrap());
    }
}
