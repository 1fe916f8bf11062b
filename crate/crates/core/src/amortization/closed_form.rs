use crate::error::{Error, Result};
use crate::exactnum::RealEnclosure;
use crate::interval::Fi;
use crate::roots::{CertifiedRoot, RootSet};

fn two_pow(l: u64) -> Fi {
    Fi::point(2f64.powi(l as i32))
}

/// Exact value of `∫ 2 dx / dist_2(x)` over `[-2^L, 2^L]` from the piecewise
/// antiderivative. Between consecutive second-order breakpoints the two
/// nearest roots are a fixed adjacent pair `(a_i, a_{i+1})`.
pub fn sturm_closed_form_bound(rs: &RootSet, l: u64) -> Result<RealEnclosure> {
    let xs: Vec<Fi> = rs.real_roots().iter().map(|r| r.fbox().0).collect();
    let k = xs.len();
    if k < 2 {
        return Err(Error::domain("closed form needs at least two real roots"));
    }
    let bound = two_pow(l);
    if xs.iter().any(|x| x.lo <= -bound.hi || x.hi >= bound.hi) {
        return Err(Error::domain("roots must lie inside the benchmark interval"));
    }
    let half = Fi::point(0.5);
    let two = Fi::point(2.0);
    let mut total = Fi::point(0.0);
    for i in 0..k - 1 {
        let (a, b) = (xs[i], xs[i + 1]);
        let gap_half = (b - a) * half;
        // Left end: the breakpoint with the previous root, or the interval end.
        let left = if i == 0 { -bound } else { (xs[i - 1] + b) * half };
        let right = if i + 2 == k { bound } else { (a + xs[i + 2]) * half };
        total = total + two * ((b - left) / gap_half).ln() + two * ((right - a) / gap_half).ln();
    }
    RealEnclosure::from_fi(total)
}

/// Lower bounds on the distance from each root to its nearest other root; `None` when alone.
fn separations(roots: &[CertifiedRoot]) -> Vec<Option<Fi>> {
    let bx: Vec<(Fi, Fi)> = roots.iter().map(|r| r.fbox()).collect();
    (0..bx.len())
        .map(|i| {
            (0..bx.len())
                .filter(|&j| j != i)
                .map(|j| ((bx[i].0 - bx[j].0).sqr() + (bx[i].1 - bx[j].1).sqr()).sqrt())
                .reduce(|a, b| a.min(b))
        })
        .collect()
}

/// `ln(sqrt2 * 2^(L+1)) - ln(d/2)` with `d` at its lower end.
fn log_ratio(l: u64, d: Fi) -> Fi {
    let outer = Fi::sqrt2() * two_pow(l + 1);
    (outer / (Fi::point(d.lo.max(f64::MIN_POSITIVE)) * Fi::point(0.5))).ln()
}

/// `sum_i 16 pi (ln(sqrt2 2^(L+1)) - ln(d_i / 2))`.
pub fn csturm_annulus_bound(rs: &RootSet, l: u64) -> Result<RealEnclosure> {
    if rs.degree() < 2 {
        return Err(Error::domain("annulus bound needs degree at least 2"));
    }
    let c = Fi::point(16.0) * Fi::pi();
    let total = separations(&rs.roots).into_iter().flatten().fold(Fi::point(0.0), |acc, d| acc + c * log_ratio(l, d));
    RealEnclosure::from_fi(total)
}

/// `sum_{p roots} 36 d pi (...) + sum_{p' roots} 7056 d pi (...)`, with separations
/// taken among all roots of `p p'`. A root with no other root contributes nothing.
pub fn sqfree_ceval_annulus_bound(rs_p: &RootSet, rs_dp: &RootSet, l: u64) -> Result<RealEnclosure> {
    let d = rs_p.degree();
    if rs_dp.degree() + 1 != d && !(d == 1 && rs_dp.roots.is_empty()) {
        return Err(Error::domain("second root set must belong to the derivative"));
    }
    let universe: Vec<CertifiedRoot> = rs_p.roots.iter().chain(rs_dp.roots.iter()).cloned().collect();
    let seps = separations(&universe);
    let df = Fi::point(d as f64);
    let (cp, cdp) = (Fi::point(36.0) * df * Fi::pi(), Fi::point(7056.0) * df * Fi::pi());
    let mut total = Fi::point(0.0);
    for (i, s) in seps.into_iter().enumerate() {
        if let Some(s) = s {
            let c = if i < rs_p.roots.len() { cp } else { cdp };
            total = total + c * log_ratio(l, s);
        }
    }
    RealEnclosure::from_fi(total)
}
