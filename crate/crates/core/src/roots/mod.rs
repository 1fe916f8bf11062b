//! Certified complex root enclosures and root-geometry queries.

mod aberth;
mod certify;
mod geometry;

pub use aberth::{aberth_dyadic, aberth_f64};
pub use certify::{certify_disk, disk_has_single_root};
pub use geometry::{build_graph, cell_index, dist_and_dist2, pp_universe, GraphKind};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicComplex, RealEnclosure, Round};
use crate::interval::Fi;
use crate::polynomial::{sturm_chain, IntPolynomial};

/// Highest working precision tried before giving up.
pub const MAX_ROOT_PRECISION: u32 = 8192;
/// Radius target used when callers do not ask for one.
pub const DEFAULT_EPS_LOG2: i64 = -64;

/// Disk known to hold exactly one root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedRoot {
    pub center: DyadicComplex,
    pub radius: Dyadic,
    pub is_real: bool,
}

impl CertifiedRoot {
    /// f64 box `re × im` containing the root.
    pub fn fbox(&self) -> (Fi, Fi) {
        let re = RealEnclosure { lo: &self.center.re - &self.radius, hi: &self.center.re + &self.radius }.to_fi();
        let im = if self.is_real {
            Fi::point(0.0)
        } else {
            RealEnclosure { lo: &self.center.im - &self.radius, hi: &self.center.im + &self.radius }.to_fi()
        };
        (re, im)
    }

    /// Exact real root when the disk has zero radius or the root is real with zero radius.
    pub fn exact_point(&self) -> Option<&DyadicComplex> {
        if self.radius.is_zero() { Some(&self.center) } else { None }
    }
}

/// All roots of a square-free polynomial, certified and pairwise disjoint.
/// Real roots come first in ascending order; each non-real root in the upper
/// half-plane is immediately followed by its conjugate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootSet {
    pub poly: IntPolynomial,
    pub roots: Vec<CertifiedRoot>,
    pub pairing: Vec<Option<usize>>,
    /// Distance from each root to its nearest distinct root (`None` for degree 1).
    pub separations: Vec<Option<RealEnclosure>>,
    pub num_real: usize,
    pub precision: u32,
}

impl RootSet {
    /// Root set of a constant polynomial (no roots).
    pub fn empty(p: &IntPolynomial) -> Self {
        RootSet { poly: p.clone(), roots: vec![], pairing: vec![], separations: vec![], num_real: 0, precision: 0 }
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn real_roots(&self) -> &[CertifiedRoot] {
        &self.roots[..self.num_real]
    }

    /// Recomputes at a higher precision with smaller radii, keeping root indices.
    pub fn refined(&self) -> Result<RootSet> {
        let prec = (self.precision * 2).max(256);
        if prec > MAX_ROOT_PRECISION {
            return Err(Error::resource("root refinement exceeded maximum precision"));
        }
        let eps_log2 = -((prec / 2) as i64);
        let fresh = approximate_roots_from(&self.poly, &Dyadic::pow2(eps_log2), prec)?;
        let mut order = vec![usize::MAX; self.roots.len()];
        for (j, nr) in fresh.roots.iter().enumerate() {
            let i = self
                .roots
                .iter()
                .position(|old| (&nr.center - &old.center).norm_sq() <= old.radius.square())
                .ok_or_else(|| Error::resource("refined root does not match any previous disk"))?;
            order[i] = j;
        }
        if order.contains(&usize::MAX) {
            return Err(Error::resource("refined root set does not match previous disks"));
        }
        let roots = order.iter().map(|&j| fresh.roots[j].clone()).collect();
        let separations = order.iter().map(|&j| fresh.separations[j].clone()).collect();
        Ok(RootSet { poly: self.poly.clone(), roots, pairing: self.pairing.clone(), separations, num_real: self.num_real, precision: fresh.precision })
    }
}

/// Certified enclosures of all roots with radius at most `eps`.
pub fn approximate_roots(p: &IntPolynomial, eps: &Dyadic) -> Result<RootSet> {
    approximate_roots_from(p, eps, 128)
}

/// Root set with the default radius target.
pub fn root_set(p: &IntPolynomial) -> Result<RootSet> {
    approximate_roots(p, &Dyadic::pow2(DEFAULT_EPS_LOG2))
}

fn approximate_roots_from(p: &IntPolynomial, eps: &Dyadic, start_prec: u32) -> Result<RootSet> {
    if p.degree().unwrap_or(0) < 1 {
        return Err(Error::domain("root approximation needs degree >= 1"));
    }
    if !p.is_square_free() {
        return Err(Error::NotSquareFree);
    }
    let d = p.deg();
    let k = sturm_chain(p)?.count_real_roots();
    let mut z: Vec<DyadicComplex> = aberth_f64(p, 500)
        .into_iter()
        .map(|(a, b)| DyadicComplex::from_f64(a, b).unwrap_or_else(DyadicComplex::zero))
        .collect();
    let grid = -(p.lead().trailing_zeros().unwrap_or(0) as i64);
    let mut prec = start_prec;
    while prec <= MAX_ROOT_PRECISION {
        aberth_dyadic(p, &mut z, prec, 60);
        if let Some(rs) = try_certify(p, &z, k, grid, prec, eps) {
            return Ok(rs);
        }
        prec *= 2;
        if d == 0 {
            break;
        }
    }
    Err(Error::resource("root certification failed at maximum precision"))
}

fn try_certify(p: &IntPolynomial, z: &[DyadicComplex], k: usize, grid: i64, prec: u32, eps: &Dyadic) -> Option<RootSet> {
    let d = z.len();
    let mut idx: Vec<usize> = (0..d).collect();
    idx.sort_by(|&a, &b| z[a].im.abs().cmp(&z[b].im.abs()));
    let mut real: Vec<DyadicComplex> = idx[..k].iter().map(|&i| DyadicComplex::real(z[i].re.clone())).collect();
    let upper: Vec<DyadicComplex> = idx[k..].iter().filter(|&&i| z[i].im.is_positive()).map(|&i| z[i].clone()).collect();
    let lower = idx[k..].iter().filter(|&&i| z[i].im.is_negative()).count();
    if upper.len() != lower || 2 * upper.len() + k != d {
        return None;
    }
    // Only snap when the approximation already agrees with the grid point;
    // a coarse grid can otherwise land on a different exact root.
    let near = Dyadic::pow2(-(prec as i64) / 2);
    let snap = |c: &DyadicComplex| -> DyadicComplex {
        let g = c.round_grid(grid);
        if (&g - c).norm_sq() <= near && p.eval_complex(&g).is_zero() { g } else { c.clone() }
    };
    for c in real.iter_mut() {
        *c = snap(c);
    }
    let mut upper: Vec<DyadicComplex> = upper.iter().map(snap).collect();
    real.sort_by(|a, b| a.re.cmp(&b.re));
    upper.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));

    let mut roots = Vec::with_capacity(d);
    let mut pairing = Vec::with_capacity(d);
    for c in real {
        let r = certify_disk(p, &c, prec)?;
        roots.push(CertifiedRoot { center: c, radius: r, is_real: true });
        pairing.push(None);
    }
    for c in upper {
        if !c.im.is_positive() {
            return None;
        }
        let r = certify_disk(p, &c, prec)?;
        if r >= c.im {
            return None;
        }
        let i = roots.len();
        roots.push(CertifiedRoot { center: c.clone(), radius: r.clone(), is_real: false });
        roots.push(CertifiedRoot { center: c.conj(), radius: r, is_real: false });
        pairing.push(Some(i + 1));
        pairing.push(Some(i));
    }
    if roots.iter().any(|r| &r.radius > eps) {
        return None;
    }
    for i in 0..d {
        for j in i + 1..d {
            let gap = (&roots[i].center - &roots[j].center).norm_sq();
            if (&roots[i].radius + &roots[j].radius).square() >= gap {
                return None;
            }
        }
    }
    let separations = (0..d)
        .map(|i| {
            (0..d)
                .filter(|&j| j != i)
                .map(|j| {
                    let g = (&roots[i].center - &roots[j].center).norm_sq();
                    let rr = &roots[i].radius + &roots[j].radius;
                    let lo = &g.sqrt_round(128, Round::Down) - &rr;
                    RealEnclosure { lo: lo.max_with(&Dyadic::zero()), hi: &g.sqrt_round(128, Round::Up) + &rr }
                })
                .reduce(|a, b| RealEnclosure { lo: a.lo.min_with(&b.lo), hi: a.hi.min_with(&b.hi) })
        })
        .collect();
    Some(RootSet { poly: p.clone(), roots, pairing, separations, num_real: k, precision: prec })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn sqrt_two() {
        let rs = approximate_roots(&p(&[-2, 0, 1]), &Dyadic::pow2(-30)).unwrap();
        assert_eq!(rs.num_real, 2);
        let s = std::f64::consts::SQRT_2;
        assert!((rs.roots[0].center.re.to_f64() + s).abs() < 1e-9);
        assert!((rs.roots[1].center.re.to_f64() - s).abs() < 1e-9);
        assert!(rs.roots.iter().all(|r| r.radius <= Dyadic::pow2(-30)));
    }

    #[test]
    fn imaginary_unit_is_exact() {
        let rs = root_set(&p(&[1, 0, 1])).unwrap();
        assert_eq!(rs.num_real, 0);
        assert_eq!(rs.roots[0].center, DyadicComplex::i());
        assert_eq!(rs.roots[1].center, DyadicComplex::i().conj());
        assert!(rs.roots[0].radius.is_zero());
        assert_eq!(rs.pairing, vec![Some(1), Some(0)]);
    }

    #[test]
    fn integer_roots_snap() {
        let rs = root_set(&p(&[-6, 11, -6, 1])).unwrap();
        let c: Vec<Dyadic> = rs.roots.iter().map(|r| r.center.re.clone()).collect();
        assert_eq!(c, vec![Dyadic::from(1), Dyadic::from(2), Dyadic::from(3)]);
        assert!(rs.roots.iter().all(|r| r.radius.is_zero()));
    }

    #[test]
    fn distant_roots_do_not_snap_onto_zero() {
        // x(7x^2 + 1) and x(7x^2 - 1): the coarse grid rounds the other roots to 0.
        for c in [[0, 1, 0, 7], [0, -1, 0, 7]] {
            let rs = root_set(&p(&c)).unwrap();
            let zeros = rs.roots.iter().filter(|r| r.center == DyadicComplex::zero()).count();
            assert_eq!(zeros, 1);
            assert!(rs.roots.iter().all(|r| r.center.norm_sq() == Dyadic::zero() || r.center.norm_sq().to_f64() > 0.1));
        }
    }

    #[test]
    fn rejects_squares_and_refines() {
        assert_eq!(root_set(&p(&[1, -2, 1])).unwrap_err(), Error::NotSquareFree);
        let rs = root_set(&p(&[-2, 0, 0, 1, 1])).unwrap();
        let fine = rs.refined().unwrap();
        for (a, b) in rs.roots.iter().zip(&fine.roots) {
            assert!(b.radius <= a.radius);
            assert!((&a.center - &b.center).norm_sq() <= a.radius.square());
        }
    }
}
