use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicComplex, RealEnclosure, Round};
use crate::interval::{Fi, Scalar};
use crate::polynomial::IntPolynomial;
use crate::predicates::Algorithm;
use crate::roots::{root_set, CertifiedRoot, RootSet};

/// Stopping function of one of the five algorithms, bound to a polynomial.
///
/// Roots of `p` come first in `roots` (real roots first, ascending), then the
/// roots of `p'` for the EVAL variants. In 1D the value bounds widths; in 2D it
/// bounds areas.
#[derive(Debug, Clone)]
pub struct StoppingFn {
    pub id: Algorithm,
    pub degree: usize,
    pub roots: Vec<CertifiedRoot>,
    pub n_p: usize,
    pub num_real: usize,
    /// Half-widths of the closed zones around real roots; `None` means the zone is the whole line.
    pub zones: Vec<Option<Dyadic>>,
    /// Smallest index among a root and its conjugate.
    pub twin: Vec<usize>,
    boxes: Vec<(Fi, Fi)>,
    zone_sq: Vec<Option<Fi>>,
}

/// Smooth closed form of `F` on a region where the piece is fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Shape {
    Infinite,
    /// `c * |x - a|` for one root
    Dist(Fi),
    /// `c * |x - a|^2` for one root
    DistSq(Fi),
    /// `c / sum 1/|x - a|`
    InvSigma(Fi),
    /// `c / sum 1/|x - a|^2`
    InvSigma2(Fi),
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Branch {
    pub shape: Shape,
    pub roots: Vec<usize>,
}

/// `|x - a|^2` over any scalar type.
pub(crate) fn sq_dist<S: Scalar>(x: &S, y: &S, a: (Fi, Fi)) -> S {
    let dx = x.clone() - S::cst(a.0);
    let dy = y.clone() - S::cst(a.1);
    dx.sqr() + dy.sqr()
}

impl Branch {
    /// `1/F` at `(x, y)`.
    pub fn recip_f<S: Scalar>(&self, x: &S, y: &S, boxes: &[(Fi, Fi)]) -> S {
        let d = |k: usize| sq_dist(x, y, boxes[k]);
        match self.shape {
            Shape::Infinite => S::cst(Fi::point(0.0)),
            Shape::Dist(c) => d(self.roots[0]).sqrt().scale(c).recip(),
            Shape::DistSq(c) => d(self.roots[0]).scale(c).recip(),
            Shape::InvSigma(c) => {
                let s = self.roots.iter().fold(S::cst(Fi::point(0.0)), |acc, &k| acc + d(k).sqrt().recip());
                s.scale(c.recip())
            }
            Shape::InvSigma2(c) => {
                let s = self.roots.iter().fold(S::cst(Fi::point(0.0)), |acc, &k| acc + d(k).recip());
                s.scale(c.recip())
            }
        }
    }

    /// `F` on a box; `+inf` for the infinite shape.
    pub fn value(&self, x: Fi, y: Fi, boxes: &[(Fi, Fi)]) -> Fi {
        match self.shape {
            Shape::Infinite => Fi::point(f64::INFINITY),
            Shape::Dist(c) => sq_dist(&x, &y, boxes[self.roots[0]]).sqrt() * c,
            Shape::DistSq(c) => sq_dist(&x, &y, boxes[self.roots[0]]) * c,
            _ => self.recip_f(&x, &y, boxes).recip(),
        }
    }
}

/// `|z - a|^2 - |z - b|^2` on a box, written linearly in `z` so that each
/// coordinate appears once and the enclosure stays tight when `a` and `b` are close.
fn sq_dist_diff(x: Fi, y: Fi, a: (Fi, Fi), b: (Fi, Fi)) -> Fi {
    let two = Fi::point(2.0);
    (a.0 - b.0) * (a.0 + b.0 - two * x) + (a.1 - b.1) * (a.1 + b.1 - two * y)
}

/// Indices in `eligible` that may be the `rank`-th nearest (0-based) on the box.
fn rank_candidates(x: Fi, y: Fi, boxes: &[(Fi, Fi)], eligible: &[usize], rank: usize) -> Vec<usize> {
    let n = eligible.len();
    let ds: Vec<Fi> = eligible.iter().map(|&k| sq_dist(&x, &y, boxes[k])).collect();
    (0..n)
        .filter(|&i| {
            let (mut below, mut above) = (0, 0);
            for j in (0..n).filter(|&j| j != i) {
                // Distance enclosures settle most pairs; the difference form is tighter near bisectors.
                let certain = if ds[j].hi < ds[i].lo {
                    Ordering::Less
                } else if ds[j].lo > ds[i].hi {
                    Ordering::Greater
                } else {
                    let diff = sq_dist_diff(x, y, boxes[eligible[j]], boxes[eligible[i]]);
                    if diff.hi < 0.0 {
                        Ordering::Less
                    } else if diff.lo > 0.0 {
                        Ordering::Greater
                    } else {
                        Ordering::Equal
                    }
                };
                match certain {
                    Ordering::Less => below += 1,
                    Ordering::Greater => above += 1,
                    Ordering::Equal => {}
                }
                if below > rank || above + rank >= n {
                    return false;
                }
            }
            true
        })
        .map(|i| eligible[i])
        .collect()
}

fn third() -> Fi {
    Fi::point(1.0) / Fi::point(3.0)
}

impl StoppingFn {
    pub fn new(id: Algorithm, p: &IntPolynomial) -> Result<Self> {
        if p.degree().unwrap_or(0) < 1 {
            return Err(Error::domain("polynomial must have degree at least 1"));
        }
        let rs = root_set(p)?;
        let dp = p.derivative();
        let rs_dp = match id {
            Algorithm::Eval | Algorithm::Ceval if dp.deg() > 0 => {
                if !dp.is_square_free() {
                    return Err(Error::NotSquareFree);
                }
                Some(root_set(&dp)?)
            }
            _ => None,
        };
        Ok(Self::from_roots(id, &rs, rs_dp.as_ref()))
    }

    /// Builds from precomputed root sets (`rs_dp` is required for EVAL variants with degree >= 2).
    pub fn from_roots(id: Algorithm, rs: &RootSet, rs_dp: Option<&RootSet>) -> Self {
        let mut roots = rs.roots.clone();
        let canon = |i: usize, p: &Option<usize>| p.map_or(i, |j| i.min(j));
        let mut twin: Vec<usize> = rs.pairing.iter().enumerate().map(|(i, p)| canon(i, p)).collect();
        if matches!(id, Algorithm::Eval | Algorithm::Ceval) {
            if let Some(r) = rs_dp {
                let off = roots.len();
                roots.extend(r.roots.iter().cloned());
                twin.extend(r.pairing.iter().enumerate().map(|(i, p)| off + canon(i, p)));
            }
        }
        let zones = if id == Algorithm::Descartes {
            let denom = &Dyadic::one() + &Dyadic::from(3).sqrt_round(64, Round::Up);
            rs.separations[..rs.num_real]
                .iter()
                .map(|s| s.as_ref().map(|s| Dyadic::div_round(&s.lo, &denom, 64, Round::Down)))
                .collect()
        } else {
            Vec::new()
        };
        let mut f = StoppingFn {
            id,
            degree: rs.degree(),
            roots,
            n_p: rs.roots.len(),
            num_real: rs.num_real,
            zones,
            twin,
            boxes: Vec::new(),
            zone_sq: Vec::new(),
        };
        f.prepare();
        f
    }

    fn prepare(&mut self) {
        self.boxes = self.roots.iter().map(|r| r.fbox()).collect();
        self.zone_sq = self.zones.iter().map(|z| z.as_ref().map(|z| RealEnclosure::point(z.square()).to_fi())).collect();
    }

    pub fn dim(&self) -> usize {
        self.id.dim()
    }

    pub(crate) fn boxes(&self) -> &[(Fi, Fi)] {
        &self.boxes
    }

    /// Candidate smooth pieces on the box `x × y`. One branch means the piece is fixed on the box.
    pub(crate) fn branches(&self, x: Fi, y: Fi) -> Vec<Branch> {
        let ds: Vec<Fi> = self.boxes.iter().map(|&b| sq_dist(&x, &y, b)).collect();
        // On the real axis a root and its conjugate are equidistant, so they give the same piece.
        let on_axis = y.lo == 0.0 && y.hi == 0.0;
        let single = |shape: Shape, mut ks: Vec<usize>| -> Vec<Branch> {
            if on_axis {
                ks.iter_mut().for_each(|k| *k = self.twin[*k]);
                ks.sort_unstable();
                ks.dedup();
            }
            ks.into_iter().map(|k| Branch { shape, roots: vec![k] }).collect()
        };
        let all_p: Vec<usize> = (0..self.n_p).collect();
        let out = match self.id {
            Algorithm::Sturm => {
                let real: Vec<usize> = (0..self.num_real).collect();
                if real.len() < 2 {
                    vec![Branch { shape: Shape::Infinite, roots: vec![] }]
                } else {
                    single(Shape::Dist(Fi::point(1.0)), rank_candidates(x, y, &self.boxes, &real, 1))
                }
            }
            Algorithm::Csturm => {
                if self.n_p < 2 {
                    vec![Branch { shape: Shape::Infinite, roots: vec![] }]
                } else {
                    single(Shape::DistSq(Fi::point(0.5)), rank_candidates(x, y, &self.boxes, &all_p, 1))
                }
            }
            Algorithm::Descartes => {
                let mut inside = false;
                let mut maybe = false;
                for (i, z) in self.zone_sq.iter().enumerate() {
                    match z {
                        None => inside = true,
                        Some(z) if ds[i].hi <= z.lo => inside = true,
                        Some(z) if ds[i].lo <= z.hi => maybe = true,
                        _ => {}
                    }
                }
                let zone = || {
                    if self.n_p < 2 {
                        vec![Branch { shape: Shape::Infinite, roots: vec![] }]
                    } else {
                        single(Shape::Dist(third().sqrt()), rank_candidates(x, y, &self.boxes, &all_p, 1))
                    }
                };
                let outside = || single(Shape::Dist(Fi::point(1.0)), rank_candidates(x, y, &self.boxes, &all_p, 0));
                if inside {
                    zone()
                } else if maybe {
                    let mut v = zone();
                    v.extend(outside());
                    v
                } else {
                    outside()
                }
            }
            Algorithm::Eval | Algorithm::Ceval => {
                let universe: Vec<usize> = (0..self.roots.len()).collect();
                rank_candidates(x, y, &self.boxes, &universe, 0).into_iter().map(|k| self.cell_branch(k)).collect()
            }
        };
        let mut unique: Vec<Branch> = Vec::with_capacity(out.len());
        for b in out {
            if !unique.contains(&b) {
                unique.push(b);
            }
        }
        unique
    }

    /// Piece of the EVAL variants on the Voronoi cell of root `k` of `p p'`.
    fn cell_branch(&self, k: usize) -> Branch {
        let d = Fi::point(self.degree as f64);
        let (c_p, c_dp) = if self.id == Algorithm::Eval {
            (Shape::InvSigma(Fi::point(2.0) * third()), Shape::InvSigma(Fi::point(2.0) * third()))
        } else {
            (Shape::InvSigma2((Fi::point(882.0) * d).recip()), Shape::InvSigma2(Fi::point(2.0) / (Fi::point(9.0) * d)))
        };
        if k < self.n_p {
            if self.roots.len() == self.n_p {
                Branch { shape: Shape::Infinite, roots: vec![] }
            } else {
                Branch { shape: c_p, roots: (self.n_p..self.roots.len()).collect() }
            }
        } else {
            Branch { shape: c_dp, roots: (0..self.n_p).collect() }
        }
    }

    /// For the EVAL variants: when the box meets exactly two Voronoi cells with
    /// different pieces, the two roots and their pieces.
    pub(crate) fn cell_pair(&self, x: Fi, y: Fi) -> Option<[(usize, Branch); 2]> {
        if !matches!(self.id, Algorithm::Eval | Algorithm::Ceval) {
            return None;
        }
        let universe: Vec<usize> = (0..self.roots.len()).collect();
        match rank_candidates(x, y, &self.boxes, &universe, 0)[..] {
            [a, b] => {
                let (ba, bb) = (self.cell_branch(a), self.cell_branch(b));
                (ba != bb).then_some([(a, ba), (b, bb)])
            }
            _ => None,
        }
    }

    /// Enclosure of `F` on a box (hull over the candidate pieces).
    pub(crate) fn value_on(&self, x: Fi, y: Fi) -> Fi {
        self.branches(x, y)
            .iter()
            .map(|b| b.value(x, y, &self.boxes))
            .reduce(Fi::hull)
            .unwrap_or(Fi::point(f64::INFINITY))
    }
}

fn point_fi(x: &Dyadic) -> Fi {
    RealEnclosure::point(x.clone()).to_fi()
}

/// Enclosure of the stopping function at `x`; `None` stands for `+inf`.
/// When the piece containing `x` cannot be decided, the hull over candidate pieces is returned.
pub fn eval_stopping(f: &StoppingFn, x: &DyadicComplex) -> Result<Option<RealEnclosure>> {
    let v = f.value_on(point_fi(&x.re), point_fi(&x.im));
    if v.lo.is_nan() || v.hi.is_nan() {
        return Err(Error::resource("stopping function undecidable at this point"));
    }
    if v.lo == f64::INFINITY {
        return Ok(None);
    }
    let v = Fi::new(v.lo.max(0.0), v.hi);
    if !v.hi.is_finite() {
        return Err(Error::resource("stopping function enclosure is unbounded"));
    }
    RealEnclosure::from_fi(v).map(Some)
}

fn sum_inverse_powers(rs: &RootSet, x: &DyadicComplex, square: bool) -> Result<RealEnclosure> {
    let (px, py) = (point_fi(&x.re), point_fi(&x.im));
    let mut s = Fi::point(0.0);
    for r in &rs.roots {
        let d = sq_dist(&px, &py, r.fbox());
        if d.lo <= 0.0 {
            return Err(Error::domain("point lies in a root enclosure"));
        }
        s = s + if square { d.recip() } else { d.sqrt().recip() };
    }
    RealEnclosure::from_fi(s)
}

/// `sum 1/|x - a|` over the roots in `rs`.
pub fn sigma(rs: &RootSet, x: &DyadicComplex) -> Result<RealEnclosure> {
    sum_inverse_powers(rs, x, false)
}

/// `sum 1/|x - a|^2` over the roots in `rs`.
pub fn sigma2(rs: &RootSet, x: &DyadicComplex) -> Result<RealEnclosure> {
    sum_inverse_powers(rs, x, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn z(re: f64, im: f64) -> DyadicComplex {
        DyadicComplex::from_f64(re, im).unwrap()
    }

    fn close(e: &RealEnclosure, want: f64) -> bool {
        e.lo.to_f64() <= want + 1e-12 && want - 1e-12 <= e.hi.to_f64() && e.hi.to_f64() - e.lo.to_f64() < 1e-9
    }

    #[test]
    fn sigma_examples() {
        let rs = root_set(&p(&[1, 0, 1])).unwrap();
        assert!(close(&sigma(&rs, &z(0.0, 0.0)).unwrap(), 2.0));
        assert!(close(&sigma2(&rs, &z(0.0, 0.0)).unwrap(), 2.0));
        let rs = root_set(&p(&[0, 1])).unwrap();
        assert!(close(&sigma(&rs, &z(2.0, 0.0)).unwrap(), 0.5));
        assert!(sigma(&rs, &z(0.0, 0.0)).is_err());
        let rs = root_set(&p(&[0, -3, 1])).unwrap();
        assert!(close(&sigma(&rs, &z(1.0, 0.0)).unwrap(), 1.5));
    }

    #[test]
    fn stopping_examples() {
        let ev = |id, c: &[i64], x: DyadicComplex| eval_stopping(&StoppingFn::new(id, &p(c)).unwrap(), &x).unwrap().unwrap();
        assert!(close(&ev(Algorithm::Sturm, &[0, -1, 1], z(0.1, 0.0)), 0.9));
        assert!(close(&ev(Algorithm::Csturm, &[1, 0, 1], z(0.0, 0.0)), 0.5));
        assert!(close(&ev(Algorithm::Descartes, &[-1, 0, 1], z(1.0, 0.0)), 2.0 / 3f64.sqrt()));
        let x = z(2f64.sqrt(), 0.0);
        assert!(close(&ev(Algorithm::Eval, &[-2, 0, 1], x), 2.0 / 3.0 * 2f64.sqrt()));
    }

    #[test]
    fn infinite_cases() {
        let f = StoppingFn::new(Algorithm::Csturm, &p(&[0, 1])).unwrap();
        assert!(eval_stopping(&f, &z(1.0, 1.0)).unwrap().is_none());
        let f = StoppingFn::new(Algorithm::Sturm, &p(&[1, 0, 1])).unwrap();
        assert!(eval_stopping(&f, &z(0.0, 0.0)).unwrap().is_none());
    }

    #[test]
    fn descartes_outside_zones_uses_nearest_root() {
        // Only complex roots: F is the distance to the nearest root.
        let f = StoppingFn::new(Algorithm::Descartes, &p(&[1, 0, 1])).unwrap();
        assert!(close(&eval_stopping(&f, &z(0.0, 0.0)).unwrap().unwrap(), 1.0));
    }
}
