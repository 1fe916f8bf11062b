use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::stopping::StoppingFn;
use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, RealEnclosure};
use crate::interval::{Fi, Jet1, Jet2, Scalar};
use crate::subdivide::{Interval, Square};

/// Default cap on the number of quadrature pieces.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Leaf cost as a function of leaf width: `g(w) = a + b * max(0, log2(w_ref / w))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeafCost {
    pub a: f64,
    pub b: f64,
    pub w_ref: f64,
}

impl LeafCost {
    pub fn unit() -> Self {
        LeafCost { a: 1.0, b: 0.0, w_ref: 1.0 }
    }

    /// `1 + log2(2 w(I) / w)`, i.e. one plus the depth below a virtual parent of the root.
    pub fn depth_weighted(root_width: f64) -> Self {
        LeafCost { a: 1.0, b: 1.0, w_ref: 2.0 * root_width }
    }

    pub fn g(&self, w: f64) -> f64 {
        self.a + self.b * (self.w_ref / w).log2().max(0.0)
    }

    /// Rejects costs that are not positive and nonincreasing in the width.
    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.b >= 0.0 && self.w_ref > 0.0 && self.a.is_finite() && self.b.is_finite()) {
            return Err(Error::domain("leaf cost must be positive and nonincreasing in width"));
        }
        let ws: Vec<f64> = (-40..40).map(|k| self.w_ref * 2f64.powi(k)).collect();
        if ws.windows(2).any(|p| self.g(p[1]) > self.g(p[0])) {
            return Err(Error::domain("leaf cost increases with width"));
        }
        Ok(())
    }
}

/// Interval-valued integral together with convergence information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: Fi,
    pub pieces: usize,
    pub converged: bool,
}

impl Quadrature {
    pub fn enclosure(&self) -> Result<RealEnclosure> {
        RealEnclosure::from_fi(self.value)
    }
}

/// Integrand `h(u)` with `u = 1/F`: `K u g(.)` where the leaf width is `F/2`
/// in 1D and `sqrt(F)/2` in 2D.
#[derive(Debug, Clone, Copy)]
struct Weight {
    k: f64,
    cost: LeafCost,
    /// argument scale `c` and log divisor `m` of `log2(c u) / m`
    c: f64,
    m: f64,
}

impl Weight {
    fn new(dim: usize, cost: LeafCost) -> Self {
        if dim == 1 {
            Weight { k: 2.0, cost, c: 2.0 * cost.w_ref, m: 1.0 }
        } else {
            Weight { k: 4.0, cost, c: 4.0 * cost.w_ref * cost.w_ref, m: 2.0 }
        }
    }

    fn fi(&self, u: Fi) -> Fi {
        let base = Fi::point(self.cost.a);
        let inner = if self.cost.b == 0.0 {
            base
        } else {
            let t = (u * Fi::point(self.c)).ln() / (Fi::ln2() * Fi::point(self.m));
            base + t.max(Fi::point(0.0)) * Fi::point(self.cost.b)
        };
        u * inner * Fi::point(self.k)
    }

    /// Smooth evaluation, or `None` if the clamp switches inside the range of `u`.
    fn smooth<S: Scalar>(&self, u: S) -> Option<S> {
        let uv = u.value();
        let k = Fi::point(self.k);
        if self.cost.b == 0.0 || (uv * Fi::point(self.c)).hi <= 1.0 {
            return Some(u.scale(k * Fi::point(self.cost.a)));
        }
        if (uv * Fi::point(self.c)).lo >= 1.0 {
            let t = u.scale(Fi::point(self.c)).ln().scale(Fi::point(self.cost.b) / (Fi::ln2() * Fi::point(self.m)));
            return Some((u * (S::cst(Fi::point(self.cost.a)) + t)).scale(k));
        }
        None
    }
}

fn sane(f: Fi) -> Fi {
    if f.lo.is_nan() || f.hi.is_nan() { Fi::entire() } else { f }
}

/// Exact f64 midpoint, if one exists.
fn exact_mid(a: f64, b: f64) -> Option<f64> {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    let m = s * 0.5;
    (err == 0.0 && s.is_finite() && m * 2.0 == s && m > a && m < b).then_some(m)
}

fn hull_weighted(ws: &[Weight], us: &[Fi], scale: Fi) -> Vec<Fi> {
    ws.iter()
        .map(|w| sane(us.iter().map(|&u| w.fi(u)).reduce(Fi::hull).unwrap_or(Fi::point(0.0)) * scale))
        .collect()
}

fn refine(zero: Vec<Fi>, better: impl Fn(usize) -> Option<Fi>) -> Vec<Fi> {
    zero.into_iter().enumerate().map(|(k, z)| better(k).and_then(|s| z.meet(sane(s))).unwrap_or(z)).collect()
}

fn piece_1d(f: &StoppingFn, ws: &[Weight], a: f64, b: f64) -> Vec<Fi> {
    let bx = Fi::new(a, b);
    let y = Fi::point(0.0);
    let width = Fi::point(b) - Fi::point(a);
    let brs = f.branches(bx, y);
    let us: Vec<Fi> = brs.iter().map(|br| br.recip_f(&bx, &y, f.boxes())).collect();
    let zero = hull_weighted(ws, &us, width);
    if brs.len() != 1 {
        return zero;
    }
    let Some(m) = exact_mid(a, b) else { return zero };
    let um = brs[0].recip_f(&Fi::point(m), &y, f.boxes());
    let ujet = brs[0].recip_f(&Jet1::var(bx), &Jet1::cst(y), f.boxes());
    let w3 = width * width * width;
    refine(zero, |k| {
        let fm = ws[k].smooth(um)?;
        let jet = ws[k].smooth(ujet)?;
        Some(width * fm + w3 * jet.d2 / Fi::point(24.0))
    })
}

fn clamp01(x: Fi) -> Fi {
    x.max(Fi::point(0.0)).min(Fi::point(1.0))
}

/// Fraction of the unit square where `a X + b Y <= g`.
fn frac_below(a: Fi, b: Fi, g: Fi) -> Fi {
    let unit = Fi::new(0.0, 1.0);
    let (mut a, mut b, mut g) = if b.abs().mid() > a.abs().mid() { (b, a, g) } else { (a, b, g) };
    if a.contains_zero() {
        return unit;
    }
    if a.hi < 0.0 {
        // X -> 1 - X
        g = g - a;
        a = -a;
    }
    // For each Y the section is X <= (g - bY) / a, and bY ranges over hull(0, b).
    let (rlo, rhi) = (b.lo.min(0.0), b.hi.max(0.0));
    let bracket = Fi::new(clamp01((g - Fi::point(rhi)) / a).lo, clamp01((g - Fi::point(rlo)) / a).hi);
    if b.hi <= 0.0 && !b.contains_zero() {
        // Y -> 1 - Y
        g = g - b;
        b = -b;
    }
    if b.lo <= 0.0 {
        return bracket;
    }
    let pos_sq = |t: Fi| t.max(Fi::point(0.0)).sqr();
    let exact = (pos_sq(g) - pos_sq(g - a) - pos_sq(g - b) + pos_sq(g - a - b)) / (Fi::point(2.0) * a * b);
    clamp01(exact).meet(bracket).unwrap_or(bracket)
}

/// Area fractions of a square on either side of the bisector of roots `i`
/// and `j`, i.e. the parts of the square in each one's Voronoi cell.
fn cell_fractions(f: &StoppingFn, i: usize, j: usize, bx: Fi, by: Fi, side: Fi) -> (Fi, Fi) {
    let (a, b) = (f.boxes()[i], f.boxes()[j]);
    let two = Fi::point(2.0);
    let (dx, dy) = (a.0 - b.0, a.1 - b.1);
    let (x0, y0) = (Fi::point(bx.lo), Fi::point(by.lo));
    // |z - a|^2 - |z - b|^2 = k - 2 dx s X - 2 dy s Y with z = (x0 + s X, y0 + s Y)
    let k = dx * (a.0 + b.0 - two * x0) + dy * (a.1 + b.1 - two * y0);
    let fa = clamp01(frac_below(-(two * side * dx), -(two * side * dy), -k));
    (fa, clamp01(Fi::point(1.0) - fa))
}

fn piece_2d(f: &StoppingFn, ws: &[Weight], x0: f64, x1: f64, y0: f64, y1: f64) -> Vec<Fi> {
    let (bx, by) = (Fi::new(x0, x1), Fi::new(y0, y1));
    let side = Fi::point(x1) - Fi::point(x0);
    let area = side.sqr();
    let brs = f.branches(bx, by);
    let us: Vec<Fi> = brs.iter().map(|br| br.recip_f(&bx, &by, f.boxes())).collect();
    let zero = hull_weighted(ws, &us, area);
    if brs.len() == 2 {
        if let Some([(i, ba), (j, bb)]) = f.cell_pair(bx, by) {
            // Each side of the bisector carries its own piece.
            let (fa, fb) = cell_fractions(f, i, j, bx, by, side);
            let (ua, ub) = (ba.recip_f(&bx, &by, f.boxes()), bb.recip_f(&bx, &by, f.boxes()));
            return refine(zero, |k| Some(area * (fa * ws[k].fi(ua) + fb * ws[k].fi(ub))));
        }
    }
    if brs.len() != 1 {
        return zero;
    }
    let (Some(mx), Some(my)) = (exact_mid(x0, x1), exact_mid(y0, y1)) else { return zero };
    let br = &brs[0];
    let (px, py) = (Fi::point(mx), Fi::point(my));
    let umid = br.recip_f(&Jet2::var_x(px), &Jet2::var_y(py), f.boxes());
    let ubox = br.recip_f(&Jet2::var_x(bx), &Jet2::var_y(by), f.boxes());
    let s4 = area.sqr();
    refine(zero, |k| {
        let at_mid = ws[k].smooth(umid)?;
        let jet = ws[k].smooth(ubox)?;
        // The mixed term at the midpoint integrates to zero over the square;
        // only its variation across the box contributes.
        let cross = (jet.hxy - at_mid.hxy).abs().hi;
        let cross = Fi::new(-cross, cross) * s4 / Fi::point(16.0);
        Some(area * at_mid.v + s4 * (jet.hxx + jet.hyy) / Fi::point(24.0) + cross)
    })
}

#[derive(Debug, Clone)]
struct Piece {
    lo: [f64; 2],
    hi: [f64; 2],
    /// One enclosure per leaf cost.
    val: Vec<Fi>,
}

struct ByWidth(f64, usize);

impl PartialEq for ByWidth {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for ByWidth {}
impl PartialOrd for ByWidth {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for ByWidth {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.total_cmp(&o.0).then(o.1.cmp(&self.1))
    }
}

fn width_of(v: Fi) -> f64 {
    let w = v.hi - v.lo;
    if w.is_nan() { f64::INFINITY } else { w }
}

/// Adaptive refinement over `n` integrands sharing one partition: split the
/// piece with the largest relative width until every summed width falls under
/// `tol` times the lower end of its total.
fn adapt(initial: Vec<Piece>, split: impl Fn(&Piece) -> Option<Vec<Piece>>, n: usize, tol: f64, budget: usize) -> Vec<Quadrature> {
    let mut pieces = initial;
    let mut alive = vec![true; pieces.len()];
    let mut count = pieces.len();
    let totals = |pieces: &[Piece], alive: &[bool]| -> (Vec<f64>, Vec<f64>) {
        let (mut w, mut lo) = (vec![0.0; n], vec![0.0; n]);
        for (p, _) in pieces.iter().zip(alive).filter(|x| *x.1) {
            for k in 0..n {
                w[k] += width_of(p.val[k]);
                lo[k] += p.val[k].lo;
            }
        }
        (w, lo)
    };
    let scales = |lo: &[f64]| -> Vec<f64> { lo.iter().map(|&l| l.max(1e-300)).collect() };
    let key = |p: &Piece, sc: &[f64]| p.val.iter().zip(sc).map(|(v, s)| width_of(*v) / s).fold(0.0, f64::max);
    let (mut wsum, mut losum) = totals(&pieces, &alive);
    let mut sc = scales(&losum);
    let mut heap: BinaryHeap<ByWidth> = pieces.iter().enumerate().map(|(i, p)| ByWidth(key(p, &sc), i)).collect();
    let done = |w: &[f64], lo: &[f64], k: usize| w[k] <= tol * lo[k].max(0.0) || w[k] < 1e-290;
    let mut iter = 0usize;
    loop {
        // The floor absorbs outward rounding of exactly-zero integrands.
        if (0..n).all(|k| done(&wsum, &losum, k)) || count >= budget {
            break;
        }
        let Some(ByWidth(_, i)) = heap.pop() else { break };
        let Some(kids) = split(&pieces[i]) else { continue };
        alive[i] = false;
        for k in 0..n {
            wsum[k] -= width_of(pieces[i].val[k]);
            losum[k] -= pieces[i].val[k].lo;
        }
        for kid in kids {
            for k in 0..n {
                wsum[k] += width_of(kid.val[k]);
                losum[k] += kid.val[k].lo;
            }
            heap.push(ByWidth(key(&kid, &sc), pieces.len()));
            pieces.push(kid);
            alive.push(true);
            count += 1;
        }
        count -= 1;
        iter += 1;
        if iter % 1024 == 0 || wsum.iter().any(|w| !w.is_finite()) {
            (wsum, losum) = totals(&pieces, &alive);
            // Relative keys go stale once a total moves by more than a factor of two.
            let fresh = scales(&losum);
            if n > 1 && fresh.iter().zip(&sc).any(|(a, b)| a / b > 2.0 || b / a > 2.0) {
                sc = fresh;
                heap = pieces.iter().enumerate().filter(|(i, _)| alive[*i]).map(|(i, p)| ByWidth(key(p, &sc), i)).collect();
            }
        }
    }
    (0..n)
        .map(|k| {
            let value = pieces.iter().zip(&alive).filter(|x| *x.1).fold(Fi::point(0.0), |acc, (p, _)| acc + p.val[k]);
            Quadrature { value, pieces: count, converged: done(&wsum, &losum, k) }
        })
        .collect()
}

fn to_f64_exact(x: &Dyadic) -> Result<f64> {
    let v = x.to_f64();
    match Dyadic::from_f64(v) {
        Some(back) if &back == x => Ok(v),
        _ => Err(Error::domain("region endpoint is not representable in double precision")),
    }
}

/// Points on the real line where the piece of `F` may change.
fn breakpoints_1d(f: &StoppingFn, a: f64, b: f64) -> Vec<f64> {
    let bx = f.boxes();
    let mut pts: Vec<f64> = Vec::new();
    for (i, &(re, _)) in bx.iter().enumerate() {
        pts.push(re.mid());
        if let Some(Some(z)) = f.zones.get(i) {
            let z = z.to_f64();
            pts.push(re.mid() - z);
            pts.push(re.mid() + z);
        }
    }
    for i in 0..bx.len() {
        for j in i + 1..bx.len() {
            let (ri, ii) = (bx[i].0.mid(), bx[i].1.mid());
            let (rj, ij) = (bx[j].0.mid(), bx[j].1.mid());
            if ri != rj {
                pts.push(((rj * rj + ij * ij) - (ri * ri + ii * ii)) / (2.0 * (rj - ri)));
            }
        }
    }
    pts.retain(|x| x.is_finite() && *x > a && *x < b);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// `∫_I K g(w(x)) / F(x) dx` in 1D, with unit cost giving the plain integral of `2/F`.
pub fn integrate_1d(f: &StoppingFn, i: &Interval, cost: LeafCost, tol: f64, budget: usize) -> Result<Quadrature> {
    Ok(integrate_1d_many(f, i, &[cost], tol, budget)?.remove(0))
}

/// [`integrate_1d`] for several leaf costs over one shared partition.
pub fn integrate_1d_many(f: &StoppingFn, i: &Interval, costs: &[LeafCost], tol: f64, budget: usize) -> Result<Vec<Quadrature>> {
    if f.dim() != 1 {
        return Err(Error::domain("stopping function is two-dimensional"));
    }
    if costs.is_empty() {
        return Ok(Vec::new());
    }
    let (a, b) = (to_f64_exact(&i.lo)?, to_f64_exact(&i.hi)?);
    let ws: Vec<Weight> = costs.iter().map(|&c| Weight::new(1, c)).collect();
    let mut cuts = vec![a];
    cuts.extend(breakpoints_1d(f, a, b));
    cuts.push(b);
    let make = |lo: f64, hi: f64| Piece { lo: [lo, 0.0], hi: [hi, 0.0], val: piece_1d(f, &ws, lo, hi) };
    let initial: Vec<Piece> = cuts.windows(2).filter(|c| c[0] < c[1]).map(|c| make(c[0], c[1])).collect();
    let split = |p: &Piece| {
        let m = exact_mid(p.lo[0], p.hi[0]).or_else(|| {
            let m = p.lo[0] + (p.hi[0] - p.lo[0]) * 0.5;
            (m > p.lo[0] && m < p.hi[0]).then_some(m)
        })?;
        Some(vec![make(p.lo[0], m), make(m, p.hi[0])])
    };
    Ok(adapt(initial, split, costs.len(), tol, budget))
}

/// `∫_R K g(w(x)) / F(x) dA` in 2D.
pub fn integrate_2d(f: &StoppingFn, r: &Square, cost: LeafCost, tol: f64, budget: usize) -> Result<Quadrature> {
    Ok(integrate_2d_many(f, r, &[cost], tol, budget)?.remove(0))
}

/// [`integrate_2d`] for several leaf costs over one shared partition.
pub fn integrate_2d_many(f: &StoppingFn, r: &Square, costs: &[LeafCost], tol: f64, budget: usize) -> Result<Vec<Quadrature>> {
    if f.dim() != 2 {
        return Err(Error::domain("stopping function is one-dimensional"));
    }
    if costs.is_empty() {
        return Ok(Vec::new());
    }
    let (x0, x1, y0, y1) = (to_f64_exact(&r.x0)?, to_f64_exact(&r.x1)?, to_f64_exact(&r.y0)?, to_f64_exact(&r.y1)?);
    let ws: Vec<Weight> = costs.iter().map(|&c| Weight::new(2, c)).collect();
    let make = |lo: [f64; 2], hi: [f64; 2]| Piece { lo, hi, val: piece_2d(f, &ws, lo[0], hi[0], lo[1], hi[1]) };
    let initial = vec![make([x0, y0], [x1, y1])];
    let split = |p: &Piece| {
        let mx = exact_mid(p.lo[0], p.hi[0])?;
        let my = exact_mid(p.lo[1], p.hi[1])?;
        Some(vec![
            make([p.lo[0], p.lo[1]], [mx, my]),
            make([mx, p.lo[1]], [p.hi[0], my]),
            make([p.lo[0], my], [mx, p.hi[1]]),
            make([mx, my], [p.hi[0], p.hi[1]]),
        ])
    };
    Ok(adapt(initial, split, costs.len(), tol, budget))
}

fn finish(q: Quadrature) -> Result<RealEnclosure> {
    if !q.converged {
        return Err(Error::resource(format!("quadrature budget exhausted after {} pieces", q.pieces)));
    }
    q.enclosure()
}

/// Enclosure of `∫_I 2 dx / F(x)`.
pub fn ca_integral_1d(f: &StoppingFn, i: &Interval, tol: f64) -> Result<RealEnclosure> {
    finish(integrate_1d(f, i, LeafCost::unit(), tol, DEFAULT_BUDGET)?)
}

/// Enclosure of `∫_R 4 dA / F(x)`.
pub fn ca_integral_2d(f: &StoppingFn, r: &Square, tol: f64) -> Result<RealEnclosure> {
    finish(integrate_2d(f, r, LeafCost::unit(), tol, DEFAULT_BUDGET)?)
}

/// Region argument for [`bit_integral`].
#[derive(Debug, Clone)]
pub enum Domain<'a> {
    Interval(&'a Interval),
    Square(&'a Square),
}

/// Enclosure of `∫ 2 g(F/2) / F dx` (1D) or `∫ 4 g(sqrt(F)/2) / F dA` (2D).
pub fn bit_integral(f: &StoppingFn, g: &LeafCost, region: Domain<'_>, tol: f64) -> Result<RealEnclosure> {
    g.validate()?;
    let q = match region {
        Domain::Interval(i) => integrate_1d(f, i, *g, tol, DEFAULT_BUDGET)?,
        Domain::Square(s) => integrate_2d(f, s, *g, tol, DEFAULT_BUDGET)?,
    };
    finish(q)
}
