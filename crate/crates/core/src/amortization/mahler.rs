use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::RealEnclosure;
use crate::interval::Fi;
use crate::polynomial::{discriminant, IntPolynomial};
use crate::roots::{build_graph, GraphKind, RootSet};

/// Undirected (multi)graph on root indices with a valence bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdGraph {
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
}

impl MdGraph {
    /// Graph of the given kind with `k` set to its maximum valence.
    pub fn of_kind(rs: &RootSet, kind: GraphKind) -> Self {
        let edges = build_graph(rs, kind);
        let k = max_valence(rs.roots.len(), &edges);
        MdGraph { edges, k }
    }
}

fn max_valence(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut deg = vec![0usize; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    deg.into_iter().max().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MahlerDavenport {
    /// Product of edge lengths.
    pub lhs_product: RealEnclosure,
    /// Product over the in-degree-one layers of the per-layer lower bound.
    pub rhs_bound: RealEnclosure,
    /// `sum -ln |a_i - a_j|` over the edges.
    pub neg_log_sum: RealEnclosure,
    /// `k d L ln2 + (k d + |E|) ln d`
    pub corollary_bound: f64,
    pub layers: usize,
    /// The enclosures do not refute the product inequality (equality cases land here).
    pub holds: bool,
    /// The product inequality is proven by the enclosures.
    pub certified: bool,
    /// `neg_log_sum` is certified below `corollary_bound`.
    pub corollary_holds: bool,
}

/// `ln |n|` for a nonzero integer, as an enclosure.
fn ln_abs(n: &BigInt) -> Fi {
    let bits = n.bits();
    let shift = bits.saturating_sub(60);
    let top: BigInt = n.abs() >> shift;
    let t: f64 = num_traits::ToPrimitive::to_f64(&top).unwrap_or(f64::MAX);
    // `top` is exact in f64 up to rounding in its low bits; widen for the truncated tail.
    let base = if shift == 0 { Fi::around(t) } else { Fi::around(t).widen(1).hull(Fi::around(t + 1.0).widen(1)) }.ln();
    base + Fi::point(shift as f64) * Fi::ln2()
}

/// Splits edges, oriented toward the root of smaller magnitude (ties by index),
/// into layers in which every vertex has in-degree at most one.
fn layers(rs: &RootSet, edges: &[(usize, usize)]) -> Vec<usize> {
    let mag: Vec<Fi> = rs.roots.iter().map(|r| { let (x, y) = r.fbox(); (x.sqr() + y.sqr()).sqrt() }).collect();
    let mut seen = vec![0usize; rs.roots.len()];
    edges
        .iter()
        .map(|&(a, b)| {
            let a_bigger = mag[a].mid() > mag[b].mid() || (mag[a].mid() == mag[b].mid() && a < b);
            let head = if a_bigger { b } else { a };
            seen[head] += 1;
            seen[head] - 1
        })
        .collect()
}

/// Evaluates both sides of the root-separation product inequality on `g`, one
/// application per in-degree-one layer.
pub fn mahler_davenport(p: &IntPolynomial, rs: &RootSet, g: &MdGraph) -> Result<MahlerDavenport> {
    let n = rs.roots.len();
    let d = p.deg();
    if n != d {
        return Err(Error::domain("root set does not match the polynomial"));
    }
    if g.edges.iter().any(|&(a, b)| a >= n || b >= n || a == b) {
        return Err(Error::domain("graph has a loop or an out-of-range vertex"));
    }
    if max_valence(n, &g.edges) > g.k {
        return Err(Error::domain("graph exceeds its valence bound"));
    }
    let disc = discriminant(p);
    if disc.is_zero() {
        return Err(Error::NotSquareFree);
    }
    let bx: Vec<(Fi, Fi)> = rs.roots.iter().map(|r| r.fbox()).collect();
    let neg_log = g.edges.iter().fold(Fi::point(0.0), |acc, &(a, b)| {
        let dist = ((bx[a].0 - bx[b].0).sqr() + (bx[a].1 - bx[b].1).sqr()).sqrt();
        acc - dist.ln()
    });
    let ln_m = bx.iter().fold(ln_abs(&p.lead()), |acc, &(x, y)| acc + (x.sqr() + y.sqr()).sqrt().max(Fi::point(1.0)).ln());
    let df = Fi::point(d as f64);
    let ln_d = df.ln();
    let half_ln3 = Fi::point(3.0).ln() * Fi::point(0.5);
    let layer_of = layers(rs, &g.edges);
    let n_layers = layer_of.iter().map(|l| l + 1).max().unwrap_or(1);
    let mut ln_rhs = Fi::point(0.0);
    for layer in 0..n_layers {
        let e = Fi::point(layer_of.iter().filter(|&&l| l == layer).count() as f64);
        ln_rhs = ln_rhs + ln_abs(&disc) * Fi::point(0.5) - Fi::point((d - 1) as f64) * ln_m - e * (ln_d - half_ln3)
            - df * Fi::point(0.5) * ln_d;
    }
    let l = p.bit_height() as f64;
    let k = g.k as f64;
    let corollary = k * d as f64 * l * std::f64::consts::LN_2 + (k * d as f64 + g.edges.len() as f64) * (d as f64).ln();
    let holds = neg_log.lo <= -ln_rhs.lo;
    let certified = neg_log.hi <= -ln_rhs.hi;
    Ok(MahlerDavenport {
        lhs_product: RealEnclosure::from_fi((-neg_log).exp())?,
        rhs_bound: RealEnclosure::from_fi(ln_rhs.exp())?,
        neg_log_sum: RealEnclosure::from_fi(neg_log)?,
        corollary_bound: corollary,
        layers: n_layers,
        holds,
        certified,
        corollary_holds: neg_log.hi <= corollary * (1.0 - 1e-12),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::root_set;

    fn run(c: &[i64], kind: GraphKind) -> MahlerDavenport {
        let p = IntPolynomial::from_i64s(c);
        let rs = root_set(&p).unwrap();
        mahler_davenport(&p, &rs, &MdGraph::of_kind(&rs, kind)).unwrap()
    }

    #[test]
    fn quadratic_examples() {
        let m = run(&[-2, 0, 1], GraphKind::RealChain);
        assert!((m.lhs_product.mid_f64() - 8f64.sqrt()).abs() < 1e-9);
        assert!((m.rhs_bound.mid_f64() - 0.612).abs() < 1e-3);
        assert!(m.holds && m.certified);
        let m = run(&[1, 0, 1], GraphKind::ConjugatePairs);
        assert!((m.lhs_product.mid_f64() - 2.0).abs() < 1e-9);
        assert!((m.rhs_bound.mid_f64() - 3f64.sqrt() / 2.0).abs() < 1e-9);
        assert!(m.holds);
    }

    #[test]
    fn empty_graph() {
        let m = run(&[1, 0, 1], GraphKind::RealChain);
        assert!((m.lhs_product.mid_f64() - 1.0).abs() < 1e-12);
        // sqrt4 * 1 * 2^-1
        assert!((m.rhs_bound.mid_f64() - 1.0).abs() < 1e-9);
        // Exact equality: consistent, but not strictly provable.
        assert!(m.holds);
    }

    #[test]
    fn invalid_graph_rejected() {
        let p = IntPolynomial::from_i64s(&[-2, 0, 1]);
        let rs = root_set(&p).unwrap();
        let g = MdGraph { edges: vec![(0, 0)], k: 2 };
        assert!(mahler_davenport(&p, &rs, &g).is_err());
        let g = MdGraph { edges: vec![(0, 1), (0, 1)], k: 1 };
        assert!(mahler_davenport(&p, &rs, &g).is_err());
    }

    #[test]
    fn ln_of_large_integer() {
        let n = BigInt::from(3) << 200;
        let v = ln_abs(&n);
        let want = 3f64.ln() + 200.0 * 2f64.ln();
        assert!(v.contains(want) && v.width() < 1e-9);
    }
}
