use super::{CertifiedRoot, RootSet};
use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicComplex, RealEnclosure, Round};

const GEOM_PREC: u32 = 128;

/// Enclosure of |x - root|.
fn distance(root: &CertifiedRoot, x: &DyadicComplex) -> RealEnclosure {
    let g = (x - &root.center).norm_sq();
    let lo = &g.sqrt_round(GEOM_PREC, Round::Down) - &root.radius;
    RealEnclosure { lo: lo.max_with(&Dyadic::zero()), hi: &g.sqrt_round(GEOM_PREC, Round::Up) + &root.radius }
}

/// Enclosure of |x - root|^2 (exact for zero-radius roots).
fn distance_sq(root: &CertifiedRoot, x: &DyadicComplex) -> RealEnclosure {
    if root.radius.is_zero() {
        return RealEnclosure::point((x - &root.center).norm_sq());
    }
    let d = distance(root, x);
    RealEnclosure { lo: d.lo.square(), hi: d.hi.square() }
}

/// Enclosures of the distances to the nearest and second-nearest root
/// (real roots only when `restrict_real`).
pub fn dist_and_dist2(rs: &RootSet, x: &DyadicComplex, restrict_real: bool) -> Result<(RealEnclosure, RealEnclosure)> {
    let eligible: &[CertifiedRoot] = if restrict_real { rs.real_roots() } else { &rs.roots };
    if eligible.len() < 2 {
        return Err(Error::domain("fewer than two eligible roots"));
    }
    let ds: Vec<RealEnclosure> = eligible.iter().map(|r| distance(r, x)).collect();
    let mut los: Vec<&Dyadic> = ds.iter().map(|d| &d.lo).collect();
    let mut his: Vec<&Dyadic> = ds.iter().map(|d| &d.hi).collect();
    los.sort();
    his.sort();
    Ok((
        RealEnclosure { lo: los[0].clone(), hi: his[0].clone() },
        RealEnclosure { lo: los[1].clone(), hi: his[1].clone() },
    ))
}

/// Roots of p followed by roots of p'.
pub fn pp_universe(rs_p: &RootSet, rs_dp: &RootSet) -> Vec<CertifiedRoot> {
    rs_p.roots.iter().chain(rs_dp.roots.iter()).cloned().collect()
}

/// Index of the nearest root in `universe`, ties broken to the lowest index.
/// Fails with a resource error when the enclosures cannot decide.
pub fn cell_index(universe: &[CertifiedRoot], x: &DyadicComplex) -> Result<usize> {
    if universe.is_empty() {
        return Err(Error::domain("empty root universe"));
    }
    let ds: Vec<RealEnclosure> = universe.iter().map(|r| distance_sq(r, x)).collect();
    let best_hi = ds.iter().map(|d| &d.hi).min().unwrap();
    let cands: Vec<usize> = (0..ds.len()).filter(|&i| &ds[i].lo <= best_hi).collect();
    if cands.len() == 1 {
        return Ok(cands[0]);
    }
    if cands.iter().all(|&i| ds[i].is_point()) {
        let m = cands.iter().map(|&i| &ds[i].lo).min().unwrap();
        return Ok(*cands.iter().find(|&&i| &ds[i].lo == m).unwrap());
    }
    Err(Error::resource("nearest root undecidable at current precision"))
}

/// Graph families over the roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum GraphKind {
    RealChain,
    NearestNeighbor,
    ConjugatePairs,
}

/// Edge list of the requested graph.
pub fn build_graph(rs: &RootSet, kind: GraphKind) -> Vec<(usize, usize)> {
    match kind {
        GraphKind::RealChain => (1..rs.num_real).map(|i| (i - 1, i)).collect(),
        GraphKind::ConjugatePairs => {
            rs.pairing.iter().enumerate().filter_map(|(i, p)| p.filter(|&j| j > i).map(|j| (i, j))).collect()
        }
        GraphKind::NearestNeighbor => {
            let n = rs.roots.len();
            (0..n)
                .filter_map(|i| {
                    (0..n)
                        .filter(|&j| j != i)
                        .min_by(|&a, &b| {
                            let da = (&rs.roots[i].center - &rs.roots[a].center).norm_sq();
                            let db = (&rs.roots[i].center - &rs.roots[b].center).norm_sq();
                            da.cmp(&db).then(a.cmp(&b))
                        })
                        .map(|j| (i, j))
                })
                .collect()
        }
    }
}
