use serde::{Deserialize, Serialize};

use super::closed_form::{csturm_annulus_bound, sqfree_ceval_annulus_bound, sturm_closed_form_bound};
use super::quadrature::{integrate_1d, integrate_2d, LeafCost, DEFAULT_BUDGET};
use super::stopping::StoppingFn;
use crate::error::Result;
use crate::exactnum::{Dyadic, RealEnclosure};
use crate::polynomial::IntPolynomial;
use crate::predicates::{Algorithm, Predicate};
use crate::roots::{root_set, RootSet};
use crate::subdivide::{default_max_depth, run_bisection, Region, SubdivisionTree};

/// Measured partition size against the amortized bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub integral_bound: RealEnclosure,
    pub closed_form_bound: Option<RealEnclosure>,
    pub measured_leaves: usize,
    pub holds: bool,
    /// The quadrature met its tolerance within budget; the enclosure is valid either way.
    pub converged: bool,
}

impl BoundResult {
    pub fn new(integral_bound: RealEnclosure, closed_form_bound: Option<RealEnclosure>, measured_leaves: usize, converged: bool) -> Self {
        let cap = integral_bound.hi.to_f64_dir(crate::exactnum::Round::Up).max(1.0);
        BoundResult { holds: (measured_leaves as f64) <= cap, integral_bound, closed_form_bound, measured_leaves, converged }
    }
}

/// `L` when the region is a benchmark region `[-2^L, 2^L]` (or its square).
pub fn benchmark_exponent(r: &Region) -> Option<u64> {
    let (lo, hi) = match r {
        Region::Interval(i) => (&i.lo, &i.hi),
        Region::Square(s) if s.y0 == s.x0 && s.y1 == s.x1 => (&s.x0, &s.x1),
        Region::Square(_) => return None,
    };
    let l = hi.ilog2();
    (l >= 0 && hi == &Dyadic::pow2(l) && lo == &-hi).then_some(l as u64)
}

/// Closed-form bound for the algorithms that have one.
fn closed_form(id: Algorithm, rs: &RootSet, p: &IntPolynomial, l: u64) -> Result<Option<RealEnclosure>> {
    Ok(match id {
        Algorithm::Sturm if rs.num_real >= 2 => Some(sturm_closed_form_bound(rs, l)?),
        Algorithm::Csturm if rs.degree() >= 2 => Some(csturm_annulus_bound(rs, l)?),
        Algorithm::Ceval => {
            let dp = p.derivative();
            let rs_dp = if dp.deg() > 0 { root_set(&dp)? } else { RootSet::empty(&dp) };
            Some(sqfree_ceval_annulus_bound(rs, &rs_dp, l)?)
        }
        _ => None,
    })
}

/// Runs the bisection and the matching amortized integral.
pub fn check_ca_soundness_with_tree(p: &IntPolynomial, id: Algorithm, region: &Region, tol: f64) -> Result<(BoundResult, SubdivisionTree)> {
    let pred = Predicate::new(id, p)?;
    let max_depth = default_max_depth(p.deg(), benchmark_exponent(region).unwrap_or(p.bit_height()));
    let tree = run_bisection(&pred, region.clone(), max_depth)?;
    let f = StoppingFn::new(id, p)?;
    let q = match region {
        Region::Interval(i) => integrate_1d(&f, i, LeafCost::unit(), tol, DEFAULT_BUDGET)?,
        Region::Square(s) => integrate_2d(&f, s, LeafCost::unit(), tol, DEFAULT_BUDGET)?,
    };
    let cf = match benchmark_exponent(region) {
        Some(l) => closed_form(id, &root_set(p)?, p, l)?,
        None => None,
    };
    Ok((BoundResult::new(q.enclosure()?, cf, tree.stats.leaf_count, q.converged), tree))
}

/// Measured `#Q` against `max(1, upper end of the integral bound)`.
pub fn check_ca_soundness(p: &IntPolynomial, id: Algorithm, region: &Region, tol: f64) -> Result<BoundResult> {
    check_ca_soundness_with_tree(p, id, region, tol).map(|x| x.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivide::{Interval, Square};

    #[test]
    fn examples() {
        let p = IntPolynomial::from_i64s(&[-1, 0, 1]);
        let r = check_ca_soundness(&p, Algorithm::Sturm, &Region::Interval(Interval::benchmark(1)), 1e-6).unwrap();
        assert_eq!(r.measured_leaves, 2);
        assert!(r.holds && (r.integral_bound.mid_f64() - 4.0 * 3f64.ln()).abs() < 1e-4);
        let p = IntPolynomial::from_i64s(&[1, 0, 1]);
        let r = check_ca_soundness(&p, Algorithm::Csturm, &Region::Square(Square::benchmark(1)), 1e-3).unwrap();
        assert_eq!(r.measured_leaves, 4);
        assert!(r.holds);
        assert!((r.closed_form_bound.unwrap().mid_f64() - 174.2).abs() < 0.1);
        let p = IntPolynomial::from_i64s(&[-5, 1]);
        for id in Algorithm::ALL {
            let region = if id.dim() == 1 { Region::Interval(Interval::benchmark(3)) } else { Region::Square(Square::benchmark(3)) };
            let r = check_ca_soundness(&p, id, &region, 1e-3).unwrap();
            assert_eq!(r.measured_leaves, 1, "{id}");
            assert!(r.holds);
        }
    }

    #[test]
    fn benchmark_detection() {
        assert_eq!(benchmark_exponent(&Region::Interval(Interval::benchmark(4))), Some(4));
        let off = Interval::new(Dyadic::zero(), Dyadic::one()).unwrap();
        assert_eq!(benchmark_exponent(&Region::Interval(off)), None);
    }
}
