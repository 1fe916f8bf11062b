use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Dyadic;
use crate::predicates::{count_roots_in_square, Outcome};
use crate::roots::RootSet;
use crate::subdivide::{Region, SubdivisionTree};

/// Comparison of a finished tree against certified roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolationCheck {
    pub include_leaves: usize,
    /// Roots in the root region (real roots only for intervals).
    pub roots_in_region: usize,
    pub midpoint_roots: usize,
    /// Include leaves biject with the roots not found at midpoints, Exclude
    /// leaves are empty, and reported midpoint roots are exactly the roots
    /// lying on leaf endpoints.
    pub ok: bool,
    /// First discrepancy found, if any.
    pub problem: Option<String>,
}

enum Place {
    Outside,
    Leaf(usize),
    Boundary(Dyadic),
}

/// Locates a real root among sorted, abutting open leaf intervals, refining its
/// disk until it sits inside one leaf or on an endpoint that is an exact root.
fn place_real(rs: &mut Cow<RootSet>, i: usize, ends: &[Dyadic]) -> Result<Place> {
    loop {
        let r = &rs.roots[i];
        let (lo, hi) = (&r.center.re - &r.radius, &r.center.re + &r.radius);
        if &hi < ends.first().unwrap() || &lo > ends.last().unwrap() {
            return Ok(Place::Outside);
        }
        // leaf k is (ends[k], ends[k+1])
        let k = ends.partition_point(|e| e < &lo);
        if k >= 1 && k < ends.len() && lo > ends[k - 1] && hi < ends[k] {
            return Ok(Place::Leaf(k - 1));
        }
        if let Some(b) = ends.iter().find(|b| &lo <= *b && *b <= &hi && rs.poly.sign_at(b) == 0) {
            return Ok(Place::Boundary(b.clone()));
        }
        *rs = Cow::Owned(rs.refined()?);
    }
}

fn check_1d(tree: &SubdivisionTree, rs: &RootSet) -> Result<IsolationCheck> {
    let mut leaves: Vec<(Dyadic, Dyadic, Outcome)> = tree
        .leaf_nodes()
        .map(|n| match &n.region {
            Region::Interval(j) => Ok((j.lo.clone(), j.hi.clone(), n.verdict.outcome)),
            Region::Square(_) => Err(Error::domain("mixed-dimension tree")),
        })
        .collect::<Result<_>>()?;
    leaves.sort_by(|a, b| a.0.cmp(&b.0));
    let mut ends: Vec<Dyadic> = leaves.iter().map(|l| l.0.clone()).collect();
    ends.push(leaves.last().map(|l| l.1.clone()).ok_or_else(|| Error::domain("empty tree"))?);
    let mut problem = None;
    if leaves.windows(2).any(|w| w[0].1 != w[1].0) {
        problem = Some("leaves do not tile the root interval".to_string());
    }
    let mut hits = vec![0usize; leaves.len()];
    let mut on_boundary = Vec::new();
    let mut cur = Cow::Borrowed(rs);
    for i in 0..rs.num_real {
        match place_real(&mut cur, i, &ends)? {
            Place::Outside => {}
            Place::Leaf(k) => hits[k] += 1,
            Place::Boundary(b) => on_boundary.push(b),
        }
    }
    for (k, (lo, hi, outcome)) in leaves.iter().enumerate() {
        let want = match outcome {
            Outcome::Include => 1,
            Outcome::Exclude => 0,
            Outcome::Split => usize::MAX,
        };
        if hits[k] != want && problem.is_none() {
            problem = Some(format!("leaf ({}, {}) is {outcome:?} but holds {} roots", lo.to_decimal_string(), hi.to_decimal_string(), hits[k]));
        }
    }
    let mut reported = tree.midpoint_roots.clone();
    reported.sort();
    reported.dedup();
    on_boundary.sort();
    if reported != on_boundary && problem.is_none() {
        problem = Some(format!("midpoint roots reported {} but found {}", reported.len(), on_boundary.len()));
    }
    let include = leaves.iter().filter(|l| l.2 == Outcome::Include).count();
    Ok(IsolationCheck {
        include_leaves: include,
        roots_in_region: hits.iter().sum::<usize>() + on_boundary.len(),
        midpoint_roots: reported.len(),
        ok: problem.is_none(),
        problem,
    })
}

fn check_2d(tree: &SubdivisionTree, rs: &RootSet) -> Result<IsolationCheck> {
    let Region::Square(root) = &tree.nodes[0].region else {
        return Err(Error::domain("mixed-dimension tree"));
    };
    let total = count_roots_in_square(rs, root)?;
    let mut problem = None;
    let mut seen = 0;
    let mut include = 0;
    for n in tree.leaf_nodes() {
        let Region::Square(s) = &n.region else {
            return Err(Error::domain("mixed-dimension tree"));
        };
        let c = count_roots_in_square(rs, s)?;
        seen += c;
        let ok = match n.verdict.outcome {
            Outcome::Include => {
                include += 1;
                c == 1
            }
            Outcome::Exclude => c == 0,
            Outcome::Split => false,
        };
        if !ok && problem.is_none() {
            problem = Some(format!("leaf {} is {:?} but holds {c} roots", n.region.dump(), n.verdict.outcome));
        }
    }
    if seen != total && problem.is_none() {
        problem = Some(format!("leaves hold {seen} roots but the root square holds {total}"));
    }
    Ok(IsolationCheck { include_leaves: include, roots_in_region: total, midpoint_roots: 0, ok: problem.is_none(), problem })
}

/// Checks a finished tree against the certified roots of its polynomial.
pub fn check_isolation(tree: &SubdivisionTree, rs: &RootSet) -> Result<IsolationCheck> {
    if tree.truncated {
        return Ok(IsolationCheck {
            include_leaves: tree.include_leaves().count(),
            roots_in_region: 0,
            midpoint_roots: tree.midpoint_roots.len(),
            ok: false,
            problem: Some("tree truncated at the depth limit".into()),
        });
    }
    if tree.dim() == 1 { check_1d(tree, rs) } else { check_2d(tree, rs) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::IntPolynomial;
    use crate::predicates::{Algorithm, Predicate};
    use crate::roots::root_set;
    use crate::subdivide::{run_bisection, Interval, Square};

    fn check(c: &[i64], id: Algorithm) -> IsolationCheck {
        let p = IntPolynomial::from_i64s(c);
        let region = if id.dim() == 1 { Region::Interval(Interval::benchmark(2)) } else { Region::Square(Square::benchmark(2)) };
        let tree = run_bisection(&Predicate::new(id, &p).unwrap(), region, 200).unwrap();
        check_isolation(&tree, &root_set(&p).unwrap()).unwrap()
    }

    #[test]
    fn midpoint_roots_are_matched() {
        let c = check(&[0, -1, 0, 1], Algorithm::Sturm);
        assert!(c.ok, "{c:?}");
        assert_eq!((c.include_leaves, c.midpoint_roots, c.roots_in_region), (2, 1, 3));
    }

    #[test]
    fn complex_roots_counted_in_2d() {
        let c = check(&[1, 0, 1], Algorithm::Csturm);
        assert!(c.ok && c.include_leaves == 2 && c.roots_in_region == 2, "{c:?}");
        let c = check(&[1, 0, 1], Algorithm::Descartes);
        assert!(c.ok && c.roots_in_region == 0, "{c:?}");
    }

    #[test]
    fn wrong_verdict_is_flagged() {
        let p = IntPolynomial::from_i64s(&[-1, 0, 1]);
        let region = Region::Interval(Interval::benchmark(1));
        let tree = run_bisection(&Predicate::constant(&p, Outcome::Include), region, 10).unwrap();
        let c = check_isolation(&tree, &root_set(&p).unwrap()).unwrap();
        assert!(!c.ok);
    }
}
