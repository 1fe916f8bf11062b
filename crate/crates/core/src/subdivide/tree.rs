use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Region;
use crate::error::Result;
use crate::exactnum::Dyadic;
use crate::predicates::{Outcome, Predicate, Verdict};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Node {
    pub region: Region,
    pub depth: u32,
    pub verdict: Verdict,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeStats {
    pub leaf_count: usize,
    pub node_count: usize,
    pub max_depth: u32,
}

/// Result of one bisection run. Nodes are stored in breadth-first order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubdivisionTree {
    pub nodes: Vec<Node>,
    pub leaves: Vec<usize>,
    /// Exact roots found at bisection points (1D only).
    pub midpoint_roots: Vec<Dyadic>,
    pub stats: TreeStats,
    /// Set when some leaf still said Split at the depth limit.
    pub truncated: bool,
}

impl SubdivisionTree {
    pub fn dim(&self) -> usize {
        self.nodes[0].region.dim()
    }

    pub fn leaf_nodes(&self) -> impl Iterator<Item = &Node> {
        self.leaves.iter().map(|&i| &self.nodes[i])
    }

    pub fn include_leaves(&self) -> impl Iterator<Item = &Node> {
        self.leaf_nodes().filter(|n| n.verdict.outcome == Outcome::Include)
    }

    /// One line per node: depth, exact region, verdict tag.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for n in &self.nodes {
            let _ = writeln!(out, "{} {} {:?}:{}", n.depth, n.region.dump(), n.verdict.outcome, n.verdict.detail);
        }
        out
    }
}

/// `4 d (L + ceil(log2(d+1))) + 64`.
pub fn default_max_depth(d: usize, l: u64) -> u32 {
    // ceil(log2(d + 1)) for d >= 1
    let lg = usize::BITS - d.leading_zeros();
    (4 * d as u64 * (l + lg as u64) + 64) as u32
}

/// Breadth-first bisection until every leaf is Exclude or Include.
pub fn run_bisection(pred: &Predicate, root: Region, max_depth: u32) -> Result<SubdivisionTree> {
    let p = pred.poly();
    let mut midpoint_roots = Vec::new();
    if let Region::Interval(j) = &root {
        for e in [&j.lo, &j.hi] {
            if p.sign_at(e) == 0 {
                midpoint_roots.push(e.clone());
            }
        }
    }
    let verdict = pred.evaluate(&root)?;
    let mut nodes = vec![Node { region: root, depth: 0, verdict, parent: None, children: Vec::new() }];
    let mut queue = VecDeque::from([0usize]);
    let mut leaves = Vec::new();
    let mut truncated = false;
    while let Some(i) = queue.pop_front() {
        if nodes[i].verdict.outcome != Outcome::Split {
            leaves.push(i);
            continue;
        }
        if nodes[i].depth >= max_depth {
            truncated = true;
            leaves.push(i);
            continue;
        }
        if let Region::Interval(j) = &nodes[i].region {
            let m = j.mid();
            if p.sign_at(&m) == 0 {
                midpoint_roots.push(m);
            }
        }
        let depth = nodes[i].depth + 1;
        for child in nodes[i].region.bisect() {
            let verdict = pred.evaluate(&child)?;
            let id = nodes.len();
            nodes.push(Node { region: child, depth, verdict, parent: Some(i), children: Vec::new() });
            nodes[i].children.push(id);
            queue.push_back(id);
        }
    }
    let stats = TreeStats {
        leaf_count: leaves.len(),
        node_count: nodes.len(),
        max_depth: nodes.iter().map(|n| n.depth).max().unwrap_or(0),
    };
    midpoint_roots.sort();
    Ok(SubdivisionTree { nodes, leaves, midpoint_roots, stats, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::IntPolynomial;
    use crate::predicates::Algorithm;
    use crate::subdivide::{Interval, Square};

    #[test]
    fn sturm_two_roots() {
        let p = IntPolynomial::from_i64s(&[-1, 0, 1]);
        let pred = Predicate::new(Algorithm::Sturm, &p).unwrap();
        let t = run_bisection(&pred, Region::Interval(Interval::benchmark(1)), 100).unwrap();
        assert_eq!((t.stats.leaf_count, t.stats.node_count), (2, 3));
        assert!(t.leaf_nodes().all(|n| n.verdict.outcome == Outcome::Include));
        assert!(t.midpoint_roots.is_empty());
    }

    #[test]
    fn constant_predicate_single_leaf() {
        let p = IntPolynomial::from_i64s(&[-1, 0, 1]);
        let pred = Predicate::constant(&p, Outcome::Exclude);
        let t = run_bisection(&pred, Region::Interval(Interval::benchmark(3)), 100).unwrap();
        assert_eq!(t.stats, TreeStats { leaf_count: 1, node_count: 1, max_depth: 0 });
    }

    #[test]
    fn csturm_conjugate_pair() {
        let p = IntPolynomial::from_i64s(&[1, 0, 1]);
        let pred = Predicate::new(Algorithm::Csturm, &p).unwrap();
        let t = run_bisection(&pred, Region::Square(Square::benchmark(1)), 100).unwrap();
        assert_eq!((t.stats.node_count, t.stats.leaf_count), (5, 4));
    }

    #[test]
    fn midpoint_root_is_recorded() {
        // x^3 - x: root 0 is the first bisection point.
        let p = IntPolynomial::from_i64s(&[0, -1, 0, 1]);
        let pred = Predicate::new(Algorithm::Descartes, &p).unwrap();
        let t = run_bisection(&pred, Region::Interval(Interval::benchmark(2)), 100).unwrap();
        assert_eq!(t.midpoint_roots, vec![Dyadic::zero()]);
        assert_eq!(t.include_leaves().count(), 2);
    }

    #[test]
    fn depth_limit_truncates() {
        let p = IntPolynomial::from_i64s(&[-1, 0, 1]);
        let pred = Predicate::constant(&p, Outcome::Split);
        let t = run_bisection(&pred, Region::Interval(Interval::benchmark(1)), 3).unwrap();
        assert!(t.truncated);
        assert_eq!(t.stats.leaf_count, 8);
    }

    #[test]
    fn max_depth_formula() {
        // d = 3: ceil(log2 4) = 2; d = 4: ceil(log2 5) = 3.
        assert_eq!(default_max_depth(3, 5), 4 * 3 * 7 + 64);
        assert_eq!(default_max_depth(4, 5), 4 * 4 * 8 + 64);
        assert_eq!(default_max_depth(1, 1), 4 * 2 + 64);
    }
}
