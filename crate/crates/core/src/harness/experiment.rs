use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::{gen_family, Family};
use super::isolation::{check_isolation, IsolationCheck};
use crate::amortization::{
    benchmark_exponent, csturm_annulus_bound, integrate_1d, integrate_2d, integrate_2d_many, mahler_davenport, sqfree_ceval_annulus_bound,
    sturm_closed_form_bound, BoundResult, LeafCost, MdGraph, StoppingFn, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::exactnum::{RealEnclosure, Round};
use crate::polynomial::IntPolynomial;
use crate::predicates::{Algorithm, Predicate};
use crate::roots::{root_set, GraphKind, RootSet};
use crate::subdivide::{default_max_depth, run_bisection, Interval, Region, Square, SubdivisionTree};

/// Relative quadrature tolerance for bound checks. Soundness only uses upper
/// ends, so a loose tolerance stays sound.
pub const BOUND_TOL: f64 = 1e-4;

pub const GRAPH_KINDS: [GraphKind; 3] = [GraphKind::RealChain, GraphKind::NearestNeighbor, GraphKind::ConjugatePairs];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub families: Vec<Family>,
    pub predicates: Vec<Algorithm>,
    pub tol: f64,
    /// Depth cap; the engine default when absent.
    pub max_depth: Option<u32>,
    /// JSONL destination; nothing is written when absent.
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(families: Vec<Family>, predicates: Vec<Algorithm>) -> Self {
        ExperimentConfig { families, predicates, tol: BOUND_TOL, max_depth: None, output: None }
    }
}

/// Which (polynomial, predicate) pair a record belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseKey {
    pub index: usize,
    pub family: Family,
    pub algorithm: Algorithm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MdRecord {
    pub kind: GraphKind,
    pub edges: usize,
    pub lhs_product: RealEnclosure,
    pub rhs_bound: RealEnclosure,
    pub neg_log_sum: RealEnclosure,
    pub corollary_bound: f64,
    pub holds: bool,
    pub corollary_holds: bool,
}

/// Leaf-cost sum against its integral bound for one cost function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BitRecord {
    pub cost: LeafCost,
    pub leaf_sum: f64,
    pub root_cost: f64,
    pub integral: RealEnclosure,
    pub holds: bool,
}

impl BitRecord {
    /// `sum g(w(leaf)) <= max(g(w(root)), upper end of the integral)`.
    pub fn new(cost: LeafCost, tree: &SubdivisionTree, root_width: f64, integral: RealEnclosure) -> Self {
        let leaf_sum: f64 = tree.leaf_nodes().map(|n| cost.g(n.region.width().to_f64())).sum();
        let root_cost = cost.g(root_width);
        let cap = integral.hi.to_f64_dir(Round::Up).max(root_cost);
        // Summation of at most 2^53 f64 terms: allow its rounding.
        let slack = 1e-12 * leaf_sum;
        BitRecord { cost, leaf_sum, root_cost, holds: leaf_sum - slack <= cap, integral }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub measured_leaves: usize,
    pub node_count: usize,
    pub max_depth: u32,
    pub truncated: bool,
    pub ca: BoundResult,
    pub md: Vec<MdRecord>,
    pub bit: Vec<BitRecord>,
    pub isolation: IsolationCheck,
    pub wall_ms: u64,
}

impl Metrics {
    pub fn all_hold(&self) -> bool {
        !self.truncated
            && self.ca.holds
            && self.isolation.ok
            && self.md.iter().all(|m| m.holds && m.corollary_holds)
            && self.bit.iter().all(|b| b.holds)
    }
}

/// One line of the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub case: CaseKey,
    pub poly: Option<IntPolynomial>,
    pub d: usize,
    pub l: u64,
    pub metrics: Option<Metrics>,
    pub error: Option<String>,
}

impl Record {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.metrics.as_ref().is_some_and(Metrics::all_hold)
    }

    /// The record with its timing removed, for replay comparisons.
    pub fn without_timing(&self) -> Record {
        let mut r = self.clone();
        if let Some(m) = r.metrics.as_mut() {
            m.wall_ms = 0;
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn failures(&self) -> Vec<&Record> {
        self.records.iter().filter(|r| !r.ok()).collect()
    }

    pub fn to_jsonl(&self) -> Result<String> {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_jsonl(s: &str) -> Result<Self> {
        let records = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        Ok(Report { records })
    }

    /// Writes the report through a sibling temporary file and a rename.
    pub fn write_atomic(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        {
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(self.to_jsonl()?.as_bytes())?;
            f.sync_all()?;
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Benchmark region for `p`: `[-2^L, 2^L]` or its square with `L` the bit height,
/// which contains every root.
pub fn benchmark_region(p: &IntPolynomial, dim: usize) -> Region {
    let l = p.bit_height().max(1);
    if dim == 1 { Region::Interval(Interval::benchmark(l)) } else { Region::Square(Square::benchmark(l)) }
}

fn integral(f: &StoppingFn, region: &Region, cost: LeafCost, tol: f64) -> Result<(RealEnclosure, bool)> {
    let q = match region {
        Region::Interval(i) => integrate_1d(f, i, cost, tol, DEFAULT_BUDGET)?,
        Region::Square(s) => integrate_2d(f, s, cost, tol, DEFAULT_BUDGET)?,
    };
    Ok((q.enclosure()?, q.converged))
}

fn closed_form(id: Algorithm, rs: &RootSet, rs_dp: Option<&RootSet>, region: &Region) -> Result<Option<RealEnclosure>> {
    let Some(l) = benchmark_exponent(region) else { return Ok(None) };
    Ok(match (id, rs_dp) {
        (Algorithm::Sturm, _) if rs.num_real >= 2 => Some(sturm_closed_form_bound(rs, l)?),
        (Algorithm::Csturm, _) if rs.degree() >= 2 => Some(csturm_annulus_bound(rs, l)?),
        (Algorithm::Ceval, Some(dp)) => Some(sqfree_ceval_annulus_bound(rs, dp, l)?),
        _ => None,
    })
}

/// Mahler–Davenport evaluation on every graph kind.
pub fn md_records(p: &IntPolynomial, rs: &RootSet) -> Result<Vec<MdRecord>> {
    GRAPH_KINDS
        .iter()
        .map(|&kind| {
            let g = MdGraph::of_kind(rs, kind);
            let m = mahler_davenport(p, rs, &g)?;
            Ok(MdRecord {
                kind,
                edges: g.edges.len(),
                lhs_product: m.lhs_product,
                rhs_bound: m.rhs_bound,
                neg_log_sum: m.neg_log_sum,
                corollary_bound: m.corollary_bound,
                holds: m.holds,
                corollary_holds: m.corollary_holds,
            })
        })
        .collect()
}

fn run_case(p: &IntPolynomial, id: Algorithm, cfg: &ExperimentConfig) -> Result<Metrics> {
    let start = Instant::now();
    let pred = Predicate::new(id, p)?;
    let region = benchmark_region(p, id.dim());
    let l = benchmark_exponent(&region).unwrap_or(p.bit_height());
    let tree = run_bisection(&pred, region.clone(), cfg.max_depth.unwrap_or_else(|| default_max_depth(p.deg(), l)))?;
    let rs = root_set(p)?;
    let dp = p.derivative();
    let rs_dp = if matches!(id, Algorithm::Eval | Algorithm::Ceval) && dp.deg() > 0 { Some(root_set(&dp)?) } else { None };
    let f = StoppingFn::from_roots(id, &rs, rs_dp.as_ref());
    let root_width = region.width().to_f64();
    let dw = LeafCost::depth_weighted(root_width);
    let ((ca, converged), dw_int) = match &region {
        // One shared partition serves both costs; the plane integrals dominate the run time.
        Region::Square(s) => {
            let q = integrate_2d_many(&f, s, &[LeafCost::unit(), dw], cfg.tol, DEFAULT_BUDGET)?;
            ((q[0].enclosure()?, q[0].converged), q[1].enclosure()?)
        }
        Region::Interval(_) => (integral(&f, &region, LeafCost::unit(), cfg.tol)?, integral(&f, &region, dw, cfg.tol)?.0),
    };
    let cf_dp = (id == Algorithm::Ceval).then(|| rs_dp.clone().unwrap_or_else(|| RootSet::empty(&dp)));
    let cf = closed_form(id, &rs, cf_dp.as_ref(), &region)?;
    let bit = vec![BitRecord::new(LeafCost::unit(), &tree, root_width, ca.clone()), BitRecord::new(dw, &tree, root_width, dw_int)];
    Ok(Metrics {
        measured_leaves: tree.stats.leaf_count,
        node_count: tree.stats.node_count,
        max_depth: tree.stats.max_depth,
        truncated: tree.truncated,
        ca: BoundResult::new(ca, cf, tree.stats.leaf_count, converged),
        md: md_records(p, &rs)?,
        bit,
        isolation: check_isolation(&tree, &rs)?,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

fn record(index: usize, family: &Family, id: Algorithm, cfg: &ExperimentConfig) -> Record {
    let case = CaseKey { index, family: family.clone(), algorithm: id };
    let p = match gen_family(family) {
        Ok(p) => p,
        Err(e) => return Record { case, poly: None, d: 0, l: 0, metrics: None, error: Some(e.to_string()) },
    };
    let (d, l) = (p.deg(), p.bit_height().max(1));
    match run_case(&p, id, cfg) {
        Ok(m) => Record { case, poly: Some(p), d, l, metrics: Some(m), error: None },
        Err(e) => Record { case, poly: Some(p), d, l, metrics: None, error: Some(e.to_string()) },
    }
}

/// Runs every family against every requested predicate in parallel. Case errors
/// are recorded, not propagated; only a failed report write is an error.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    let cases: Vec<(usize, &Family, Algorithm)> =
        cfg.families.iter().enumerate().flat_map(|(i, f)| cfg.predicates.iter().map(move |&a| (i, f, a))).collect();
    let records = cases.par_iter().map(|&(i, f, a)| record(i, f, a, cfg)).collect();
    let report = Report { records };
    if let Some(path) = &cfg.output {
        report.write_atomic(path)?;
    }
    Ok(report)
}

/// Recomputes a single record from its key.
pub fn replay(case: &CaseKey, cfg: &ExperimentConfig) -> Record {
    record(case.index, &case.family, case.algorithm, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn explicit(s: &str) -> Family {
        Family::Explicit { poly: s.into() }
    }

    #[test]
    fn wilkinson_sturm() {
        let r = run_experiment(&ExperimentConfig::new(vec![Family::Wilkinson { n: 3 }], vec![Algorithm::Sturm])).unwrap();
        let m = r.records[0].metrics.as_ref().unwrap();
        assert!(r.records[0].ok(), "{:?}", r.records[0]);
        assert!(m.measured_leaves as f64 <= m.ca.integral_bound.hi.to_f64());
    }

    #[test]
    fn linear_single_leaf() {
        let cfg = ExperimentConfig::new(vec![explicit("-5 1")], vec![Algorithm::Sturm, Algorithm::Descartes, Algorithm::Eval]);
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.records.len(), 3);
        for rec in &r.records {
            assert!(rec.ok(), "{rec:?}");
            assert_eq!(rec.metrics.as_ref().unwrap().measured_leaves, 1);
        }
    }

    #[test]
    fn non_square_free_is_a_case_error() {
        let cfg = ExperimentConfig::new(vec![explicit("1 -2 1"), explicit("-1 0 1")], vec![Algorithm::Sturm]);
        let r = run_experiment(&cfg).unwrap();
        assert!(r.records[0].error.as_deref().unwrap().contains("not square-free"));
        assert!(r.records[1].ok());
        assert_eq!(r.failures().len(), 1);
    }

    #[test]
    fn report_round_trip_and_atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.jsonl");
        let mut cfg = ExperimentConfig::new(vec![Family::Chebyshev { n: 3 }], vec![Algorithm::Descartes, Algorithm::Csturm]);
        cfg.output = Some(path.clone());
        let r = run_experiment(&cfg).unwrap();
        let back = Report::from_jsonl(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(!dir.path().join("report.jsonl.tmp").exists());
        let again = replay(&r.records[1].case, &cfg);
        assert_eq!(again.without_timing(), r.records[1].without_timing());
    }
}
