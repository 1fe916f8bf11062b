use serde::{Deserialize, Serialize};

use super::SubdivisionTree;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CostKind {
    /// `C (d^3 L + d^3 h)`
    Classical,
    /// `C (d^2 L + d^2 h) k(d, L, h)`
    Fast,
    /// `C (d L + d^2 h) k(d, L, h)`
    EvalFast,
}

/// Per-node bit cost as a function of depth.
///
/// The log factor is `k = max(1, log2(d (L + h)))^log_power`; `log_power = 0` drops it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    pub kind: CostKind,
    pub c: f64,
    pub d: usize,
    pub l: u64,
    pub log_power: u32,
}

impl CostModel {
    pub fn classical(c: f64, d: usize, l: u64) -> Self {
        CostModel { kind: CostKind::Classical, c, d, l, log_power: 0 }
    }

    pub fn log_factor(&self, h: u32) -> f64 {
        if self.log_power == 0 {
            return 1.0;
        }
        let x = self.d as f64 * (self.l as f64 + h as f64);
        x.log2().max(1.0).powi(self.log_power as i32)
    }

    pub fn node_cost(&self, h: u32) -> f64 {
        let (d, l, h64) = (self.d as f64, self.l as f64, h as f64);
        let base = match self.kind {
            CostKind::Classical => d.powi(3) * l + d.powi(3) * h64,
            CostKind::Fast => d * d * l + d * d * h64,
            CostKind::EvalFast => d * l + d * d * h64,
        };
        let k = if self.kind == CostKind::Classical { 1.0 } else { self.log_factor(h) };
        self.c * base * k
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafCharges {
    /// `(node index, charge)` in the order of `tree.leaves`.
    pub per_leaf: Vec<(usize, f64)>,
    pub total: f64,
}

/// Charges each leaf its own cost plus its ancestors' costs, divided by 2 (1D)
/// or 4 (2D) per level of descent.
pub fn accumulate_leaf_costs(tree: &SubdivisionTree, cm: &CostModel) -> Result<LeafCharges> {
    accumulate_with(tree, |h| cm.node_cost(h))
}

pub(crate) fn accumulate_with(tree: &SubdivisionTree, g: impl Fn(u32) -> f64) -> Result<LeafCharges> {
    if tree.truncated {
        return Err(Error::domain("cannot charge a truncated tree"));
    }
    let f: f64 = if tree.dim() == 1 { 0.5 } else { 0.25 };
    let per_leaf: Vec<(usize, f64)> = tree
        .leaves
        .iter()
        .map(|&i| {
            let h0 = tree.nodes[i].depth;
            let charge: f64 = (0..=h0).map(|k| f.powi(k as i32) * g(h0 - k)).sum();
            (i, charge)
        })
        .collect();
    let total = per_leaf.iter().map(|x| x.1).sum();
    Ok(LeafCharges { per_leaf, total })
}
