//! Bisection engine for intervals and squares.

mod cost;
mod region;
mod tree;

pub use cost::{accumulate_leaf_costs, CostKind, CostModel, LeafCharges};
pub use region::{bisect, Interval, Region, Square};
pub use tree::{default_max_depth, run_bisection, Node, SubdivisionTree, TreeStats};
