//! Polynomial families, batch experiments that compare measured partition sizes
//! with their amortized bounds, and degree-scaling tables.

mod experiment;
mod family;
mod isolation;
mod scaling;

pub use experiment::{
    benchmark_region, md_records, replay, run_experiment, BitRecord, CaseKey, ExperimentConfig, MdRecord, Metrics, Record, Report,
    BOUND_TOL, GRAPH_KINDS,
};
pub use family::{gen_family, mignotte_a_for_height, polynomial_lines, Family, FamilyName};
pub use isolation::{check_isolation, IsolationCheck};
pub use scaling::{scaling_study, ScalingRow, ScalingTable};
