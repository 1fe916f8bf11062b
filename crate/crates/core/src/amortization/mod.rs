//! Stopping functions, amortized integral bounds on partition size, closed
//! forms for those integrals, and root-separation product bounds.

mod closed_form;
mod mahler;
mod quadrature;
mod soundness;
mod stopping;

pub use closed_form::{csturm_annulus_bound, sqfree_ceval_annulus_bound, sturm_closed_form_bound};
pub use mahler::{mahler_davenport, MahlerDavenport, MdGraph};
pub use quadrature::{
    bit_integral, ca_integral_1d, ca_integral_2d, integrate_1d, integrate_1d_many, integrate_2d, integrate_2d_many, Domain, LeafCost, Quadrature, DEFAULT_BUDGET};
pub use soundness::{benchmark_exponent, check_ca_soundness, check_ca_soundness_with_tree, BoundResult};
pub use stopping::{eval_stopping, sigma, sigma2, StoppingFn};
