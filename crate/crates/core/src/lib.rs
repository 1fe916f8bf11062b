//! Exact bisection root isolation for integer polynomials, together with the
//! continuous-amortization machinery that bounds the size of the resulting
//! subdivision trees.

pub mod amortization;
pub mod error;
pub mod exactnum;
pub mod harness;
pub mod interval;
pub mod polynomial;
pub mod predicates;
pub mod roots;
pub mod subdivide;

pub use error::{Error, Result};
