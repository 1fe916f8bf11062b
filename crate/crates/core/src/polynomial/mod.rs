//! Exact integer polynomial arithmetic.

mod dyadic_poly;
mod int_poly;
mod resultant;
mod sturm;

pub use dyadic_poly::{mobius_variation, sign_variations, taylor_shift, taylor_shift_complex, DyadicPolynomial};
pub use int_poly::{IntPolynomial, NormsAndBounds};
pub use resultant::{discriminant, resultant};
pub use sturm::{count_roots_interval, sturm_chain, SturmChain};

use crate::exactnum::{Dyadic, DyadicComplex, RealEnclosure};

pub fn eval_at_dyadic(p: &IntPolynomial, x: &Dyadic) -> Dyadic {
    p.eval_dyadic(x)
}

pub fn eval_complex_enclosure(p: &IntPolynomial, z: &DyadicComplex, precision: u32) -> (RealEnclosure, RealEnclosure) {
    p.eval_complex_enclosure(z, precision)
}

pub fn derivative(p: &IntPolynomial) -> IntPolynomial {
    p.derivative()
}

pub fn norms_and_bounds(p: &IntPolynomial) -> NormsAndBounds {
    p.norms_and_bounds()
}

pub fn square_free_check(p: &IntPolynomial) -> bool {
    p.is_square_free()
}
