//! Exact dyadic scalars, complex dyadic points and outward-rounded enclosures.

mod complex;
mod dyadic;
mod enclosure;

pub use complex::DyadicComplex;
pub use dyadic::{Dyadic, Round};
pub use enclosure::{RealEnclosure, DEFAULT_PRECISION};


/// Arithmetic selector for [`dyadic_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DyadicOp {
    Add,
    Sub,
    Mul,
    /// Halves the first operand; the second is ignored.
    Half,
}

/// Exact dyadic arithmetic; the result is canonical.
pub fn dyadic_arith(a: &Dyadic, b: &Dyadic, op: DyadicOp) -> Dyadic {
    match op {
        DyadicOp::Add => a + b,
        DyadicOp::Sub => a - b,
        DyadicOp::Mul => a * b,
        DyadicOp::Half => a.half(),
    }
}

/// Enclosure arithmetic selector for [`enclosure_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnclosureOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn enclosure_arith(a: &RealEnclosure, b: &RealEnclosure, op: EnclosureOp, prec: u32) -> crate::Result<RealEnclosure> {
    Ok(match op {
        EnclosureOp::Add => a.add(b, prec),
        EnclosureOp::Sub => a.sub(b, prec),
        EnclosureOp::Mul => a.mul(b, prec),
        EnclosureOp::Div => a.div(b, prec)?,
    })
}
