//! Terminal predicates on intervals and squares.

mod circles;
mod complex;
mod real;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use circles::{one_circle_holds, two_circle_holds};
pub use complex::{b_csturm, b_sqfree_ceval, ceval_conditions, count_roots_in_square, CevalConditions};
pub use real::{b_descartes, b_sqfree_eval, b_sturm};

use crate::error::{Error, Result};
use crate::polynomial::{sturm_chain, IntPolynomial, SturmChain};
use crate::roots::{root_set, RootSet};
use crate::subdivide::Region;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Exclude,
    Include,
    Split,
}

impl Outcome {
    pub fn is_terminal(self) -> bool {
        self != Outcome::Split
    }
}

/// Predicate result with a tag naming the condition that fired.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub detail: String,
}

impl Verdict {
    pub fn new(outcome: Outcome, detail: impl Into<String>) -> Self {
        Verdict { outcome, detail: detail.into() }
    }
}

/// The five bisection algorithms, named by their predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Sturm,
    Descartes,
    Eval,
    Csturm,
    Ceval,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::Sturm, Algorithm::Descartes, Algorithm::Eval, Algorithm::Csturm, Algorithm::Ceval];

    /// 1 for interval algorithms, 2 for square algorithms.
    pub fn dim(self) -> usize {
        match self {
            Algorithm::Sturm | Algorithm::Descartes | Algorithm::Eval => 1,
            Algorithm::Csturm | Algorithm::Ceval => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sturm => "sturm",
            Algorithm::Descartes => "descartes",
            Algorithm::Eval => "eval",
            Algorithm::Csturm => "csturm",
            Algorithm::Ceval => "ceval",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown algorithm `{s}`")))
    }
}

enum Kind {
    Sturm(SturmChain),
    Descartes,
    Eval(IntPolynomial),
    Csturm(RootSet),
    Ceval(IntPolynomial, RootSet),
    Constant(Outcome),
}

/// A predicate bound to a polynomial, with its precomputed data.
pub struct Predicate {
    p: IntPolynomial,
    kind: Kind,
}

impl Predicate {
    /// Prepares the predicate; every algorithm needs a square-free `p`, and EVAL
    /// variants also need a square-free derivative.
    pub fn new(algorithm: Algorithm, p: &IntPolynomial) -> Result<Self> {
        if p.degree().unwrap_or(0) < 1 {
            return Err(Error::domain("polynomial must have degree at least 1"));
        }
        if !p.is_square_free() {
            return Err(Error::NotSquareFree);
        }
        let dp = p.derivative();
        let needs_dp = matches!(algorithm, Algorithm::Eval | Algorithm::Ceval);
        if needs_dp && dp.deg() > 0 && !dp.is_square_free() {
            return Err(Error::NotSquareFree);
        }
        let kind = match algorithm {
            Algorithm::Sturm => Kind::Sturm(sturm_chain(p)?),
            Algorithm::Descartes => Kind::Descartes,
            Algorithm::Eval => Kind::Eval(dp),
            Algorithm::Csturm => Kind::Csturm(root_set(p)?),
            Algorithm::Ceval => Kind::Ceval(dp, root_set(p)?),
        };
        Ok(Predicate { p: p.clone(), kind })
    }

    /// A predicate that always answers `outcome`.
    pub fn constant(p: &IntPolynomial, outcome: Outcome) -> Self {
        Predicate { p: p.clone(), kind: Kind::Constant(outcome) }
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.p
    }

    pub fn evaluate(&self, r: &Region) -> Result<Verdict> {
        match (&self.kind, r) {
            (Kind::Constant(o), _) => Ok(Verdict::new(*o, "constant")),
            (Kind::Sturm(chain), Region::Interval(j)) => Ok(b_sturm(chain, j)),
            (Kind::Descartes, Region::Interval(j)) => Ok(b_descartes(&self.p, j)),
            (Kind::Eval(dp), Region::Interval(j)) => Ok(b_sqfree_eval(&self.p, dp, j)),
            (Kind::Csturm(rs), Region::Square(s)) => b_csturm(rs, s),
            (Kind::Ceval(dp, rs), Region::Square(s)) => b_sqfree_ceval(&self.p, dp, s, rs),
            _ => Err(Error::domain("predicate and region dimension differ")),
        }
    }
}
