use serde::{Deserialize, Serialize};

use super::experiment::benchmark_region;
use super::family::{gen_family, Family, FamilyName};
use crate::error::{Error, Result};
use crate::predicates::{Algorithm, Predicate};
use crate::subdivide::{default_max_depth, run_bisection};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub d: usize,
    /// Bit height of the generated polynomial.
    pub l: u64,
    pub measured_leaves: usize,
    /// `d (L ln2 + ln d)` with `L` the requested height.
    pub reference: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingTable {
    pub family: FamilyName,
    pub algorithm: Algorithm,
    pub l: u64,
    pub rows: Vec<ScalingRow>,
}

impl ScalingTable {
    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min)
    }

    /// `max ratio / min ratio`; 1 for a single row.
    pub fn spread(&self) -> f64 {
        self.max_ratio() / self.min_ratio()
    }

    pub fn leaves_nondecreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].measured_leaves <= w[1].measured_leaves)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# {:?} {} L={}\n{:>4} {:>4} {:>8} {:>12} {:>10}\n", self.family, self.algorithm, self.l, "d", "L", "leaves", "reference", "ratio");
        for r in &self.rows {
            s.push_str(&format!("{:>4} {:>4} {:>8} {:>12.4} {:>10.4}\n", r.d, r.l, r.measured_leaves, r.reference, r.ratio));
        }
        s.push_str(&format!("# ratio min {:.4} max {:.4} spread {:.4}\n", self.min_ratio(), self.max_ratio(), self.spread()));
        s
    }
}

/// Measured partition size across degrees at a fixed height parameter.
pub fn scaling_study(family: FamilyName, ds: &[usize], l: u64, id: Algorithm) -> Result<ScalingTable> {
    if ds.is_empty() {
        return Err(Error::domain("empty degree range"));
    }
    let rows = ds
        .iter()
        .map(|&d| {
            let p = gen_family(&Family::from_params(family, d, l, d as u64))?;
            let region = benchmark_region(&p, id.dim());
            let pl = p.bit_height().max(1);
            let tree = run_bisection(&Predicate::new(id, &p)?, region, default_max_depth(p.deg(), pl))?;
            if tree.truncated {
                return Err(Error::resource(format!("degree {d}: tree truncated")));
            }
            let reference = d as f64 * (l as f64 * std::f64::consts::LN_2 + (d as f64).ln());
            let measured = tree.stats.leaf_count;
            Ok(ScalingRow { d, l: pl, measured_leaves: measured, reference, ratio: measured as f64 / reference })
        })
        .collect::<Result<_>>()?;
    Ok(ScalingTable { family, algorithm: id, l, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilkinson_sturm_nondecreasing() {
        let t = scaling_study(FamilyName::Wilkinson, &[3, 4, 5, 6, 7, 8], 1, Algorithm::Sturm).unwrap();
        assert!(t.leaves_nondecreasing(), "{}", t.to_text());
    }

    #[test]
    fn single_row() {
        let t = scaling_study(FamilyName::Mignotte, &[4], 8, Algorithm::Descartes).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.spread(), 1.0);
    }
}
