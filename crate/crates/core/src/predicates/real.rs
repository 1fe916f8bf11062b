use super::{Outcome, Verdict};
use crate::exactnum::Dyadic;
use crate::polynomial::{mobius_variation, taylor_shift, IntPolynomial, SturmChain};
use crate::subdivide::Interval;

fn by_count(n: usize, tag: &'static str) -> Verdict {
    let outcome = match n {
        0 => Outcome::Exclude,
        1 => Outcome::Include,
        _ => Outcome::Split,
    };
    Verdict { outcome, detail: tag.into() }
}

/// Sturm count of roots in the open interval.
pub fn b_sturm(chain: &SturmChain, j: &Interval) -> Verdict {
    by_count(chain.count_roots_open(&j.lo, &j.hi), "sturm")
}

/// Descartes variation on the open interval.
pub fn b_descartes(p: &IntPolynomial, j: &Interval) -> Verdict {
    by_count(mobius_variation(p, &j.lo, &j.hi), "descartes")
}

/// `|c_0| > sum_{i>=1} |c_i| r^i` for the Taylor coefficients of `q` at `m`.
fn dominant_constant(q: &IntPolynomial, m: &Dyadic, r: &Dyadic) -> bool {
    let c = taylor_shift(q, m).coeffs;
    if c.is_empty() {
        return false;
    }
    let mut rhs = Dyadic::zero();
    let mut rk = Dyadic::one();
    for ci in c.iter().skip(1) {
        rk = &rk * r;
        rhs = &rhs + &(&ci.abs() * &rk);
    }
    c[0].abs() > rhs
}

/// Exclusion/monotonicity test on an interval, exact over dyadics.
pub fn b_sqfree_eval(p: &IntPolynomial, p_prime: &IntPolynomial, j: &Interval) -> Verdict {
    let m = j.mid();
    let r = j.width().half();
    if dominant_constant(p, &m, &r) {
        return Verdict { outcome: Outcome::Exclude, detail: "eval:exclude".into() };
    }
    if dominant_constant(p_prime, &m, &r) {
        let s = p.sign_at(&j.lo) * p.sign_at(&j.hi);
        let outcome = if s < 0 { Outcome::Include } else { Outcome::Exclude };
        return Verdict { outcome, detail: "eval:monotone".into() };
    }
    Verdict { outcome: Outcome::Split, detail: "eval:split".into() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::sturm_chain;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(Dyadic::from(a), Dyadic::from(b)).unwrap()
    }

    #[test]
    fn sturm_examples() {
        let o = |c: &[i64], a, b| b_sturm(&sturm_chain(&p(c)).unwrap(), &iv(a, b)).outcome;
        assert_eq!(o(&[-2, 0, 1], 0, 2), Outcome::Include);
        assert_eq!(o(&[-1, 0, 1], -2, 2), Outcome::Split);
        assert_eq!(o(&[1, 0, 1], 0, 1), Outcome::Exclude);
    }

    #[test]
    fn descartes_examples() {
        assert_eq!(b_descartes(&p(&[-2, 0, 1]), &iv(0, 2)).outcome, Outcome::Include);
        assert_eq!(b_descartes(&p(&[1, 0, 1]), &iv(0, 1)).outcome, Outcome::Exclude);
        assert_eq!(b_descartes(&p(&[-1, 0, 1]), &iv(-2, 2)).outcome, Outcome::Split);
    }

    #[test]
    fn eval_examples() {
        let x = p(&[0, 1]);
        assert_eq!(b_sqfree_eval(&x, &x.derivative(), &iv(1, 2)).outcome, Outcome::Exclude);
        assert_eq!(b_sqfree_eval(&x, &x.derivative(), &iv(-1, 1)).outcome, Outcome::Include);
        let q = p(&[-1, 0, 1]);
        assert_eq!(b_sqfree_eval(&q, &q.derivative(), &iv(-2, 2)).outcome, Outcome::Split);
    }
}
