use num_bigint::BigInt;
use proptest::prelude::*;
use rootca::exactnum::{Dyadic, DyadicComplex};
use rootca::polynomial::{mobius_variation, sturm_chain, IntPolynomial};
use rootca::predicates::{one_circle_holds, two_circle_holds, Algorithm, Outcome, Predicate};
use rootca::roots::{approximate_roots, CertifiedRoot};
use rootca::subdivide::{Interval, Region, Square};

fn square_free(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPolynomial> {
    (1..=max_deg)
        .prop_flat_map(move |d| prop::collection::vec(-bound..=bound, d + 1))
        .prop_map(|mut c| {
            let d = c.len() - 1;
            if c[d] == 0 {
                c[d] = 1;
            }
            IntPolynomial::from_i64s(&c)
        })
        .prop_filter("square-free", |p| p.is_square_free())
}

fn dy(m: i64, e: i64) -> Dyadic {
    Dyadic::new(BigInt::from(m), e)
}

/// Interval inside [-8, 8] whose width is a power of two, as bisection produces.
fn interval() -> impl Strategy<Value = Interval> {
    (-6i64..=3).prop_flat_map(|k| {
        let n = 1i64 << (3 - k);
        (-n..n).prop_map(move |i| Interval::new(dy(i, k), dy(i + 1, k)).unwrap())
    })
}

fn square() -> impl Strategy<Value = Square> {
    (-6i64..=3).prop_flat_map(|k| {
        let n = 1i64 << (3 - k);
        (-n..n, -n..n).prop_map(move |(i, j)| Square::new(dy(i, k), dy(i + 1, k), dy(j, k), dy(j + 1, k)).unwrap())
    })
}

/// Exact count of certified roots inside the region, or `None` when some disk
/// touches the boundary and membership is not decided by the disks alone.
fn oracle_count(roots: &[CertifiedRoot], region: &Region) -> Option<usize> {
    let mut n = 0;
    for r in roots {
        let (c, rad) = (&r.center, &r.radius);
        let inside = match region {
            Region::Interval(j) => {
                if !r.is_real {
                    continue;
                }
                if rad.is_zero() {
                    j.lo < c.re && c.re < j.hi
                } else if &(&c.re + rad) < &j.lo || &(&c.re - rad) > &j.hi {
                    false
                } else if &(&c.re - rad) > &j.lo && &(&c.re + rad) < &j.hi {
                    true
                } else {
                    return None;
                }
            }
            Region::Square(s) => {
                if rad.is_zero() {
                    s.contains(c)
                } else {
                    let (xl, xh, yl, yh) = (&c.re - rad, &c.re + rad, &c.im - rad, &c.im + rad);
                    if xh < s.x0 || xl > s.x1 || yh < s.y0 || yl > s.y1 {
                        false
                    } else if xl > s.x0 && xh < s.x1 && yl > s.y0 && yh < s.y1 {
                        true
                    } else {
                        return None;
                    }
                }
            }
        };
        n += inside as usize;
    }
    Some(n)
}

fn check_against_oracle(id: Algorithm, p: &IntPolynomial, region: Region) -> Result<(), TestCaseError> {
    let Ok(pred) = Predicate::new(id, p) else { return Ok(()) };
    let rs = approximate_roots(p, &Dyadic::pow2(-200)).unwrap();
    let Some(count) = oracle_count(&rs.roots, &region) else { return Ok(()) };
    let v = pred.evaluate(&region).unwrap();
    match v.outcome {
        Outcome::Exclude => prop_assert_eq!(count, 0, "{} excluded {:?} ({})", id, region, v.detail),
        Outcome::Include => prop_assert_eq!(count, 1, "{} included {:?} ({})", id, region, v.detail),
        Outcome::Split => {}
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sturm_verdicts_match_oracle(p in square_free(8, 64), j in interval()) {
        check_against_oracle(Algorithm::Sturm, &p, Region::Interval(j))?;
    }

    #[test]
    fn descartes_verdicts_match_oracle(p in square_free(8, 64), j in interval()) {
        check_against_oracle(Algorithm::Descartes, &p, Region::Interval(j))?;
    }

    #[test]
    fn eval_verdicts_match_oracle(p in square_free(8, 64), j in interval()) {
        check_against_oracle(Algorithm::Eval, &p, Region::Interval(j))?;
    }

    #[test]
    fn csturm_verdicts_match_oracle(p in square_free(6, 16), s in square()) {
        check_against_oracle(Algorithm::Csturm, &p, Region::Square(s))?;
    }

    #[test]
    fn ceval_verdicts_match_oracle(p in square_free(6, 16), s in square()) {
        check_against_oracle(Algorithm::Ceval, &p, Region::Square(s))?;
    }

    #[test]
    fn circle_tests_bound_descartes_variation(p in square_free(8, 64), j in interval()) {
        let rs = approximate_roots(&p, &Dyadic::pow2(-64)).unwrap();
        let v = mobius_variation(&p, &j.lo, &j.hi);
        if one_circle_holds(&rs, &j).unwrap() {
            prop_assert_eq!(v, 0);
        }
        if two_circle_holds(&rs, &j).unwrap() {
            prop_assert!(v <= 1, "variation {}", v);
        }
    }

    #[test]
    fn descartes_dominates_sturm_with_same_parity(p in square_free(10, 255), j in interval()) {
        let count = sturm_chain(&p).unwrap().count_roots_open(&j.lo, &j.hi);
        let v = mobius_variation(&p, &j.lo, &j.hi);
        prop_assert!(v >= count);
        prop_assert_eq!((v - count) % 2, 0);
    }
}

#[test]
fn complex_oracle_sees_conjugate_pair() {
    let p = IntPolynomial::from_i64s(&[1, 0, 1]);
    let rs = approximate_roots(&p, &Dyadic::pow2(-64)).unwrap();
    let upper = Square::centered(&DyadicComplex::i(), &Dyadic::one());
    assert_eq!(oracle_count(&rs.roots, &Region::Square(upper)), Some(1));
}
