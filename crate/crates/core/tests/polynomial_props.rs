use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rootca::exactnum::Dyadic;
use rootca::polynomial::{discriminant, mobius_variation, square_free_check, sturm_chain, taylor_shift, DyadicPolynomial, IntPolynomial};
use rootca::roots::approximate_roots;

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPolynomial> {
    (1..=max_deg)
        .prop_flat_map(move |d| prop::collection::vec(-bound..=bound, d + 1))
        .prop_map(|mut c| {
            let d = c.len() - 1;
            if c[d] == 0 {
                c[d] = 1;
            }
            IntPolynomial::from_i64s(&c)
        })
}

fn square_free(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPolynomial> {
    poly(max_deg, bound).prop_filter("square-free", |p| p.is_square_free())
}

/// Dyadic in [-16, 16] with 8 fractional bits.
fn point() -> impl Strategy<Value = Dyadic> {
    (-4096i64..=4096).prop_map(|m| Dyadic::new(BigInt::from(m), -8))
}

fn interval() -> impl Strategy<Value = (Dyadic, Dyadic)> {
    (point(), point()).prop_filter_map("nonempty", |(a, b)| match a.cmp(&b) {
        std::cmp::Ordering::Less => Some((a, b)),
        std::cmp::Ordering::Greater => Some((b, a)),
        std::cmp::Ordering::Equal => None,
    })
}

/// Real roots strictly inside, on the left end, on the right end, counted from
/// certified disks far smaller than any root-to-endpoint distance.
fn oracle_counts(p: &IntPolynomial, a: &Dyadic, b: &Dyadic) -> (usize, bool, bool) {
    let rs = approximate_roots(p, &Dyadic::pow2(-400)).unwrap();
    let inside = rs
        .real_roots()
        .iter()
        .filter(|r| {
            let (lo, hi) = (&r.center.re - &r.radius, &r.center.re + &r.radius);
            &lo > a && &hi < b
        })
        .count();
    (inside, p.eval_dyadic(a).is_zero(), p.eval_dyadic(b).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sturm_count_matches_certified_roots(p in square_free(10, 255), (a, b) in interval()) {
        let (inside, at_a, at_b) = oracle_counts(&p, &a, &b);
        let chain = sturm_chain(&p).unwrap();
        prop_assert_eq!(chain.count_roots_interval(&a, &b), inside + at_b as usize);
        prop_assert_eq!(chain.count_roots_open(&a, &b), inside);
        prop_assert_eq!(chain.count_roots_closed(&a, &b), inside + at_a as usize + at_b as usize);
    }

    #[test]
    fn descartes_bounds_root_count_with_parity(p in square_free(10, 255), (a, b) in interval()) {
        let (inside, _, _) = oracle_counts(&p, &a, &b);
        let v = mobius_variation(&p, &a, &b);
        prop_assert!(v >= inside, "variation {} < {} roots", v, inside);
        prop_assert_eq!((v - inside) % 2, 0);
    }

    #[test]
    fn taylor_shift_round_trips(p in poly(12, 1000), c in point()) {
        let there = taylor_shift(&p, &c);
        let back = there.taylor_shift(&-&c);
        prop_assert_eq!(back, DyadicPolynomial::from_int(&p));
    }

    #[test]
    fn discriminant_vanishes_exactly_on_repeated_roots(q in poly(4, 20), r in poly(4, 20), square in any::<bool>()) {
        let p = if square { q.mul(&q).mul(&r) } else { q.mul(&r) };
        prop_assert_eq!(!discriminant(&p).is_zero(), square_free_check(&p));
        if square {
            prop_assert!(!square_free_check(&p));
        }
    }
}
