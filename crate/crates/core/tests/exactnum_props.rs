use num_bigint::BigInt;
use proptest::prelude::*;
use rootca::exactnum::{dyadic_arith, enclosure_arith, Dyadic, DyadicOp, EnclosureOp, RealEnclosure};

fn dyadic() -> impl Strategy<Value = Dyadic> {
    (any::<i64>(), -80i64..80).prop_map(|(m, e)| Dyadic::new(BigInt::from(m), e))
}

/// Enclosure together with a point inside it.
fn enclosure_with_point() -> impl Strategy<Value = (RealEnclosure, Dyadic)> {
    (dyadic(), 0u64..1 << 20, 0u64..1 << 20, -40i64..10).prop_map(|(c, a, b, e)| {
        let lo = &c - &Dyadic::new(BigInt::from(a), e);
        let hi = &c + &Dyadic::new(BigInt::from(b), e);
        (RealEnclosure::new(lo, hi).unwrap(), c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn normalize_is_idempotent(m in any::<i64>(), e in -200i64..200, shift in 0u32..40) {
        let raw = Dyadic::new(BigInt::from(m) << shift, e - shift as i64);
        let once = raw.normalize();
        prop_assert_eq!(once.normalize(), once.clone());
        prop_assert_eq!(once, raw);
    }

    #[test]
    fn exact_ops_land_in_enclosures(
        (x, px) in enclosure_with_point(),
        (y, py) in enclosure_with_point(),
        prec in 2u32..128,
    ) {
        let sum = enclosure_arith(&x, &y, EnclosureOp::Add, prec).unwrap();
        prop_assert!(sum.contains(&dyadic_arith(&px, &py, DyadicOp::Add)));
        let diff = enclosure_arith(&x, &y, EnclosureOp::Sub, prec).unwrap();
        prop_assert!(diff.contains(&dyadic_arith(&px, &py, DyadicOp::Sub)));
        let prod = enclosure_arith(&x, &y, EnclosureOp::Mul, prec).unwrap();
        prop_assert!(prod.contains(&dyadic_arith(&px, &py, DyadicOp::Mul)));
        match enclosure_arith(&x, &y, EnclosureOp::Div, prec) {
            Ok(q) => {
                // px / py in [lo, hi] without leaving exact arithmetic.
                prop_assert!(!y.contains_zero());
                let (lo, hi) = (&q.lo * &py, &q.hi * &py);
                if py.is_positive() {
                    prop_assert!(lo <= px && px <= hi);
                } else {
                    prop_assert!(hi <= px && px <= lo);
                }
            }
            Err(_) => prop_assert!(y.contains_zero()),
        }
    }

    #[test]
    fn halving_then_doubling_is_identity(x in dyadic(), k in 0usize..200) {
        let mut y = x.clone();
        for _ in 0..k {
            y = dyadic_arith(&y, &y, DyadicOp::Half);
        }
        for _ in 0..k {
            y = y.double();
        }
        prop_assert_eq!(y, x);
    }

    #[test]
    fn directed_rounding_brackets(x in dyadic(), prec in 1u32..64) {
        use rootca::exactnum::Round;
        let (dn, up) = (x.round(prec, Round::Down), x.round(prec, Round::Up));
        prop_assert!(dn <= x && x <= up);
        prop_assert!(dn.bits() <= prec as u64 + 1 && up.bits() <= prec as u64 + 1);
    }
}
