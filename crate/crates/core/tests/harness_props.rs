use proptest::prelude::*;
use rootca::harness::{replay, run_experiment, ExperimentConfig, Family, Report};
use rootca::predicates::Algorithm;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (1usize..=6, 1u64..=6, any::<u64>()).prop_map(|(d, l, seed)| Family::Random { d, l, seed }),
        (1usize..=5).prop_map(|n| Family::Wilkinson { n }),
        (1usize..=6).prop_map(|n| Family::Chebyshev { n }),
        prop::collection::vec(-9i64..=9, 2..=5).prop_map(|c| {
            Family::Explicit { poly: c.iter().map(i64::to_string).collect::<Vec<_>>().join(" ") }
        }),
    ]
}

fn algorithms() -> Vec<Algorithm> {
    vec![Algorithm::Sturm, Algorithm::Descartes, Algorithm::Eval]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn replay_reproduces_records(fams in prop::collection::vec(family(), 1..4)) {
        let cfg = ExperimentConfig::new(fams, algorithms());
        let report = run_experiment(&cfg).unwrap();
        prop_assert_eq!(report.records.len(), cfg.families.len() * 3);
        for r in &report.records {
            prop_assert_eq!(replay(&r.case, &cfg).without_timing(), r.without_timing());
        }
        let back = Report::from_jsonl(&report.to_jsonl().unwrap()).unwrap();
        prop_assert_eq!(back, report);
    }

    #[test]
    fn a_failing_case_leaves_the_others_alone(fams in prop::collection::vec(family(), 1..4), at in any::<prop::sample::Index>()) {
        let alone = run_experiment(&ExperimentConfig::new(fams.clone(), algorithms())).unwrap();
        let mut mixed = fams.clone();
        let k = at.index(fams.len() + 1);
        // A double root: rejected by every predicate.
        mixed.insert(k, Family::Explicit { poly: "1 -2 1".into() });
        let with_bad = run_experiment(&ExperimentConfig::new(mixed, algorithms())).unwrap();
        let bad: Vec<_> = with_bad.records.iter().filter(|r| r.case.index == k).collect();
        prop_assert_eq!(bad.len(), 3);
        prop_assert!(bad.iter().all(|r| r.error.is_some()));
        let rest: Vec<_> = with_bad.records.iter().filter(|r| r.case.index != k).collect();
        prop_assert_eq!(rest.len(), alone.records.len());
        for (a, b) in alone.records.iter().zip(rest) {
            let mut b = b.without_timing();
            b.case.index = a.case.index;
            prop_assert_eq!(a.without_timing(), b);
        }
    }
}
