mod common;

use picod::decoder::DecodingSemantics;
use picod::oracle::*;
use picod::ProblemInstance;

const FP: DecodingSemantics = DecodingSemantics::FixedPoint;

fn inst(p: usize, k: usize) -> ProblemInstance {
    ProblemInstance::new(p, k).unwrap()
}

fn subsets(p: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << p).map(move |m| (0..p).filter(|b| m >> b & 1 == 1).collect())
}

#[test]
fn no_single_symbol_covers_seven_four() {
    // reference scan over all 127 symbols
    let covering = subsets(7).filter(|s| {
        (0..7).all(|c| !common::fixed_point(7, 4, std::slice::from_ref(s), c).is_empty())
    });
    assert_eq!(covering.count(), 0);
    let cert = oracle_min_length(&inst(7, 4), FP, 2).unwrap();
    assert_eq!(cert.value(), Some(2));
    let w = cert.witness().unwrap().support_lists();
    assert!((0..7).all(|c| !common::fixed_point(7, 4, &w, c).is_empty()));
}

#[test]
fn min_length_agrees_with_reference_scan() {
    for p in 2..=7 {
        for k in 1..p {
            let single = subsets(p).any(|s| {
                (0..p).all(|c| !common::fixed_point(p, k, std::slice::from_ref(&s), c).is_empty())
            });
            let cert = oracle_min_length(&inst(p, k), FP, 2).unwrap();
            assert_eq!(cert.value() == Some(1), single, "P={p} k={k}");
        }
    }
}

#[test]
fn exactly_one_verdicts() {
    for (p, k) in [(5, 1), (7, 1), (5, 3), (7, 5)] {
        assert!(
            oracle_exactly_one_feasible(&inst(p, k), FP)
                .unwrap()
                .is_infeasible(),
            "P={p} k={k}"
        );
    }
    for (p, k) in [(6, 1), (6, 4)] {
        let cert = oracle_exactly_one_feasible(&inst(p, k), FP).unwrap();
        let w = cert.witness().unwrap().support_lists();
        for c in 0..p {
            assert_eq!(common::fixed_point(p, k, &w, c).len(), 1);
        }
    }
    let c = oracle_exactly_one_feasible(&inst(6, 1), FP).unwrap();
    assert_eq!(
        c.witness().unwrap().support_lists(),
        vec![vec![0, 1], vec![2, 3], vec![4, 5]]
    );
}

#[test]
fn pruning_does_not_change_certificates() {
    for p in 2..=EXHAUSTIVE_MAX_P {
        for k in 1..p {
            for sem in DecodingSemantics::ALL {
                let a = oracle_exactly_one_feasible(&inst(p, k), sem).unwrap();
                let b = oracle_exactly_one_exhaustive(&inst(p, k), sem).unwrap();
                assert!(
                    a.same_verdict(&b),
                    "P={p} k={k} {sem}: {:?} vs {:?}",
                    a.result,
                    b.result
                );
            }
        }
    }
}

#[test]
fn exhaustive_rejects_large_instances() {
    assert!(oracle_exactly_one_exhaustive(&inst(6, 1), FP).is_err());
    assert!(oracle_exactly_one_feasible(&inst(9, 1), FP).is_err());
    assert!(oracle_exactly_one_feasible(&inst(10, 1), DecodingSemantics::LinearClosure).is_ok());
}

#[test]
fn max_total_examples() {
    assert_eq!(
        oracle_max_total(&inst(10, 6), 2, FP).unwrap().value(),
        Some(20)
    );
    assert_eq!(
        oracle_max_total(&inst(6, 4), 2, FP).unwrap().value(),
        Some(12)
    );
    assert_eq!(
        oracle_max_total(&inst(6, 4), 0, FP).unwrap().value(),
        Some(0)
    );
}

#[test]
fn max_total_matches_reference_pairs() {
    for (p, k) in [(5, 2), (6, 3), (7, 4)] {
        let best = subsets(p)
            .flat_map(|a| subsets(p).map(move |b| vec![a.clone(), b]))
            .filter(|pair| pair[0] < pair[1])
            .map(|pair| {
                (0..p)
                    .map(|c| common::fixed_point(p, k, &pair, c).len())
                    .sum::<usize>()
            })
            .max()
            .unwrap();
        assert_eq!(
            oracle_max_total(&inst(p, k), 2, FP).unwrap().value(),
            Some(best),
            "P={p} k={k}"
        );
    }
}

#[test]
fn certificates_do_not_depend_on_thread_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            vec![
                oracle_min_length(&inst(9, 4), FP, 2).unwrap().to_json(),
                oracle_max_total(&inst(8, 5), 2, FP).unwrap().to_json(),
                oracle_exactly_one_feasible(&inst(8, 3), FP)
                    .unwrap()
                    .to_json(),
            ]
        })
    };
    assert_eq!(run(1), run(4));
}
