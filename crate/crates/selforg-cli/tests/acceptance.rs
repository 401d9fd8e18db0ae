//! Acceptance gate: one test per criterion, each printing a pass/fail line
//! (run with `cargo test -p selforg-cli --test acceptance -- --nocapture`
//! to see them). Every test pins its runtime budget.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selforg::predict::{predict_type_i, predict_type_ii, verify, BlockRepetitionSpec};
use selforg::taxonomy::{class_count, classify, enumerate_class, generate_seeded, SequenceClass};
use selforg::{serve, Algorithm, Class, CostModel, ListState, RequestSequence, Status};

fn criterion<F: FnOnce() + UnwindSafe>(number: u8, name: &str, budget: Duration, body: F) {
    let start = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = start.elapsed();
    let status = if outcome.is_ok() && elapsed <= budget {
        "PASS"
    } else {
        "FAIL"
    };
    println!("[acceptance] criterion {number:02} {name}: {status} ({elapsed:.2?}, budget {budget:?})");
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
    assert!(
        elapsed <= budget,
        "criterion {number:02} took {elapsed:?}, over its {budget:?} budget"
    );
}

fn mtf_full_total(list: &ListState, requests: &RequestSequence) -> u64 {
    serve(list, requests, Algorithm::MoveToFront, CostModel::Full)
        .expect("simulation succeeds")
        .total_cost
}

fn triangular(l: u64) -> u64 {
    l * (l + 1) / 2
}

#[test]
fn criterion_01_worked_trace_reproduction() {
    criterion(1, "worked trace reproduction", Duration::from_millis(1), || {
        let list = ListState::from_ids(&[1, 2, 3, 4]).unwrap();
        let requests = RequestSequence::from_ids(&[3, 1, 1, 4, 2]).unwrap();
        let trace = serve(&list, &requests, Algorithm::MoveToFront, CostModel::Full).unwrap();
        let costs: Vec<u64> = trace.steps.iter().map(|s| s.access_cost).collect();
        assert_eq!(costs, [3, 2, 1, 4, 4]);
        assert_eq!(trace.total_cost, 14);
    });
}

#[test]
fn criterion_02_three_element_permutation_costs() {
    criterion(2, "three-element permutation costs", Duration::from_millis(1), || {
        let list = ListState::numbered(3).unwrap();
        let perms = [
            ([1, 2, 3], 6),
            ([1, 3, 2], 7),
            ([2, 1, 3], 7),
            ([2, 3, 1], 8),
            ([3, 1, 2], 8),
            ([3, 2, 1], 9),
        ];
        for (perm, expected) in perms {
            let requests = RequestSequence::from_ids(&perm).unwrap();
            assert_eq!(mtf_full_total(&list, &requests), expected, "perm {perm:?}");
        }
    });
}

#[test]
fn criterion_03_list_order_cost_is_triangular() {
    criterion(3, "list-order cost is triangular", Duration::from_millis(10), || {
        for l in 1..=12u64 {
            let list = ListState::numbered(l as usize).unwrap();
            let requests = RequestSequence::new(list.elements()).unwrap();
            assert_eq!(mtf_full_total(&list, &requests), triangular(l), "l={l}");
            let report = verify(&predict_type_i(l).unwrap(), &list, &requests).unwrap();
            assert_eq!(report.status, Status::Match, "l={l}");
        }
    });
}

#[test]
fn criterion_04_reversal_cost_is_the_square_and_extreme() {
    criterion(4, "reversal cost is the square and extreme", Duration::from_secs(30), || {
        for l in 1..=12u64 {
            let list = ListState::numbered(l as usize).unwrap();
            let requests = RequestSequence::new(list.reversed().elements()).unwrap();
            assert_eq!(mtf_full_total(&list, &requests), l * l, "l={l}");
            let report = verify(&predict_type_ii(l).unwrap(), &list, &requests).unwrap();
            assert_eq!(report.status, Status::Match, "l={l}");
        }
        for l in 1..=8u64 {
            let list = ListState::numbered(l as usize).unwrap();
            let perms = enumerate_class(&list, &SequenceClass::class_a(), l as usize).unwrap();
            let costs: Vec<u64> = perms.iter().map(|p| mtf_full_total(&list, p)).collect();
            let min = *costs.iter().min().unwrap();
            let max = *costs.iter().max().unwrap();
            assert_eq!(min, triangular(l), "minimum at l={l}");
            assert_eq!(max, l * l, "maximum at l={l}");
            let identity = RequestSequence::new(list.elements()).unwrap();
            let reversal = RequestSequence::new(list.reversed().elements()).unwrap();
            assert_eq!(mtf_full_total(&list, &identity), min, "identity attains the minimum");
            assert_eq!(mtf_full_total(&list, &reversal), max, "reversal attains the maximum");
        }
    });
}

#[test]
fn criterion_05_other_permutations_stay_strictly_between() {
    criterion(5, "other permutations stay strictly between", Duration::from_secs(30), || {
        for l in 3..=8u64 {
            let list = ListState::numbered(l as usize).unwrap();
            let others = enumerate_class(&list, &SequenceClass::type_iii(), l as usize).unwrap();
            assert_eq!(others.len() as u64, (1..=l).product::<u64>() - 2);
            for perm in &others {
                let cost = mtf_full_total(&list, perm);
                assert!(
                    triangular(l) < cost && cost < l * l,
                    "l={l} perm {perm} cost {cost}"
                );
            }
        }
    });
}

#[test]
fn criterion_06_single_element_runs_and_their_envelope() {
    criterion(6, "single-element runs and their envelope", Duration::from_secs(1), || {
        for l in 1..=8usize {
            let list = ListState::numbered(l).unwrap();
            for n in 1..=16u64 {
                let mut costs = Vec::with_capacity(l);
                for p in 1..=l {
                    let element = list.elements()[p - 1];
                    let requests = RequestSequence::new(&vec![element; n as usize]).unwrap();
                    let cost = mtf_full_total(&list, &requests);
                    assert_eq!(cost, n + p as u64 - 1, "l={l} p={p} n={n}");
                    costs.push(cost);
                }
                assert_eq!(*costs.iter().min().unwrap(), n, "minimum over p at l={l} n={n}");
                assert_eq!(
                    *costs.iter().max().unwrap(),
                    n + l as u64 - 1,
                    "maximum over p at l={l} n={n}"
                );
                if n == l as u64 {
                    assert_eq!(*costs.iter().max().unwrap(), 2 * n - 1);
                }
            }
        }
    });
}

#[test]
fn criterion_07_uniform_block_expansion_totals() {
    criterion(7, "uniform block expansion totals", Duration::from_secs(5), || {
        let list = ListState::numbered(3).unwrap();
        let base = RequestSequence::from_ids(&[2, 1, 3]).unwrap();
        let base_cost = mtf_full_total(&list, &base);
        assert_eq!(base_cost, 7);
        let k = 2u64;
        let spec = BlockRepetitionSpec::uniform(base, k).unwrap();
        let expanded = spec.expand();
        assert_eq!(expanded.to_string(), "2 2 1 1 3 3");
        assert_eq!(mtf_full_total(&list, &expanded), 10);
        assert_eq!(10, base_cost + 3 * (k - 1));

        let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
        for trial in 0..1000 {
            let l = rng.random_range(1..=8usize);
            let list = ListState::numbered(l).unwrap();
            let mut elements = list.elements().to_vec();
            elements.shuffle(&mut rng);
            let base = RequestSequence::new(&elements).unwrap();
            let base_cost = mtf_full_total(&list, &base);
            let k = rng.random_range(1..=5u64);
            let spec = BlockRepetitionSpec::uniform(base, k).unwrap();
            let total = mtf_full_total(&list, &spec.expand());
            assert_eq!(total, base_cost + l as u64 * (k - 1), "trial {trial}");
        }
    });
}

#[test]
fn criterion_08_varying_block_expansion_totals() {
    criterion(8, "varying block expansion totals", Duration::from_secs(5), || {
        let list = ListState::numbered(3).unwrap();
        let base = RequestSequence::from_ids(&[2, 1, 3]).unwrap();
        let base_cost = mtf_full_total(&list, &base);
        let spec = BlockRepetitionSpec::new(base, vec![2, 3, 4]).unwrap();
        let expanded = spec.expand();
        assert_eq!(expanded.to_string(), "2 2 1 1 1 3 3 3 3");
        assert_eq!(mtf_full_total(&list, &expanded), 13);
        assert_eq!(13, base_cost + 1 + 2 + 3);

        let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0008);
        for trial in 0..1000 {
            let l = rng.random_range(1..=8usize);
            let list = ListState::numbered(l).unwrap();
            let mut elements = list.elements().to_vec();
            elements.shuffle(&mut rng);
            let base = RequestSequence::new(&elements).unwrap();
            let base_cost = mtf_full_total(&list, &base);
            let repeats: Vec<u64> = (0..l).map(|_| rng.random_range(1..=5u64)).collect();
            let slack: u64 = repeats.iter().map(|k| k - 1).sum();
            let spec = BlockRepetitionSpec::new(base, repeats).unwrap();
            let total = mtf_full_total(&list, &spec.expand());
            assert_eq!(total, base_cost + slack, "trial {trial}");
        }
    });
}

fn all_patterns() -> Vec<SequenceClass> {
    vec![
        SequenceClass::type_i(),
        SequenceClass::type_ii(),
        SequenceClass::type_iii(),
        SequenceClass::type_iv(None).unwrap(),
        SequenceClass::type_v(),
        SequenceClass::class_a(),
        SequenceClass::class_b(),
        SequenceClass::type_vi(None).unwrap(),
        SequenceClass::type_vii(None).unwrap(),
        SequenceClass::c_a_i(),
        SequenceClass::c_a_ii(),
        SequenceClass::c_b(),
        SequenceClass::class_d(),
    ]
}

#[test]
fn criterion_09_every_sequence_gets_exactly_one_leaf() {
    criterion(9, "every sequence gets exactly one leaf", Duration::from_secs(30), || {
        for l in 1..=4usize {
            let list = ListState::numbered(l).unwrap();
            for n in l..=8usize {
                let mut by_class: BTreeMap<Class, u128> = BTreeMap::new();
                let mut total: u128 = 0;
                let mut digits = vec![0usize; n];
                loop {
                    let ids: Vec<u64> = digits.iter().map(|&d| d as u64 + 1).collect();
                    let requests = RequestSequence::from_ids(&ids).unwrap();
                    let observed = classify(&list, &requests).unwrap();
                    *by_class.entry(observed.class()).or_default() += 1;
                    total += 1;

                    let mut i = n;
                    loop {
                        if i == 0 {
                            break;
                        }
                        digits[i - 1] += 1;
                        if digits[i - 1] < l {
                            break;
                        }
                        digits[i - 1] = 0;
                        i -= 1;
                    }
                    if i == 0 {
                        break;
                    }
                }
                assert_eq!(total, (l as u128).pow(n as u32), "l={l} n={n}");

                let count_or_zero = |pattern: SequenceClass| match class_count(l, &pattern, n) {
                    Ok(count) => count,
                    Err(selforg::taxonomy::Error::InconsistentSpec(_)) => 0,
                    Err(error) => panic!("counting {pattern} at l={l} n={n}: {error}"),
                };
                for (&class, &count) in &by_class {
                    let expected = match class {
                        Class::A => count_or_zero(SequenceClass::class_a()),
                        Class::B => count_or_zero(SequenceClass::class_b()),
                        Class::CaI => {
                            count_or_zero(SequenceClass::c_a_i())
                                + count_or_zero(SequenceClass::type_vi(None).unwrap())
                                + count_or_zero(SequenceClass::type_vii(None).unwrap())
                        }
                        Class::CaII => count_or_zero(SequenceClass::c_a_ii()),
                        Class::Cb => count_or_zero(SequenceClass::c_b()),
                        Class::D => count_or_zero(SequenceClass::class_d()),
                    };
                    assert_eq!(count, expected, "class {class} at l={l} n={n}");
                }
                let partition: u128 = by_class.values().sum();
                assert_eq!(partition, total, "classes partition the space at l={l} n={n}");

                for pattern in all_patterns() {
                    if class_count(l, &pattern, n).is_err() {
                        continue;
                    }
                    for seed in 0..3u64 {
                        let sequence = generate_seeded(&list, &pattern, n, seed).unwrap();
                        assert_eq!(sequence.len(), n);
                        let observed = classify(&list, &sequence).unwrap();
                        if pattern.type_tag() == Some(selforg::TypeTag::IV) {
                            // Single-element runs are constructed for any
                            // n >= 1, but they land in the B leaf only when
                            // n = l on a list of at least two elements.
                            let first = sequence.requests()[0];
                            assert!(sequence.requests().iter().all(|&r| r == first));
                            assert!(list.contains(first));
                            if n != l || l < 2 {
                                continue;
                            }
                        }
                        assert!(
                            pattern.admits(&observed),
                            "generated {sequence} for {pattern}, classified {observed}"
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_10_partial_totals_trail_full_totals_by_n() {
    criterion(10, "partial totals trail full totals by n", Duration::from_secs(1), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0010);
        for trial in 0..1000 {
            let l = rng.random_range(1..=8usize);
            let mut pool: Vec<u64> = (1..=40).collect();
            pool.shuffle(&mut rng);
            let list = ListState::from_ids(&pool[..l]).unwrap();
            let n = rng.random_range(1..=20usize);
            let ids: Vec<u64> = (0..n)
                .map(|_| pool[rng.random_range(0..l)])
                .collect();
            let requests = RequestSequence::from_ids(&ids).unwrap();
            for algorithm in Algorithm::ALL {
                let full = serve(&list, &requests, algorithm, CostModel::Full).unwrap();
                let partial = serve(&list, &requests, algorithm, CostModel::Partial).unwrap();
                assert_eq!(
                    partial.total_cost,
                    full.total_cost - n as u64,
                    "trial {trial} algorithm {algorithm}"
                );
            }
        }
    });
}

#[test]
fn criterion_11_verify_runs_are_byte_identical() {
    criterion(11, "verify runs are byte-identical", Duration::from_secs(30), || {
        let dir = tempfile::tempdir().expect("temp dir");
        let mut outputs = Vec::new();
        for name in ["a.csv", "b.csv"] {
            let path = dir.path().join(name);
            let status = std::process::Command::new(env!("CARGO_BIN_EXE_selforg"))
                .args([
                    "verify",
                    "--seed",
                    "2024",
                    "--trials",
                    "50",
                    "--l-max",
                    "5",
                    "--out",
                    path.to_str().expect("UTF-8 path"),
                ])
                .status()
                .expect("running the selforg binary");
            assert!(status.success());
            outputs.push(std::fs::read(&path).expect("reading the output"));
        }
        assert_eq!(outputs[0], outputs[1], "outputs differ between identical runs");
        assert!(!outputs[0].is_empty());
    });
}
