//! Randomized invariant checks shared by the `invariants` and `acceptance`
//! test targets. Each check runs `cases` proptest cases and reports the
//! minimal failing input on error.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use owtm::meta::{accuracy, Knn, Logistic, MetaDataset};
use owtm::novelty::{ClassScore, MinMaxStats, MulticlassTm, NoveltyFeatureRow, RuleClassifier};
use owtm::text::{binarize, FeatureVector, Vocabulary};
use owtm::tm::{
    feedback_probability, AutomatonState, Clause, Literal, NegatedLiterals, Polarity, TrainParams,
    TsetlinMachine,
};

pub type Check = fn(u32) -> Result<(), String>;

/// Every check, by name.
pub const ALL: &[(&str, Check)] = &[
    ("automaton state bounds", state_bounds),
    ("vote bound", vote_bound),
    ("clause monotonicity", clause_monotonicity),
    ("serialization round trip", serialization_round_trip),
    ("deterministic re-run", deterministic_refit),
    ("normalization range", normalization_range),
    ("feedback probability range", feedback_probability_range),
    ("polarity completeness", polarity_completeness),
    ("rule threshold monotonicity", rule_threshold_monotonicity),
    ("logistic loss non-increasing", logistic_loss_monotone),
    ("knn permutation invariance", knn_permutation_invariance),
    ("accuracy of identical vectors", accuracy_identity),
    ("binarize set semantics", binarize_set_semantics),
];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn bits(len: usize) -> impl Strategy<Value = FeatureVector> {
    prop::collection::vec(any::<bool>(), len).prop_map(FeatureVector::from_bits)
}

fn params_strategy() -> impl Strategy<Value = TrainParams> {
    (
        1usize..=4,
        1u32..=6,
        1.5f64..8.0,
        1usize..=3,
        1u16..=8,
        any::<u64>(),
        any::<bool>(),
    )
        .prop_map(|(half, t, s, epochs, n, seed, std)| TrainParams {
            num_clauses: 2 * half,
            vote_target: t,
            sensitivity: s,
            epochs,
            states_per_action: n,
            seed,
            negated_literals: if std {
                NegatedLiterals::Standard
            } else {
                NegatedLiterals::TypeIiOnly
            },
        })
}

/// Training problem: params, vocabulary size and labelled examples.
fn problem() -> impl Strategy<Value = (TrainParams, usize, Vec<(FeatureVector, bool)>)> {
    (params_strategy(), 1usize..=5).prop_flat_map(|(p, o)| {
        let ex = prop::collection::vec((bits(o), any::<bool>()), 1..=8);
        (Just(p), Just(o), ex)
    })
}

fn random_clause(polarity: Polarity, o: usize, n: u16) -> impl Strategy<Value = Clause> {
    prop::collection::vec(1..=2 * n, 2 * o).prop_map(move |states| {
        let automata = states
            .into_iter()
            .map(|v| AutomatonState::new(v, n).unwrap())
            .collect();
        Clause::from_states(polarity, n, automata).unwrap()
    })
}

/// Machine with arbitrary (valid) automaton states.
fn random_machine() -> impl Strategy<Value = TsetlinMachine> {
    (1usize..=5, 1usize..=4, 1u16..=6).prop_flat_map(|(o, half, n)| {
        (
            prop::collection::vec(random_clause(Polarity::Positive, o, n), half),
            prop::collection::vec(random_clause(Polarity::Negative, o, n), half),
        )
            .prop_map(move |(pos, neg)| {
                let params = TrainParams {
                    states_per_action: n,
                    ..TrainParams::default()
                };
                TsetlinMachine::from_clauses(o, params, pos, neg).unwrap()
            })
    })
}

fn machine_and_input() -> impl Strategy<Value = (TsetlinMachine, FeatureVector)> {
    random_machine().prop_flat_map(|m| {
        let o = m.vocab_size();
        (Just(m), bits(o))
    })
}

pub fn state_bounds(cases: u32) -> Result<(), String> {
    run(cases, problem(), |(p, o, ex)| {
        let mut m = TsetlinMachine::new(o, p.clone()).unwrap();
        m.fit(&ex).unwrap();
        let n = p.states_per_action;
        for c in m.clauses() {
            for a in c.automata() {
                prop_assert!(
                    (1..=2 * n).contains(&a.value()),
                    "state {} with N={n}",
                    a.value()
                );
            }
        }
        Ok(())
    })
}

pub fn vote_bound(cases: u32) -> Result<(), String> {
    run(cases, machine_and_input(), |(m, x)| {
        let v = m.vote_sum(&x).unwrap();
        prop_assert!(v.unsigned_abs() as usize <= m.num_clauses() / 2);
        Ok(())
    })
}

pub fn clause_monotonicity(cases: u32) -> Result<(), String> {
    let strat = (1usize..=6, 1u16..=6)
        .prop_flat_map(|(o, n)| (random_clause(Polarity::Positive, o, n), bits(o)));
    run(cases, strat, |(clause, x)| {
        let before = clause.evaluate(&x).unwrap();
        for k in 0..x.len() {
            // The literal that x satisfies at feature k and that the flip
            // will break.
            let broken = Literal {
                feature: k,
                negated: !x.get(k),
            };
            if !clause.is_included(broken) {
                continue;
            }
            let mut y = x.clone();
            y.set(k, !x.get(k));
            let after = clause.evaluate(&y).unwrap();
            prop_assert!(!(!before && after), "flip of bit {k} turned 0 into 1");
            prop_assert!(
                !after,
                "an unsatisfied included literal must block the clause"
            );
        }
        Ok(())
    })
}

pub fn serialization_round_trip(cases: u32) -> Result<(), String> {
    run(cases, (random_machine(), random_machine()), |(a, b)| {
        let bytes = a.to_bytes();
        let back = TsetlinMachine::from_bytes(&bytes).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_bytes(), bytes);
        if a.vocab_size() == b.vocab_size() {
            let mtm = MulticlassTm::new(vec!["a".into(), "b".into()], vec![a, b]).unwrap();
            let bytes = mtm.to_bytes();
            let back = MulticlassTm::from_bytes(&bytes).unwrap();
            prop_assert_eq!(&back, &mtm);
            prop_assert_eq!(back.to_bytes(), bytes);
        }
        Ok(())
    })
}

pub fn deterministic_refit(cases: u32) -> Result<(), String> {
    run(cases, problem(), |(p, o, ex)| {
        let mut a = TsetlinMachine::new(o, p.clone()).unwrap();
        let mut b = TsetlinMachine::new(o, p).unwrap();
        a.fit(&ex).unwrap();
        b.fit(&ex).unwrap();
        prop_assert_eq!(a.to_bytes(), b.to_bytes());
        Ok(())
    })
}

pub fn normalization_range(cases: u32) -> Result<(), String> {
    let strat = (1usize..=6).prop_flat_map(|w| {
        // Small integer ranges make constant columns common.
        let row = prop::collection::vec((0u8..4).prop_map(f64::from), w);
        let wide = prop::collection::vec(-10.0f64..10.0, w);
        (
            prop::collection::vec(row, 1..=6),
            prop::collection::vec(wide, 1..=6),
        )
    });
    run(cases, strat, |(train, test)| {
        let stats = MinMaxStats::fit(&train).unwrap();
        for row in stats.transform(&test).unwrap() {
            for (j, v) in row.iter().enumerate() {
                prop_assert!((0.0..=1.0).contains(v), "{v}");
                if stats.min[j] == stats.max[j] {
                    prop_assert_eq!(*v, 0.0);
                }
            }
        }
        for row in stats.transform(&train).unwrap() {
            prop_assert!(row.iter().all(|v| (0.0..=1.0).contains(v)));
        }
        Ok(())
    })
}

pub fn feedback_probability_range(cases: u32) -> Result<(), String> {
    run(cases, (1u32..=1000, -5000i64..=5000), |(t, v)| {
        let p1 = feedback_probability(v, t, true);
        let p0 = feedback_probability(v, t, false);
        prop_assert!((0.0..=1.0).contains(&p1) && (0.0..=1.0).contains(&p0));
        prop_assert!((p1 + p0 - 1.0).abs() < 1e-12);
        Ok(())
    })
}

pub fn polarity_completeness(cases: u32) -> Result<(), String> {
    run(cases, machine_and_input(), |(m, x)| {
        let (pos, neg) = m.match_counts(&x).unwrap();
        let firing = m
            .clauses()
            .iter()
            .filter(|c| c.evaluate(&x).unwrap())
            .count();
        prop_assert_eq!(pos + neg, firing);
        prop_assert!(pos <= m.num_clauses() / 2 && neg <= m.num_clauses() / 2);
        prop_assert_eq!(m.vote_sum(&x).unwrap(), pos as i64 - neg as i64);
        Ok(())
    })
}

pub fn rule_threshold_monotonicity(cases: u32) -> Result<(), String> {
    let strat = (
        prop::collection::vec((0usize..=50, 0usize..=50), 1..=4),
        0usize..=50,
        0usize..=50,
    );
    run(cases, strat, |(counts, a, b)| {
        let row = NoveltyFeatureRow {
            scores: counts
                .iter()
                .enumerate()
                .map(|(i, &(p, n))| ClassScore {
                    label: format!("c{i}"),
                    pos_sum: p,
                    neg_sum: n,
                })
                .collect(),
        };
        let (lo, hi) = (a.min(b), a.max(b));
        let known_hi = RuleClassifier::new(hi, 100).unwrap().is_known(&row);
        let known_lo = RuleClassifier::new(lo, 100).unwrap().is_known(&row);
        prop_assert!(
            !known_hi || known_lo,
            "raising {lo} to {hi} made a novel row known"
        );
        Ok(())
    })
}

fn two_label_dataset() -> impl Strategy<Value = MetaDataset<f64>> {
    (1usize..=4).prop_flat_map(|w| {
        prop::collection::vec(
            (prop::collection::vec(0.0f64..=1.0, w), any::<bool>()),
            2..=30,
        )
        .prop_filter("needs both labels", |rows| {
            rows.iter().any(|r| r.1) && rows.iter().any(|r| !r.1)
        })
        .prop_map(|rows| {
            let (x, y) = rows.into_iter().unzip();
            MetaDataset::new(x, y).unwrap()
        })
    })
}

pub fn logistic_loss_monotone(cases: u32) -> Result<(), String> {
    run(cases, two_label_dataset(), |ds| {
        let (_, history) = Logistic::fit_with_history(0.5, 40, &ds).unwrap();
        for w in history.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9, "loss rose from {} to {}", w[0], w[1]);
        }
        Ok(())
    })
}

pub fn knn_permutation_invariance(cases: u32) -> Result<(), String> {
    let strat = (1usize..=3).prop_flat_map(|w| {
        (
            prop::collection::vec(
                (prop::collection::vec(0.0f64..=1.0, w), any::<bool>()),
                1..=12,
            ),
            prop::collection::vec(0.0f64..=1.0, w),
            any::<u64>(),
        )
    });
    run(cases, strat, |(rows, query, seed)| {
        let dist =
            |r: &Vec<f64>| -> f64 { r.iter().zip(&query).map(|(a, b)| (a - b) * (a - b)).sum() };
        let mut d: Vec<f64> = rows.iter().map(|(r, _)| dist(r)).collect();
        d.sort_by(f64::total_cmp);
        prop_assume!(d.windows(2).all(|w| w[0] != w[1]));

        let (x, y): (Vec<_>, Vec<_>) = rows.iter().cloned().unzip();
        let base = Knn::fit(1, &MetaDataset::new(x, y).unwrap()).unwrap();
        let mut perm: Vec<usize> = (0..rows.len()).collect();
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let (px, py): (Vec<_>, Vec<_>) = perm.iter().map(|&i| rows[i].clone()).unzip();
        let shuffled = Knn::fit(1, &MetaDataset::new(px, py).unwrap()).unwrap();
        prop_assert_eq!(
            base.predict(&query).unwrap(),
            shuffled.predict(&query).unwrap()
        );
        Ok(())
    })
}

pub fn accuracy_identity(cases: u32) -> Result<(), String> {
    run(cases, prop::collection::vec(any::<bool>(), 1..=64), |p| {
        prop_assert_eq!(accuracy(&p, &p).unwrap(), 1.0);
        Ok(())
    })
}

pub fn binarize_set_semantics(cases: u32) -> Result<(), String> {
    let word = prop::sample::select(vec!["alpha", "beta", "gamma", "delta", "omega", "zeta"]);
    let strat = (prop::collection::vec(word.clone(), 0..=12), 1usize..=4);
    let vocab = Vocabulary::from_terms(["alpha", "beta", "gamma", "delta"]).unwrap();
    run(cases, strat, move |(words, reps)| {
        let once = words.join(" ");
        let repeated = std::iter::repeat_n(once.as_str(), reps)
            .collect::<Vec<_>>()
            .join(" ");
        let a = binarize(&once, &vocab);
        prop_assert_eq!(a.len(), vocab.len());
        prop_assert_eq!(&a, &binarize(&repeated, &vocab));
        for k in 0..vocab.len() {
            prop_assert_eq!(a.get(k), words.contains(&vocab.term(k).unwrap()));
        }
        Ok(())
    })
}
