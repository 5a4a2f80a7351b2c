//! Acceptance gate: one test per criterion, named `criterion_N_*` so
//! the harness output reads as a pass/fail checklist. Tolerances are
//! fixed here and nowhere else.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuzzid3::{
    build_fuzzy_tree, build_id3, certainty, class_prototypes, compare_methods, crispify, distance,
    fit_partitions, fuzzify, information_gain, load_iris, run_experiment, shannon_entropy,
    subset_uncertainty, ClassDistribution, Dataset, DecisionTree, ExperimentConfig, FuzzyPartition,
    FuzzyVector, Instance, PrototypeScope, StrategyOptions, StrategyRegistry, NUM_FEATURES,
};

const IRIS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/iris.csv");

const PAIRS: [(&str, &str); 3] = [
    ("Iris-setosa", "Iris-versicolor"),
    ("Iris-setosa", "Iris-virginica"),
    ("Iris-versicolor", "Iris-virginica"),
];

/// Slack applied to the upper end of the quoted accuracy band.
const BAND_EPSILON: f64 = 0.02;

/// Upper bound on the fuzzy method's mean error rate per pair.
const ERROR_CEILING: f64 = 0.20;

/// Upper bound on the mean-accuracy gap between the methods per pair.
const PARITY_GAP: f64 = 0.15;

fn iris() -> Dataset {
    load_iris(IRIS).expect("bundled Iris file loads")
}

fn config(k: usize, scope: PrototypeScope) -> ExperimentConfig {
    ExperimentConfig {
        terms_per_feature: k,
        options: StrategyOptions {
            prototype_scope: scope,
            ..Default::default()
        },
        ..Default::default()
    }
}

#[test]
fn criterion_1_id3_accuracy_band() {
    let data = iris();
    let registry = StrategyRegistry::with_builtins();
    let cfg = ExperimentConfig::default();
    let means: Vec<f64> = PAIRS
        .iter()
        .map(|&pair| {
            run_experiment(&registry, &data, "id3", pair, &cfg)
                .unwrap()
                .mean_accuracy
        })
        .collect();

    let lo = 0.80;
    let hi = 0.95 + BAND_EPSILON;
    assert!(
        means.iter().any(|&m| (lo..=hi).contains(&m)),
        "no pair mean inside [{lo}, {hi}]: {means:?}"
    );
    let easiest = means.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(easiest >= lo, "easiest pair fell below {lo}: {means:?}");
    println!("criterion 1 PASS: id3 pair means {means:?}");
}

#[test]
fn criterion_2_fuzzy_error_band() {
    let data = iris();
    let registry = StrategyRegistry::with_builtins();
    let cfg = ExperimentConfig::default();
    let mut errors = Vec::new();
    for pair in PAIRS {
        let result = run_experiment(&registry, &data, "fuzzy", pair, &cfg).unwrap();
        let error = 1.0 - result.mean_accuracy;
        assert!(
            (0.0..=ERROR_CEILING).contains(&error),
            "fuzzy error on {pair:?} outside [0, {ERROR_CEILING}]: {error}"
        );
        errors.push(error);
    }
    println!("criterion 2 PASS: fuzzy pair error rates {errors:?}");
}

#[test]
fn criterion_3_parity_and_sign_variation() {
    let data = iris();
    let registry = StrategyRegistry::with_builtins();

    // Parity at the reference configuration.
    let mut gaps = Vec::new();
    for pair in PAIRS {
        let cmp = compare_methods(&registry, &data, pair, &ExperimentConfig::default()).unwrap();
        let gap = (cmp.fuzzy.mean_accuracy - cmp.id3.mean_accuracy).abs();
        assert!(
            gap <= PARITY_GAP,
            "mean gap on {pair:?} exceeds {PARITY_GAP}: {gap}"
        );
        gaps.push(gap);
    }

    // Each method wins somewhere in at least one scanned configuration.
    let mut varied = None;
    'scan: for k in [2, 3, 4] {
        for scope in [PrototypeScope::PerNode, PrototypeScope::Global] {
            let cfg = config(k, scope);
            let (mut fuzzy_wins, mut id3_wins) = (false, false);
            for pair in PAIRS {
                let cmp = compare_methods(&registry, &data, pair, &cfg).unwrap();
                for d in cmp.deltas {
                    fuzzy_wins |= d > 0.0;
                    id3_wins |= d < 0.0;
                }
            }
            if fuzzy_wins && id3_wins {
                varied = Some((k, scope));
                break 'scan;
            }
        }
    }
    let varied = varied.expect("no scanned configuration had per-fold deltas of both signs");
    println!(
        "criterion 3 PASS: gaps {gaps:?}, signs vary at k={}, scope={:?}",
        varied.0, varied.1
    );
}

#[test]
fn criterion_4_fuzzy_vector_dimensionality() {
    let data = iris();
    for (k, dim) in [(3, 12), (2, 8)] {
        let partitions = fit_partitions(&data, k).unwrap();
        for inst in data.instances() {
            assert_eq!(fuzzify(inst, &partitions).dim(), dim, "k={k}");
        }
    }
    println!("criterion 4 PASS: k=3 gives 12 dimensions, k=2 gives 8");
}

#[test]
fn criterion_5_property_suite() {
    let data = iris();
    partition_of_unity(&data);
    entropy_bounds_and_purity();
    gain_is_non_negative();
    certainty_monotone_and_ranged();
    metric_axioms();
    selection_matches_brute_force();
    runs_are_bit_identical(&data);
    println!("criterion 5 PASS: property suite complete");
}

/// 10,000 random points per partition sum to 1 within 1e-9.
fn partition_of_unity(data: &Dataset) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut partitions = fit_partitions(data, 2).unwrap();
    partitions.extend(fit_partitions(data, 3).unwrap());
    for p in &partitions {
        let lo = p.centers()[0] - 3.0;
        let hi = p.centers()[p.terms() - 1] + 3.0;
        for _ in 0..10_000 {
            let x = rng.random_range(lo..hi);
            let m = p.membership(x);
            let total: f64 = m.iter().sum();
            assert!((total - 1.0).abs() <= 1e-9, "sum {total} at x={x}");
            assert!(m.iter().all(|&d| (0.0..=1.0).contains(&d)));
        }
    }
}

/// Entropy stays within [0, log2(classes)]; zero exactly on pure sets.
fn entropy_bounds_and_purity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    while checked < 1_000 {
        let classes = rng.random_range(2..=4);
        let counts: Vec<usize> = (0..classes).map(|_| rng.random_range(0..=20)).collect();
        if counts.iter().sum::<usize>() == 0 {
            continue;
        }
        checked += 1;
        let dist = ClassDistribution::from_counts(counts.clone());
        let h = shannon_entropy(&dist).unwrap();
        assert!(h >= 0.0, "negative entropy for {counts:?}");
        assert!(
            h <= (classes as f64).log2() + 1e-12,
            "entropy too large for {counts:?}"
        );
        let pure = counts.iter().filter(|&&c| c > 0).count() == 1;
        assert_eq!(h == 0.0, pure, "purity mismatch for {counts:?}");
    }
}

/// Information gain of 1,000 random splits is at least -1e-12.
fn gain_is_non_negative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 1_000 {
        let classes = rng.random_range(2..=3);
        let branches = rng.random_range(2..=4);
        let children: Vec<ClassDistribution> = (0..branches)
            .map(|_| {
                ClassDistribution::from_counts(
                    (0..classes).map(|_| rng.random_range(0..=15)).collect(),
                )
            })
            .collect();
        let parent_counts: Vec<usize> = (0..classes)
            .map(|c| children.iter().map(|ch| ch.counts()[c]).sum())
            .collect();
        if parent_counts.iter().sum::<usize>() == 0 {
            continue;
        }
        checked += 1;
        let parent = ClassDistribution::from_counts(parent_counts);
        let gain = information_gain(&parent, &children).unwrap();
        assert!(gain >= -1e-12, "gain {gain} below tolerance");
        assert!(gain <= shannon_entropy(&parent).unwrap() + 1e-12);
    }
}

/// The certainty map is strictly decreasing with range (0, 1].
fn certainty_monotone_and_ranged() {
    assert_eq!(certainty(0.0).unwrap().value(), 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1_000 {
        let mut z1 = rng.random_range(0.0..60.0);
        let mut z2 = rng.random_range(0.0..60.0);
        if z1 > z2 {
            std::mem::swap(&mut z1, &mut z2);
        }
        if z2 - z1 < 1e-9 {
            continue;
        }
        let c1 = certainty(z1).unwrap().value();
        let c2 = certainty(z2).unwrap().value();
        assert!(
            c1 > c2,
            "certainty not decreasing: {z1} -> {c1}, {z2} -> {c2}"
        );
        for c in [c1, c2] {
            assert!(c > 0.0 && c <= 1.0, "certainty {c} out of range");
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng) -> FuzzyVector {
    FuzzyVector::new((0..8).map(|_| rng.random_range(0.0..=1.0)).collect(), 2)
}

/// Distance behaves as a metric on 1,000 random vector triples.
fn metric_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1_000 {
        let a = random_vector(&mut rng);
        let b = random_vector(&mut rng);
        let c = random_vector(&mut rng);
        assert_eq!(distance(&a, &a).unwrap(), 0.0);
        let ab = distance(&a, &b).unwrap();
        let ba = distance(&b, &a).unwrap();
        assert_eq!(ab, ba, "asymmetric distance");
        assert!(ab >= 0.0);
        if a != b {
            assert!(ab > 0.0, "distinct vectors at distance zero");
        }
        let ac = distance(&a, &c).unwrap();
        let bc = distance(&b, &c).unwrap();
        assert!(
            ac <= ab + bc + 1e-9,
            "triangle violated: {ac} > {ab} + {bc}"
        );
    }
}

fn random_dataset(rng: &mut ChaCha8Rng) -> Dataset {
    let n = rng.random_range(2..=8);
    let instances = (0..n)
        .map(|idx| Instance {
            features: std::array::from_fn(|_| rng.random_range(0.0..10.0)),
            // Guarantee both classes so the root always splits.
            class: if idx < 2 { idx } else { rng.random_range(0..2) },
        })
        .collect();
    Dataset::new(instances, vec!["x".into(), "y".into()]).unwrap()
}

fn root_feature(tree: &DecisionTree) -> usize {
    match tree {
        DecisionTree::Node { feature, .. } => *feature,
        DecisionTree::Leaf { .. } => panic!("impure root did not split"),
    }
}

fn brute_force_id3(data: &Dataset, partitions: &[FuzzyPartition]) -> usize {
    let terms: Vec<[usize; NUM_FEATURES]> = data
        .instances()
        .iter()
        .map(|i| crispify(&fuzzify(i, partitions)))
        .collect();
    let mut parent = ClassDistribution::new(2);
    for i in data.instances() {
        parent.record(i.class);
    }
    let mut best = 0;
    let mut best_gain = f64::NEG_INFINITY;
    for a in 0..NUM_FEATURES {
        let mut children = vec![ClassDistribution::new(2); 2];
        for (t, i) in terms.iter().zip(data.instances()) {
            children[t[a]].record(i.class);
        }
        let gain = information_gain(&parent, &children).unwrap();
        if gain > best_gain {
            best = a;
            best_gain = gain;
        }
    }
    best
}

fn brute_force_fuzzy(data: &Dataset, partitions: &[FuzzyPartition]) -> usize {
    let vectors: Vec<FuzzyVector> = data
        .instances()
        .iter()
        .map(|i| fuzzify(i, partitions))
        .collect();
    let terms: Vec<[usize; NUM_FEATURES]> = vectors.iter().map(crispify).collect();
    let n = data.len() as f64;
    let mut best = 0;
    let mut best_score = f64::INFINITY;
    for a in 0..NUM_FEATURES {
        let mut score = 0.0;
        for term in 0..2 {
            let branch: Vec<(usize, &FuzzyVector)> = data
                .instances()
                .iter()
                .zip(&vectors)
                .zip(&terms)
                .filter(|((_, _), t)| t[a] == term)
                .map(|((inst, v), _)| (inst.class, v))
                .collect();
            if branch.is_empty() {
                continue;
            }
            let protos = class_prototypes(&branch).unwrap();
            let u = subset_uncertainty(&branch, &protos).unwrap();
            score += (branch.len() as f64 / n) * u;
        }
        if score < best_score {
            best = a;
            best_score = score;
        }
    }
    best
}

/// Both criteria agree with exhaustive enumeration on 200 random
/// datasets of at most 8 instances.
fn selection_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for round in 0..200 {
        let data = random_dataset(&mut rng);
        let partitions = fit_partitions(&data, 2).unwrap();
        let id3 = build_id3(&data, &partitions).unwrap();
        assert_eq!(
            root_feature(&id3),
            brute_force_id3(&data, &partitions),
            "id3 disagreed with enumeration on round {round}"
        );
        let fuzzy = build_fuzzy_tree(&data, &partitions).unwrap();
        assert_eq!(
            root_feature(&fuzzy),
            brute_force_fuzzy(&data, &partitions),
            "fuzzy disagreed with enumeration on round {round}"
        );
    }
}

/// Two complete comparison runs serialize to identical bytes.
fn runs_are_bit_identical(data: &Dataset) {
    let registry = StrategyRegistry::with_builtins();
    let cfg = ExperimentConfig::default();
    let run = || {
        let results: Vec<_> = PAIRS
            .iter()
            .map(|&pair| compare_methods(&registry, data, pair, &cfg).unwrap())
            .collect();
        serde_json::to_string(&results).unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "repeated runs diverged");
}

#[test]
fn criterion_6_protocol_invariants() {
    let data = iris();
    for pair in PAIRS {
        let sub = data.pairwise_subset(pair.0, pair.1).unwrap();
        assert_eq!(sub.len(), 100);
        let splits = sub.five_fold_splits(10).unwrap();
        let mut covered = 0;
        for (j, split) in splits.iter().enumerate() {
            assert_eq!(split.train.len() + split.test.len(), 100);
            // Fold j holds within-class positions [10j, 10j+10) of each
            // class; fold 0 therefore tests positions 0 through 9.
            let expected: Vec<&Instance> = sub.instances()[10 * j..10 * j + 10]
                .iter()
                .chain(&sub.instances()[50 + 10 * j..60 + 10 * j])
                .collect();
            let got: Vec<&Instance> = split.test.instances().iter().collect();
            assert_eq!(got, expected, "fold {j} of {pair:?}");
            covered += split.test.len();
        }
        assert_eq!(covered, 100, "folds do not partition {pair:?}");
    }

    let registry = StrategyRegistry::with_builtins();
    let cfg = ExperimentConfig::default();
    for pair in PAIRS {
        for method in ["id3", "fuzzy"] {
            let result = run_experiment(&registry, &data, method, pair, &cfg).unwrap();
            for record in &result.records {
                assert_eq!(record.total(), 20, "{method} on {pair:?}");
            }
        }
    }
    println!("criterion 6 PASS: folds partition each pair; records sum to 20");
}
