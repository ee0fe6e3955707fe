//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line and enforcing its runtime budget.
//!
//! Run with `cargo test -p textcat-cli --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, UnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use common::{fixtures_dir, textcat};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

use textcat_core::corpus::{load_corpus, Corpus, TokenizerConfig};
use textcat_core::eval::{compare_schemes, evaluate, split, ClassifierConfig};
use textcat_core::features::{vectorize, weight, FeatureVector};
use textcat_core::kmeans::{cluster, dense_point, KMeansConfig, SparsePoint};
use textcat_core::knn::{classify, classify_compressed, compress, train, CompressionConfig};
use textcat_core::synth;
use textcat_core::weighting::WeightingParams;

fn criterion(name: &str, budget: Option<Duration>, body: impl FnOnce() + UnwindSafe) {
    let start = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = start.elapsed();
    match &outcome {
        Ok(()) => println!("PASS: {name} ({elapsed:.2?})"),
        Err(_) => println!("FAIL: {name} ({elapsed:.2?})"),
    }
    if let Err(panic) = outcome {
        std::panic::resume_unwind(panic);
    }
    if let Some(budget) = budget {
        assert!(elapsed < budget, "{name} took {elapsed:?}, budget {budget:?}");
    }
}

fn synth_corpus() -> (TempDir, Corpus) {
    let dir = TempDir::new().unwrap();
    synth::write_corpus(dir.path(), synth::DEFAULT_SEED).unwrap();
    let corpus = load_corpus(dir.path(), &TokenizerConfig::default()).unwrap().corpus;
    (dir, corpus)
}

#[test]
fn criterion_1_tfidf_reduction_is_exact() {
    criterion("1 tf·idf reduction (alpha=beta=0)", Some(Duration::from_secs(1)), || {
        let fixture = load_corpus(&fixtures_dir().join("corpus"), &TokenizerConfig::default())
            .unwrap()
            .corpus;
        let (_dir, generated) = synth_corpus();
        let zeroed = WeightingParams::distributional(0.0, 0.0);
        let plain = WeightingParams::tfidf();
        let mut pairs = 0usize;
        for corpus in [&fixture, &generated] {
            for document in &corpus.documents {
                for term in document.distinct_terms() {
                    let a = weight(term, document, &corpus.stats, &zeroed).unwrap();
                    let b = weight(term, document, &corpus.stats, &plain).unwrap();
                    assert_eq!(a - b, 0.0, "term {term} in {}", document.id);
                    pairs += 1;
                }
            }
        }
        assert!(pairs > 1000, "expected a real corpus, saw {pairs} pairs");
    });
}

#[test]
fn criterion_2_kmeans_descent_and_centroid_means() {
    criterion("2 k-means monotone descent, centroids are means", Some(Duration::from_secs(10)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(20_260_810);
        for instance in 0..100u64 {
            let n = rng.random_range(5..=200);
            let dim = rng.random_range(1..=50);
            let k = rng.random_range(1..=8usize.min(n));
            let dense: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..dim).map(|_| rng.random_range(0.0..10.0)).collect())
                .collect();
            let points: Vec<SparsePoint> = dense.iter().map(|v| dense_point(v)).collect();
            let model = cluster(&points, dim, &KMeansConfig::new(k, instance)).unwrap();

            for window in model.objective_trace.windows(2) {
                assert!(
                    window[1] <= window[0],
                    "instance {instance}: objective rose {} -> {}",
                    window[0],
                    window[1]
                );
            }

            // Final centroids equal the member means to 1e-12.
            let mut sums = vec![vec![0.0; dim]; k];
            let mut counts = vec![0usize; k];
            for (point, &a) in dense.iter().zip(&model.assignments) {
                counts[a] += 1;
                for (s, v) in sums[a].iter_mut().zip(point) {
                    *s += v;
                }
            }
            for c in 0..k {
                assert!(counts[c] > 0, "instance {instance}: empty cluster {c}");
                for (d, (&centroid, &sum)) in model.centroids[c].iter().zip(&sums[c]).enumerate() {
                    let mean = sum / counts[c] as f64;
                    assert!(
                        (centroid - mean).abs() <= 1e-12,
                        "instance {instance}: centroid {c}[{d}] = {centroid} vs mean {mean}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_3_kmeans_small_instance_optimality() {
    criterion("3 k-means best-of-20 equals brute-force optimum", Some(Duration::from_secs(5)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(3_141_592);
        for instance in 0..20u64 {
            let n = rng.random_range(4..=10);
            let dense: Vec<Vec<f64>> = (0..n)
                .map(|_| vec![rng.random_range(0.0..10.0), rng.random_range(0.0..10.0)])
                .collect();
            let points: Vec<SparsePoint> = dense.iter().map(|v| dense_point(v)).collect();

            let optimum = brute_force_two_partition(&dense);
            let best = (0..20)
                .map(|restart| {
                    cluster(&points, 2, &KMeansConfig::new(2, instance * 1000 + restart))
                        .unwrap()
                        .objective
                })
                .fold(f64::INFINITY, f64::min);
            assert!(
                (best - optimum).abs() <= 1e-9 * optimum + 1e-12,
                "instance {instance}: best {best} vs optimum {optimum}"
            );
        }
    });
}

/// Optimal 2-partition objective by exhaustive enumeration.
fn brute_force_two_partition(points: &[Vec<f64>]) -> f64 {
    let n = points.len();
    let dim = points[0].len();
    let sum_of_squares = |group: &[&Vec<f64>]| -> f64 {
        let mut mean = vec![0.0; dim];
        for p in group {
            for (m, v) in mean.iter_mut().zip(p.iter()) {
                *m += v;
            }
        }
        for m in mean.iter_mut() {
            *m /= group.len() as f64;
        }
        group
            .iter()
            .map(|p| p.iter().zip(&mean).map(|(x, m)| (x - m) * (x - m)).sum::<f64>())
            .sum()
    };
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << n) - 1 {
        if mask & 1 == 0 {
            continue; // fix point 0 on one side
        }
        let (mut a, mut b): (Vec<&Vec<f64>>, Vec<&Vec<f64>>) = (Vec::new(), Vec::new());
        for (i, p) in points.iter().enumerate() {
            if mask & (1 << i) != 0 {
                a.push(p);
            } else {
                b.push(p);
            }
        }
        if b.is_empty() {
            continue;
        }
        best = best.min(sum_of_squares(&a) + sum_of_squares(&b));
    }
    best
}

#[test]
fn criterion_4_knn_matches_exhaustive_reference() {
    criterion("4 kNN equals exhaustive-scan reference", Some(Duration::from_secs(5)), || {
        let labels = ["a", "b", "c"];
        let mut rng = ChaCha8Rng::seed_from_u64(271_828);
        for instance in 0..50 {
            let n = rng.random_range(6..=50);
            let dim = rng.random_range(2..=30);
            let dense: Vec<(Vec<f64>, String)> = (0..n)
                .map(|_| {
                    let v: Vec<f64> = (0..dim)
                        .map(|_| {
                            if rng.random_range(0..3) == 0 {
                                0.0
                            } else {
                                rng.random_range(0.1..3.0)
                            }
                        })
                        .collect();
                    (v, labels[rng.random_range(0..labels.len())].to_string())
                })
                .collect();
            let samples: Vec<(FeatureVector, String)> = dense
                .iter()
                .enumerate()
                .map(|(i, (v, l))| (to_sparse(&format!("s{i}"), v), l.clone()))
                .collect();
            let model = train(samples, 1).unwrap();

            for k in [1usize, 3, 5] {
                if k > n {
                    continue;
                }
                for _ in 0..8 {
                    let q: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..3.0)).collect();
                    let got = classify(&model, &to_sparse("q", &q), k).unwrap();
                    let expected = reference_classify(&dense, &q, k);
                    assert_eq!(got.label, expected, "instance {instance}, k={k}");
                }
            }
        }
    });
}

fn to_sparse(id: &str, values: &[f64]) -> FeatureVector {
    let mut v = FeatureVector::new(id);
    for (i, &x) in values.iter().enumerate() {
        if x != 0.0 {
            v.entries.insert(i, x);
        }
    }
    v
}

/// Independent exhaustive-scan kNN: dense cosine, stable neighbor order,
/// majority vote with the documented tie-break chain.
fn reference_classify(samples: &[(Vec<f64>, String)], query: &[f64], k: usize) -> String {
    fn cos(a: &[f64], b: &[f64]) -> f64 {
        let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        if na == 0.0 || nb == 0.0 {
            return 0.0;
        }
        a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / (na * nb)
    }
    let sims: Vec<f64> = samples.iter().map(|(v, _)| cos(v, query)).collect();
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| sims[b].total_cmp(&sims[a]));
    order.truncate(k);
    let mut scores: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
    for &i in &order {
        let entry = scores.entry(samples[i].1.as_str()).or_insert((0, 0.0));
        entry.0 += 1;
        entry.1 += sims[i];
    }
    let mut best: Option<(&str, usize, f64)> = None;
    for (label, &(count, sim)) in &scores {
        let better = match best {
            None => true,
            Some((_, c, s)) => count > c || (count == c && sim > s),
        };
        if better {
            best = Some((label, count, sim));
        }
    }
    best.unwrap().0.to_string()
}

#[test]
fn criterion_5_compression_consistency() {
    criterion("5 compressed kNN agrees with plain kNN", Some(Duration::from_secs(5)), || {
        let (_dir, corpus) = synth_corpus();
        let partition = split(&corpus, 0.5, 42).unwrap();

        for params in [WeightingParams::distributional(1.0, 1.0), WeightingParams::tfidf()] {
            let mut samples = Vec::new();
            let mut per_category: BTreeMap<&str, usize> = BTreeMap::new();
            for document in &corpus.documents {
                if !partition.train_ids.contains(&document.id) {
                    continue;
                }
                let label = document.label.as_deref().unwrap();
                *per_category.entry(label).or_insert(0) += 1;
                samples.push((
                    vectorize(document, &corpus.stats, &params).unwrap(),
                    label.to_string(),
                ));
            }
            let max_category = per_category.values().copied().max().unwrap();
            let model = train(samples, 3).unwrap();
            let mut config = CompressionConfig::new(max_category, 42);
            config.border_deletion = false;
            let compressed = compress(&model, &config).unwrap();

            for document in &corpus.documents {
                if !partition.test_ids.contains(&document.id) {
                    continue;
                }
                let query = vectorize(document, &corpus.stats, &params).unwrap();
                let plain = classify(&model, &query, 3).unwrap();
                let proto = classify_compressed(&compressed, &query, 3).unwrap();
                assert_eq!(
                    plain.label, proto.label,
                    "{} under {}",
                    document.id,
                    params.describe()
                );
            }
        }
    });
}

#[test]
fn criterion_6_distributional_recall_beats_tfidf_on_planted_corpus() {
    criterion("6 planted failure mode: recall ordering and flips", Some(Duration::from_secs(10)), || {
        let (_dir, corpus) = synth_corpus();
        let partition = split(&corpus, 0.5, 42).unwrap();
        let schemes = vec![WeightingParams::tfidf(), WeightingParams::distributional(1.0, 1.0)];
        let results = compare_schemes(&corpus, &partition, &schemes, &ClassifierConfig::new(3)).unwrap();
        let (tfidf, dist) = (&results[0], &results[1]);

        assert!(
            dist.report.macro_avg.recall >= tfidf.report.macro_avg.recall,
            "distributional recall {} < tfidf recall {}",
            dist.report.macro_avg.recall,
            tfidf.report.macro_avg.recall
        );

        // At least one document misclassified under tfidf is corrected.
        let flips = tfidf
            .predictions
            .iter()
            .zip(&dist.predictions)
            .filter(|(t, d)| t.true_label != t.predicted && d.true_label == d.predicted)
            .count();
        assert!(flips >= 1, "no tfidf miss was corrected");

        // Exhaustive audit of every test prediction: the distributional
        // scheme classifies everything correctly, and tfidf errs exactly on
        // the decoy documents present in the test split.
        let decoys = synth::decoy_ids();
        let mut decoys_in_test = 0;
        for (t, d) in tfidf.predictions.iter().zip(&dist.predictions) {
            assert_eq!(t.doc_id, d.doc_id);
            assert_eq!(d.predicted, d.true_label, "distributional missed {}", d.doc_id);
            let is_decoy = decoys.contains(&t.doc_id);
            if is_decoy {
                decoys_in_test += 1;
            }
            assert_eq!(
                t.predicted != t.true_label,
                is_decoy,
                "tfidf outcome for {} does not match construction",
                t.doc_id
            );
        }
        assert!(decoys_in_test >= 1, "split left no decoys in the test set");
    });
}

#[test]
fn criterion_7_precision_recall_golden_table() {
    criterion("7 hand-computed confusion fixture reproduced exactly", None, || {
        // 3-class fixture: true x -> {x:5, y:2, z:1}, true y -> {x:1, y:6},
        // true z -> {y:2, z:4}.
        let mut predictions = Vec::new();
        let spec: [(&str, &str, usize); 7] = [
            ("x", "x", 5),
            ("x", "y", 2),
            ("x", "z", 1),
            ("y", "x", 1),
            ("y", "y", 6),
            ("z", "y", 2),
            ("z", "z", 4),
        ];
        for (truth, predicted, count) in spec {
            for _ in 0..count {
                predictions.push((truth.to_string(), predicted.to_string()));
            }
        }
        let report = evaluate(&predictions).unwrap();
        assert_eq!(report.confusion, vec![vec![5, 2, 1], vec![1, 6, 0], vec![0, 2, 4]]);

        let expect = |label: &str, p: f64, r: f64, f1: f64| {
            let m = &report.per_class[label];
            assert_eq!(m.precision, p, "{label} precision");
            assert_eq!(m.recall, r, "{label} recall");
            assert!((m.f1 - f1).abs() < 1e-15, "{label} f1: {} vs {f1}", m.f1);
        };
        expect("x", 5.0 / 6.0, 5.0 / 8.0, 5.0 / 7.0);
        expect("y", 6.0 / 10.0, 6.0 / 7.0, 12.0 / 17.0);
        expect("z", 4.0 / 5.0, 4.0 / 6.0, 8.0 / 11.0);
        assert_eq!(report.macro_avg.precision, (5.0 / 6.0 + 0.6 + 0.8) / 3.0);
        assert_eq!(report.macro_avg.recall, (5.0 / 8.0 + 6.0 / 7.0 + 4.0 / 6.0) / 3.0);
        assert!((report.macro_avg.f1 - (5.0 / 7.0 + 12.0 / 17.0 + 8.0 / 11.0) / 3.0).abs() < 1e-15);
        assert_eq!(report.micro_accuracy, 15.0 / 21.0);
        assert_eq!(report.total, 21);
    });
}

#[test]
fn criterion_8_cli_byte_determinism() {
    criterion("8 every CLI command is byte-deterministic", None, || {
        let dir = TempDir::new().unwrap();
        let root = dir.path();
        run_once(root, &["gen-fixture", "corpus", "--seed", "42"], &["corpus/sport/doc04.txt"]);

        let mut invocations: Vec<(Vec<&str>, Vec<&str>)> = Vec::new();
        for format in ["table", "csv", "json"] {
            invocations.push((
                vec!["stats", "corpus/sport/doc04.txt", "--corpus", "corpus", "--format", format],
                vec![],
            ));
            invocations.push((
                vec!["histogram", "corpus/finance/doc00.txt", "--bins", "10", "--format", format],
                vec![],
            ));
            invocations.push((
                vec!["classify", "m.model", "corpus/sport/doc04.txt", "--format", format],
                vec![],
            ));
            invocations.push((
                vec!["evaluate", "corpus", "--seed", "42", "--format", format],
                vec![],
            ));
            invocations.push((
                vec!["cluster", "corpus", "--k", "2", "--seed", "42", "--format", format],
                vec![],
            ));
        }
        invocations.push((
            vec!["histogram", "corpus/finance/doc00.txt", "--bins", "10", "--svg", "chart.svg"],
            vec!["chart.svg"],
        ));
        invocations.push((vec!["histogram", "corpus", "--term", "dividend"], vec![]));
        invocations.push((
            vec!["train", "corpus", "--model", "m.model", "--k", "3", "--seed", "42"],
            vec!["m.model"],
        ));
        invocations.push((
            vec!["train", "corpus", "--model", "c.model", "--k", "3", "--seed", "42", "--compress"],
            vec!["c.model"],
        ));
        invocations.push((
            vec![
                "cluster", "corpus", "--k", "2", "--seed", "42", "--assignments", "a.csv", "--summary", "s.json",
            ],
            vec!["a.csv", "s.json"],
        ));
        invocations.push((
            vec!["evaluate", "corpus", "--seed", "42", "--predictions", "p.csv"],
            vec!["p.csv"],
        ));
        invocations.push((vec!["gen-fixture", "again", "--seed", "7"], vec!["again/finance/doc00.txt"]));

        // The model must exist before the classify invocations run.
        run_once(root, &["train", "corpus", "--model", "m.model", "--k", "3", "--seed", "42"], &[]);

        for (args, artifacts) in &invocations {
            let first = run_once(root, args, artifacts);
            let second = run_once(root, args, artifacts);
            assert_eq!(first.0, second.0, "stdout of {args:?} differs between runs");
            assert_eq!(first.1, second.1, "stderr of {args:?} differs between runs");
            assert_eq!(first.2, second.2, "artifacts of {args:?} differ between runs");
        }
    });
}

fn run_once(root: &Path, args: &[&str], artifacts: &[&str]) -> (Vec<u8>, Vec<u8>, Vec<Vec<u8>>) {
    let result = textcat(root, args);
    assert!(result.success, "textcat {args:?} failed: {}", result.stderr_str());
    let files = artifacts
        .iter()
        .map(|rel| std::fs::read(root.join(rel)).unwrap_or_else(|_| panic!("missing artifact {rel}")))
        .collect();
    (result.stdout, result.stderr, files)
}
