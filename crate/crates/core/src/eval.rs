//! Train/test splitting, confusion matrices, precision/recall/F1, and
//! side-by-side comparison of weighting schemes.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::Corpus;
use crate::error::Error;
use crate::features::vectorize;
use crate::knn::{self, Classifier, CompressionConfig, VoteMode};
use crate::weighting::WeightingParams;
use crate::Result;

/// A stratified train/test partition of a corpus, by document id.
#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub train_ids: Vec<String>,
    pub test_ids: Vec<String>,
    pub seed: u64,
    pub ratio: f64,
}

/// Split each category independently: shuffle its documents with the seeded
/// generator, send `floor(ratio · size)` to train (at least one per side),
/// and the rest to test. Categories are processed in sorted label order, so
/// the same seed always yields the same split.
pub fn split(corpus: &Corpus, ratio: f64, seed: u64) -> Result<Split> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidRatio(ratio));
    }
    let mut by_label: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for document in &corpus.documents {
        let label = document.label.as_deref().ok_or_else(|| Error::UnlabeledDocument {
            id: document.id.clone(),
        })?;
        by_label.entry(label).or_default().push(&document.id);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_ids = Vec::new();
    let mut test_ids = Vec::new();
    for (label, mut ids) in by_label {
        if ids.len() < 2 {
            return Err(Error::CategoryTooSmall {
                label: label.to_string(),
                size: ids.len(),
            });
        }
        // Fisher-Yates.
        for i in (1..ids.len()).rev() {
            let j = rng.random_range(0..=i);
            ids.swap(i, j);
        }
        let take = ((ratio * ids.len() as f64).floor() as usize).clamp(1, ids.len() - 1);
        train_ids.extend(ids[..take].iter().map(|s| s.to_string()));
        test_ids.extend(ids[take..].iter().map(|s| s.to_string()));
    }
    train_ids.sort();
    test_ids.sort();
    Ok(Split {
        train_ids,
        test_ids,
        seed,
        ratio,
    })
}

/// Precision, recall, and F1 for one class (or a macro average).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Confusion matrix with per-class and macro precision/recall/F1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    /// Sorted union of true and predicted labels; indexes the matrix.
    pub labels: Vec<String>,
    /// `confusion[i][j]` counts documents with true label `labels[i]`
    /// predicted as `labels[j]`.
    pub confusion: Vec<Vec<usize>>,
    pub per_class: BTreeMap<String, ClassMetrics>,
    pub macro_avg: ClassMetrics,
    pub micro_accuracy: f64,
    pub total: usize,
}

fn ratio_or_zero(numerator: f64, denominator: f64) -> f64 {
    if denominator == 0.0 {
        0.0
    } else {
        numerator / denominator
    }
}

/// Build an [`EvalReport`] from `(true label, predicted label)` pairs.
/// Undefined ratios (0/0) are reported as 0.
pub fn evaluate(predictions: &[(String, String)]) -> Result<EvalReport> {
    if predictions.is_empty() {
        return Err(Error::EmptyPredictions);
    }
    let labels: Vec<String> = predictions
        .iter()
        .flat_map(|(t, p)| [t.clone(), p.clone()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();

    let mut confusion = vec![vec![0usize; labels.len()]; labels.len()];
    for (truth, predicted) in predictions {
        confusion[index[truth.as_str()]][index[predicted.as_str()]] += 1;
    }

    let mut per_class = BTreeMap::new();
    for (i, label) in labels.iter().enumerate() {
        let tp = confusion[i][i] as f64;
        let fp = (0..labels.len()).filter(|&r| r != i).map(|r| confusion[r][i]).sum::<usize>() as f64;
        let fn_ = (0..labels.len()).filter(|&c| c != i).map(|c| confusion[i][c]).sum::<usize>() as f64;
        let precision = ratio_or_zero(tp, tp + fp);
        let recall = ratio_or_zero(tp, tp + fn_);
        let f1 = ratio_or_zero(2.0 * precision * recall, precision + recall);
        per_class.insert(label.clone(), ClassMetrics { precision, recall, f1 });
    }

    let count = labels.len() as f64;
    let macro_avg = ClassMetrics {
        precision: per_class.values().map(|m| m.precision).sum::<f64>() / count,
        recall: per_class.values().map(|m| m.recall).sum::<f64>() / count,
        f1: per_class.values().map(|m| m.f1).sum::<f64>() / count,
    };
    let correct: usize = (0..labels.len()).map(|i| confusion[i][i]).sum();
    Ok(EvalReport {
        labels,
        confusion,
        per_class,
        macro_avg,
        micro_accuracy: correct as f64 / predictions.len() as f64,
        total: predictions.len(),
    })
}

/// Classifier settings shared by every scheme under comparison.
#[derive(Debug, Clone)]
pub struct ClassifierConfig {
    pub k: usize,
    pub vote: VoteMode,
    /// When set, models are compressed to cluster-center prototypes.
    pub compression: Option<CompressionConfig>,
}

impl ClassifierConfig {
    pub fn new(k: usize) -> ClassifierConfig {
        ClassifierConfig {
            k,
            vote: VoteMode::Majority,
            compression: None,
        }
    }
}

/// One test-document outcome, for audit logs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionLog {
    pub doc_id: String,
    pub true_label: String,
    pub predicted: String,
    pub neighbor_ids: Vec<String>,
}

/// The evaluation of one weighting scheme on one split.
#[derive(Debug, Clone)]
pub struct SchemeEval {
    pub params: WeightingParams,
    pub report: EvalReport,
    pub predictions: Vec<PredictionLog>,
}

/// Train and evaluate one kNN model per weighting scheme on an identical
/// split and classifier configuration. Reports come back aligned with the
/// scheme list, each with its per-document prediction log.
pub fn compare_schemes(
    corpus: &Corpus,
    split: &Split,
    schemes: &[WeightingParams],
    config: &ClassifierConfig,
) -> Result<Vec<SchemeEval>> {
    if schemes.is_empty() {
        return Err(Error::InvalidConfig("at least one weighting scheme required".into()));
    }
    let train_set: BTreeSet<&str> = split.train_ids.iter().map(String::as_str).collect();
    let test_set: BTreeSet<&str> = split.test_ids.iter().map(String::as_str).collect();

    let mut results = Vec::with_capacity(schemes.len());
    for params in schemes {
        let mut samples = Vec::new();
        for document in &corpus.documents {
            if !train_set.contains(document.id.as_str()) {
                continue;
            }
            let label = document.label.clone().ok_or_else(|| Error::UnlabeledDocument {
                id: document.id.clone(),
            })?;
            samples.push((vectorize(document, &corpus.stats, params)?, label));
        }
        let mut model = knn::train(samples, config.k)?;
        model.vote = config.vote;
        let classifier: Box<dyn Classifier> = match &config.compression {
            Some(compression) => Box::new(knn::compress(&model, compression)?),
            None => Box::new(model),
        };
        let k = config.k.min(classifier.len());

        let mut logs = Vec::new();
        let mut pairs = Vec::new();
        for document in &corpus.documents {
            if !test_set.contains(document.id.as_str()) {
                continue;
            }
            let truth = document.label.clone().ok_or_else(|| Error::UnlabeledDocument {
                id: document.id.clone(),
            })?;
            let query = vectorize(document, &corpus.stats, params)?;
            let prediction = classifier.classify(&query, k)?;
            pairs.push((truth.clone(), prediction.label.clone()));
            logs.push(PredictionLog {
                doc_id: document.id.clone(),
                true_label: truth,
                predicted: prediction.label,
                neighbor_ids: prediction.neighbor_ids,
            });
        }
        results.push(SchemeEval {
            params: params.clone(),
            report: evaluate(&pairs)?,
            predictions: logs,
        });
    }
    Ok(results)
}
