//! k-nearest-neighbor classification over sparse feature vectors, plus the
//! cluster-compressed variant.
//!
//! Plain kNN stores the training vectors verbatim and classifies by majority
//! vote among the k most cosine-similar samples. The compressed variant
//! first drops border samples (those whose nearest other sample carries a
//! different label), then clusters each category with k-means and keeps the
//! cluster centers as prototypes weighted by cluster size; its vote sums
//! `weight · similarity` per label.
//!
//! Everything here is deterministic. Ties in similarity go to the earlier
//! sample; ties in the vote go to the label with the higher summed
//! similarity, then to the lexicographically smaller label. An empty query
//! has similarity 0 to everything and falls through the same chain.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::features::FeatureVector;
use crate::kmeans::{self, KMeansConfig, SparsePoint};
use crate::Result;

/// Cosine similarity between two non-negative sparse vectors, in `[0, 1]`.
/// Zero if either vector is empty (or has zero norm).
pub fn cosine(u: &FeatureVector, v: &FeatureVector) -> f64 {
    let norm_u = u.norm();
    let norm_v = v.norm();
    if norm_u == 0.0 || norm_v == 0.0 {
        return 0.0;
    }
    // Merge-join over the sorted index sets keeps summation order fixed.
    let mut dot = 0.0;
    let mut left = u.entries.iter().peekable();
    let mut right = v.entries.iter().peekable();
    while let (Some(&(&i, &a)), Some(&(&j, &b))) = (left.peek(), right.peek()) {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => {
                left.next();
            }
            std::cmp::Ordering::Greater => {
                right.next();
            }
            std::cmp::Ordering::Equal => {
                dot += a * b;
                left.next();
                right.next();
            }
        }
    }
    dot / (norm_u * norm_v)
}

/// How plain kNN turns neighbors into label scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VoteMode {
    /// One vote per neighbor.
    #[default]
    Majority,
    /// Each neighbor votes with its similarity, so nearer neighbors count
    /// for more.
    SimilarityWeighted,
}

/// Stored training set for plain kNN.
#[derive(Debug, Clone, PartialEq)]
pub struct KnnModel {
    pub samples: Vec<(FeatureVector, String)>,
    pub k_default: usize,
    pub vote: VoteMode,
}

/// Store the labeled samples verbatim, in input order.
pub fn train(samples: Vec<(FeatureVector, String)>, k_default: usize) -> Result<KnnModel> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if let Some(index) = samples.iter().position(|(_, label)| label.is_empty()) {
        return Err(Error::EmptyLabel { index });
    }
    if k_default == 0 || k_default > samples.len() {
        return Err(Error::KOutOfRange {
            k: k_default,
            max: samples.len(),
        });
    }
    Ok(KnnModel {
        samples,
        k_default,
        vote: VoteMode::Majority,
    })
}

/// A classification outcome: the winning label, the neighbors that voted
/// (most similar first), and the per-label scores.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: String,
    pub neighbor_ids: Vec<String>,
    pub score_by_label: BTreeMap<String, f64>,
}

/// Indices of the k most similar candidates, most similar first; equal
/// similarities keep input order.
fn top_k_by_similarity(similarities: &[f64], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..similarities.len()).collect();
    order.sort_by(|&a, &b| similarities[b].total_cmp(&similarities[a]));
    order.truncate(k);
    order
}

/// Argmax over labels by (score, summed similarity), ties to the
/// lexicographically smallest label.
fn pick_label(scores: &BTreeMap<String, (f64, f64)>) -> String {
    let mut best: Option<(&str, f64, f64)> = None;
    for (label, &(score, sim_sum)) in scores {
        let better = match best {
            None => true,
            Some((_, s, ss)) => score > s || (score == s && sim_sum > ss),
        };
        if better {
            best = Some((label, score, sim_sum));
        }
    }
    best.expect("non-empty scores").0.to_string()
}

/// Classify with the model's configured vote mode.
pub fn classify(model: &KnnModel, query: &FeatureVector, k: usize) -> Result<Prediction> {
    classify_with(model, query, k, model.vote)
}

/// Classify by vote among the k nearest samples. With `k = 1` this is the
/// nearest-neighbor rule.
pub fn classify_with(model: &KnnModel, query: &FeatureVector, k: usize, vote: VoteMode) -> Result<Prediction> {
    if k == 0 || k > model.samples.len() {
        return Err(Error::KOutOfRange {
            k,
            max: model.samples.len(),
        });
    }
    let similarities: Vec<f64> = model.samples.iter().map(|(v, _)| cosine(query, v)).collect();
    let neighbors = top_k_by_similarity(&similarities, k);

    let mut scores: BTreeMap<String, (f64, f64)> = BTreeMap::new();
    for &i in &neighbors {
        let (_, label) = &model.samples[i];
        let entry = scores.entry(label.clone()).or_insert((0.0, 0.0));
        entry.0 += match vote {
            VoteMode::Majority => 1.0,
            VoteMode::SimilarityWeighted => similarities[i],
        };
        entry.1 += similarities[i];
    }
    Ok(Prediction {
        label: pick_label(&scores),
        neighbor_ids: neighbors
            .iter()
            .map(|&i| model.samples[i].0.source_document_id.clone())
            .collect(),
        score_by_label: scores.into_iter().map(|(l, (s, _))| (l, s)).collect(),
    })
}

/// Edited-nearest-neighbor border deletion: drop every sample whose single
/// nearest other sample carries a different label. A category is never
/// emptied — if every sample of a category is marked, that category is kept
/// unfiltered. Fewer than two samples are returned unchanged.
pub fn delete_border_samples(samples: &[(FeatureVector, String)]) -> Vec<(FeatureVector, String)> {
    if samples.len() < 2 {
        return samples.to_vec();
    }
    let mut marked = vec![false; samples.len()];
    for (i, (vector, label)) in samples.iter().enumerate() {
        let mut nearest: Option<(usize, f64)> = None;
        for (j, (other, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            let sim = cosine(vector, other);
            let closer = match nearest {
                None => true,
                Some((_, best)) => sim > best,
            };
            if closer {
                nearest = Some((j, sim));
            }
        }
        let (j, _) = nearest.expect("at least two samples");
        if samples[j].1 != *label {
            marked[i] = true;
        }
    }
    // Last-of-category guard.
    let mut survivors_per_label: BTreeMap<&str, usize> = BTreeMap::new();
    for ((_, label), &m) in samples.iter().zip(&marked) {
        if !m {
            *survivors_per_label.entry(label.as_str()).or_insert(0) += 1;
        }
    }
    for ((_, label), m) in samples.iter().zip(marked.iter_mut()) {
        if survivors_per_label.get(label.as_str()).copied().unwrap_or(0) == 0 {
            *m = false;
        }
    }
    samples
        .iter()
        .zip(&marked)
        .filter(|(_, &m)| !m)
        .map(|(s, _)| s.clone())
        .collect()
}

/// Settings for [`compress`].
#[derive(Debug, Clone)]
pub struct CompressionConfig {
    pub clusters_per_category: usize,
    /// When false the border-deletion pass is skipped.
    pub border_deletion: bool,
    pub seed: u64,
}

impl CompressionConfig {
    pub fn new(clusters_per_category: usize, seed: u64) -> CompressionConfig {
        CompressionConfig {
            clusters_per_category,
            border_deletion: true,
            seed,
        }
    }
}

/// One cluster-center training prototype.
#[derive(Debug, Clone, PartialEq)]
pub struct Prototype {
    pub vector: FeatureVector,
    pub label: String,
    /// Importance of the prototype: the number of samples in its cluster.
    pub weight: f64,
    pub cluster_size: usize,
}

/// Prototype model produced by [`compress`].
#[derive(Debug, Clone, PartialEq)]
pub struct CompressedKnnModel {
    pub prototypes: Vec<Prototype>,
    pub k_default: usize,
}

fn fnv1a(text: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in text.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn to_sparse_point(vector: &FeatureVector) -> SparsePoint {
    vector.entries.iter().map(|(&i, &v)| (i, v)).collect()
}

/// Compress a training set to per-category k-means cluster centers.
///
/// Border samples are deleted first (unless disabled), then each category is
/// clustered with `k = min(clusters_per_category, category size)` using a
/// generator seeded from `(seed, category)`; every cluster becomes one
/// prototype carrying its size as weight.
pub fn compress(model: &KnnModel, config: &CompressionConfig) -> Result<CompressedKnnModel> {
    if config.clusters_per_category == 0 {
        return Err(Error::InvalidConfig("clusters_per_category must be at least 1".into()));
    }
    let working = if config.border_deletion {
        delete_border_samples(&model.samples)
    } else {
        model.samples.clone()
    };
    let dim = working
        .iter()
        .flat_map(|(v, _)| v.entries.keys().map(|i| i + 1))
        .max()
        .unwrap_or(0);

    let mut by_label: BTreeMap<&str, Vec<&FeatureVector>> = BTreeMap::new();
    for (vector, label) in &working {
        by_label.entry(label.as_str()).or_default().push(vector);
    }

    let mut prototypes = Vec::new();
    for (label, vectors) in by_label {
        let points: Vec<SparsePoint> = vectors.iter().map(|v| to_sparse_point(v)).collect();
        let k = config.clusters_per_category.min(points.len());
        let km_config = KMeansConfig::new(k, config.seed ^ fnv1a(label));
        let clustering = kmeans::cluster(&points, dim, &km_config)?;
        let sizes = clustering.cluster_sizes();
        for (cluster, centroid) in clustering.centroids.iter().enumerate() {
            if sizes[cluster] == 0 {
                continue;
            }
            let mut vector = FeatureVector::new(format!("{label}#{cluster}"));
            for (i, &v) in centroid.iter().enumerate() {
                if v != 0.0 {
                    vector.entries.insert(i, v);
                }
            }
            prototypes.push(Prototype {
                vector,
                label: label.to_string(),
                weight: sizes[cluster] as f64,
                cluster_size: sizes[cluster],
            });
        }
    }
    let k_default = model.k_default.min(prototypes.len()).max(1);
    Ok(CompressedKnnModel { prototypes, k_default })
}

/// Classify against prototypes: the k most similar prototypes vote with
/// `weight · similarity`, then the plain tie-break chain applies.
pub fn classify_compressed(model: &CompressedKnnModel, query: &FeatureVector, k: usize) -> Result<Prediction> {
    if k == 0 || k > model.prototypes.len() {
        return Err(Error::KOutOfRange {
            k,
            max: model.prototypes.len(),
        });
    }
    let similarities: Vec<f64> = model.prototypes.iter().map(|p| cosine(query, &p.vector)).collect();
    let neighbors = top_k_by_similarity(&similarities, k);

    let mut scores: BTreeMap<String, (f64, f64)> = BTreeMap::new();
    for &i in &neighbors {
        let prototype = &model.prototypes[i];
        let entry = scores.entry(prototype.label.clone()).or_insert((0.0, 0.0));
        entry.0 += prototype.weight * similarities[i];
        entry.1 += similarities[i];
    }
    Ok(Prediction {
        label: pick_label(&scores),
        neighbor_ids: neighbors
            .iter()
            .map(|&i| model.prototypes[i].vector.source_document_id.clone())
            .collect(),
        score_by_label: scores.into_iter().map(|(l, (s, _))| (l, s)).collect(),
    })
}

/// Common interface over the plain and compressed models.
pub trait Classifier: Send + Sync {
    fn classify(&self, query: &FeatureVector, k: usize) -> Result<Prediction>;
    /// Number of stored samples or prototypes.
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn kind(&self) -> &'static str;
    fn k_default(&self) -> usize;
}

impl Classifier for KnnModel {
    fn classify(&self, query: &FeatureVector, k: usize) -> Result<Prediction> {
        classify(self, query, k)
    }

    fn len(&self) -> usize {
        self.samples.len()
    }

    fn kind(&self) -> &'static str {
        "plain"
    }

    fn k_default(&self) -> usize {
        self.k_default
    }
}

impl Classifier for CompressedKnnModel {
    fn classify(&self, query: &FeatureVector, k: usize) -> Result<Prediction> {
        classify_compressed(self, query, k)
    }

    fn len(&self) -> usize {
        self.prototypes.len()
    }

    fn kind(&self) -> &'static str {
        "compressed"
    }

    fn k_default(&self) -> usize {
        self.k_default
    }
}
