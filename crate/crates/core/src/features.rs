//! Distributional term profiles and sparse feature vectors.
//!
//! A term's positions inside a document are measured at paragraph
//! granularity: an occurrence in paragraph `i` of a `P`-paragraph document
//! sits at normalized position `i / P`, repeated once per occurrence. From
//! those positions come first/last appearance, the positional centroid, and
//! compactness (mean absolute deviation from the centroid, at most 0.5).
//! Weights are `tf · idf · F` with `F` supplied by the configured
//! [`crate::weighting::WeightingScheme`].

use std::collections::BTreeMap;

use crate::corpus::{Corpus, Document, VocabStats};
use crate::error::Error;
use crate::weighting::{default_registry, WeightingParams};
use crate::Result;

/// Positional summary of one term inside one document.
#[derive(Debug, Clone, PartialEq)]
pub struct TermProfile {
    pub term: String,
    /// Normalized occurrence positions in `[0, 1)`, non-decreasing, one per
    /// occurrence.
    pub positions: Vec<f64>,
    pub count: usize,
    pub first: f64,
    pub last: f64,
    pub centroid: f64,
    /// Mean absolute deviation of `positions` from `centroid`; zero iff all
    /// occurrences share a paragraph, at most 0.5.
    pub compactness: f64,
}

impl TermProfile {
    /// Compactness rescaled from `[0, 0.5]` to `[0, 1]`.
    pub fn normalized_compactness(&self) -> f64 {
        (2.0 * self.compactness).min(1.0)
    }

    fn from_positions(term: &str, positions: Vec<f64>) -> TermProfile {
        let count = positions.len();
        let first = positions[0];
        let last = *positions.last().expect("non-empty positions");
        // All-equal positions must give exactly zero spread; summing equal
        // floats and dividing would leave a rounding residue.
        let (centroid, compactness) = if first == last {
            (first, 0.0)
        } else {
            let centroid = positions.iter().sum::<f64>() / count as f64;
            let mad = positions.iter().map(|p| (p - centroid).abs()).sum::<f64>() / count as f64;
            (centroid, mad)
        };
        TermProfile {
            term: term.to_string(),
            positions,
            count,
            first,
            last,
            centroid,
            compactness,
        }
    }
}

/// Profile one term of a document. Errors when the term does not occur.
pub fn term_profile(document: &Document, term: &str) -> Result<TermProfile> {
    let total = document.paragraphs.len() as f64;
    let mut positions = Vec::new();
    for (index, paragraph) in document.paragraphs.iter().enumerate() {
        let position = index as f64 / total;
        for token in paragraph {
            if token == term {
                positions.push(position);
            }
        }
    }
    if positions.is_empty() {
        return Err(Error::TermNotFound {
            term: term.to_string(),
            document: document.id.clone(),
        });
    }
    Ok(TermProfile::from_positions(term, positions))
}

/// Profiles for every distinct term of a document, sorted by term.
pub fn document_profiles(document: &Document) -> Vec<TermProfile> {
    let total = document.paragraphs.len() as f64;
    let mut positions: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for (index, paragraph) in document.paragraphs.iter().enumerate() {
        let position = index as f64 / total;
        for token in paragraph {
            positions.entry(token).or_default().push(position);
        }
    }
    positions
        .into_iter()
        .map(|(term, positions)| TermProfile::from_positions(term, positions))
        .collect()
}

/// Inverse document frequency: `ln(N / df)`. Errors for terms outside the
/// vocabulary; callers filter first.
pub fn idf(term: &str, stats: &VocabStats) -> Result<f64> {
    let df = stats.doc_frequency.get(term).ok_or_else(|| Error::UnknownTerm {
        term: term.to_string(),
    })?;
    Ok((stats.num_documents as f64 / *df as f64).ln())
}

/// Weight of a term in a document under the given scheme.
pub fn weight(term: &str, document: &Document, stats: &VocabStats, params: &WeightingParams) -> Result<f64> {
    let profile = term_profile(document, term)?;
    let idf_value = idf(term, stats)?;
    weight_from_profile(&profile, idf_value, params)
}

/// Combine an already-computed profile and idf into a weight:
/// `count · idf · F(first, c̃)`.
pub fn weight_from_profile(profile: &TermProfile, idf_value: f64, params: &WeightingParams) -> Result<f64> {
    let scheme = default_registry().resolve(&params.scheme)?;
    let factor = scheme.factor(profile.first, profile.normalized_compactness(), params);
    Ok(profile.count as f64 * idf_value * factor)
}

/// Sparse feature vector: vocabulary index -> positive weight.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub entries: BTreeMap<usize, f64>,
    pub source_document_id: String,
}

impl FeatureVector {
    pub fn new(source_document_id: impl Into<String>) -> FeatureVector {
        FeatureVector {
            entries: BTreeMap::new(),
            source_document_id: source_document_id.into(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn norm(&self) -> f64 {
        self.entries.values().map(|w| w * w).sum::<f64>().sqrt()
    }
}

/// Turn a document into a feature vector over the corpus vocabulary.
/// Out-of-vocabulary terms are silently dropped, as are zero weights, so a
/// document made entirely of idf-0 terms yields an empty vector.
pub fn vectorize(document: &Document, stats: &VocabStats, params: &WeightingParams) -> Result<FeatureVector> {
    let mut vector = FeatureVector::new(document.id.clone());
    for profile in document_profiles(document) {
        let Some(&index) = stats.vocabulary.get(&profile.term) else {
            continue;
        };
        let idf_value = idf(&profile.term, stats)?;
        let weight = weight_from_profile(&profile, idf_value, params)?;
        if weight > 0.0 {
            vector.entries.insert(index, weight);
        }
    }
    Ok(vector)
}

/// One histogram bin over normalized compactness.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

/// Bin the normalized compactness of the given profiles into `num_bins`
/// equal-width bins over `[0, 1]`. Every bin is half-open except the last,
/// which is closed, so counts always sum to `profiles.len()`.
pub fn compactness_histogram(profiles: &[TermProfile], num_bins: usize) -> Result<Vec<HistogramBin>> {
    if num_bins == 0 {
        return Err(Error::ZeroBins);
    }
    let mut counts = vec![0usize; num_bins];
    for profile in profiles {
        let value = profile.normalized_compactness();
        let bin = ((value * num_bins as f64) as usize).min(num_bins - 1);
        counts[bin] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(bin, count)| HistogramBin {
            lower: bin as f64 / num_bins as f64,
            upper: (bin + 1) as f64 / num_bins as f64,
            count,
        })
        .collect())
}

/// Rank the corpus documents containing `term` by its weight, descending;
/// ties break toward the lexicographically smaller document id.
pub fn rank_documents(term: &str, corpus: &Corpus, params: &WeightingParams) -> Result<Vec<(String, f64)>> {
    if !corpus.stats.vocabulary.contains_key(term) {
        return Err(Error::UnknownTerm {
            term: term.to_string(),
        });
    }
    let mut ranked = Vec::new();
    for document in &corpus.documents {
        match weight(term, document, &corpus.stats, params) {
            Ok(w) => ranked.push((document.id.clone(), w)),
            Err(Error::TermNotFound { .. }) => continue,
            Err(other) => return Err(other),
        }
    }
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(ranked)
}
