//! Text categorization built on distributional term features.
//!
//! Instead of weighting a term by raw frequency alone, this crate profiles
//! *where* each term occurs inside a document (first and last appearance,
//! positional centroid, compactness of the occurrences) and folds those
//! signals into tf·idf. The weighted vectors feed a k-nearest-neighbor
//! classifier, an optional cluster-compressed variant of it, and a k-means
//! clusterer, with precision/recall evaluation on top.
//!
//! Module map:
//!
//! - [`corpus`] — paragraph segmentation, tokenization, corpus ingestion.
//! - [`features`] — term profiles, feature vectors, histograms, ranking.
//! - [`weighting`] — the pluggable weighting-scheme registry (`tfidf`,
//!   `distributional`, plus anything callers register).
//! - [`knn`] — plain and cluster-compressed kNN classification.
//! - [`kmeans`] — Lloyd-style k-means over sparse vectors.
//! - [`eval`] — stratified splits, confusion matrices, scheme comparison.
//! - [`model_io`] — the versioned line-oriented model file format.
//! - [`synth`] — the seeded synthetic benchmark corpus generator.

pub mod corpus;
pub mod error;
pub mod eval;
pub mod features;
pub mod kmeans;
pub mod knn;
pub mod model_io;
pub mod synth;
pub mod weighting;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
